"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they print. Every tolerance and runtime bound is pinned here.
"""

import random
import time

import pytest

from hearinglens import affiliation, matching
from hearinglens.absentee import (
    STATUS_ABSENT,
    STATUS_NOT_ASSESSED,
    apply_special_meeting_rule,
    detect_absences,
    hearing_attendance,
)
from hearinglens.analytics import rank_legislators
from hearinglens.augment import emit_sequence_labels, generate_precision_corpus, generate_recall_corpus
from hearinglens.cli import main
from hearinglens.engagement import (
    EngagementBreakdown,
    EngagementCounters,
    RollCall,
    compute_scores,
    detect_back_and_forths,
)
from hearinglens.evaluation import evaluate_extractor, f1, reconcile
from hearinglens.gazetteer import OrgRegistry
from hearinglens.model import write_hearing_file
from hearinglens.stance import count_phrases, macro_f1, rule_fallback, train_tree
from hearinglens.synthetic import (
    synth_affiliation_corpus,
    synth_city_names,
    synth_hearing_corpus,
    synth_registry_names,
    synth_stance_samples,
    synth_tagged_comments,
)

from helpers import mk_hearing, mk_speaker, mk_utt, oracle_chains, words


def report(number, elapsed, limit, detail):
    assert elapsed < limit, f"criterion {number} exceeded its runtime bound ({elapsed:.2f}s >= {limit}s)"
    print(f"[ACCEPTANCE {number}] PASS ({elapsed:.2f}s < {limit:g}s) {detail}")


# Published per-variant extractor scores: (tp, fn, fp) -> F1, both tables.
F1_TABLE_ROWS = [
    (130, 64, 38, 0.718),
    (135, 60, 26, 0.758),
    (169, 42, 61, 0.766),
    (136, 65, 20, 0.762),
    (146, 51, 22, 0.800),
    (149, 45, 47, 0.764),
    (146, 51, 22, 0.800),
    (171, 31, 19, 0.872),
]

# Published session engagement rankings: most and least engaged rows as
# (name, total, vote, speaking, back-and-forth, question).
ENGAGEMENT_TOP = [
    ("Hannah-Beth Jackson", 23.621, 0.319, 3.139, 10.293, 9.87),
    ("Mike McGuire", 16.448, 0.196, 2.086, 9.036, 5.13),
    ("Benjamin Allen", 13.44, 0.235, 1.79, 4.875, 6.54),
    ("Ricardo Lara", 12.028, 0.138, 1.655, 5.014, 5.22),
    ("Jim Frazier", 11.512, 0.37, 0.841, 3.211, 7.09),
    ("John Moorlach", 11.34, 0.331, 1.082, 2.906, 7.02),
    ("Richard Pan", 11.115, 0.298, 1.321, 4.086, 5.41),
    ("Nancy Skinner", 10.604, 0.261, 1.758, 4.144, 4.44),
    ("Bob Wieckowski", 10.553, 0.29, 1.296, 3.887, 5.08),
    ("Jim Beall", 10.392, 0.201, 1.631, 3.33, 5.23),
]
ENGAGEMENT_BOTTOM = [
    ("Rob Bonta", 0.507, 0.081, 0.071, 0.114, 0.24),
    ("Raul Bocanegra", 0.486, 0.086, 0.083, 0.077, 0.24),
    ("Kevin Mullin", 0.446, 0.136, 0.075, 0.045, 0.19),
    ("Ken Cooley", 0.428, 0.19, 0.088, 0.01, 0.14),
    ("Sabrina Cervantes", 0.422, 0.304, 0.023, 0.015, 0.08),
    ("Sydney Kamlager-Dove", 0.289, 0.069, 0.02, 0.04, 0.16),
    ("Jimmy Gomez", 0.276, 0.036, 0.026, 0.054, 0.16),
    ("Wendy Carrillo", 0.219, 0.086, 0.067, 0.016, 0.05),
    ("Jesse Gabriel", 0.092, 0.076, 0.005, 0.011, 0.0),
    ("Luz Rivas", 0.068, 0.047, 0.004, 0.008, 0.01),
]


def test_criterion_1_f1_arithmetic_reproduction():
    start = time.perf_counter()
    for tp, fn, fp, expected in F1_TABLE_ROWS:
        got = f1(tp, fn, fp)
        assert abs(got - expected) < 5e-4, f"f1({tp},{fn},{fp}) = {got} != {expected}"
    report(1, time.perf_counter() - start, 1.0,
           f"- all {len(F1_TABLE_ROWS)} published (TP, FN, FP) rows reproduce their F1 within 5e-4")


def test_criterion_2_engagement_arithmetic_reproduction():
    start = time.perf_counter()
    hearings_base = 1000
    derived = []
    for name, total, vote, speaking, exchange, question in ENGAGEMENT_TOP + ENGAGEMENT_BOTTOM:
        counters = EngagementCounters(
            number_votes=round(vote * 2 * hearings_base),
            num_hearings_on_committee=hearings_base,
            num_times_speaking=round(speaking / 0.0005),
            num_words_in_back_and_forth=round(exchange / 0.00005),
            num_questions=round(question / 0.01),
        )
        scores = compute_scores(counters)
        assert abs(scores.vote_score - vote) < 1e-9
        assert abs(scores.speaking_score - speaking) < 1e-9
        assert abs(scores.back_and_forth_score - exchange) < 1e-9
        assert abs(scores.question_score - question) < 1e-9
        # tables round to 3 decimals; the identity must hold within 1e-3
        assert abs(scores.total - total) <= 1e-3 + 1e-9, f"{name}: {scores.total} vs {total}"
        derived.append((name, scores))
    for published in (ENGAGEMENT_TOP, ENGAGEMENT_BOTTOM):
        names = [row[0] for row in published]
        subset = [(name, scores) for name, scores in derived if name in set(names)]
        ranked = rank_legislators(subset)
        assert [name for name, _s in ranked] == names
        by_published_total = sorted(published, key=lambda row: (-row[1], row[0]))
        assert [row[0] for row in by_published_total] == names
    report(2, time.perf_counter() - start, 1.0,
           "- all 20 published rows satisfy total = sum of components within 1e-3 and rank in published order")


def test_criterion_3_synthetic_affiliation_suite():
    start = time.perf_counter()
    names = synth_registry_names(400, seed=3)
    registry = OrgRegistry(names, city_county_blocklist=synth_city_names())
    corpus = synth_affiliation_corpus(names, 600, seed=4)
    assert len(corpus) >= 500

    def combined(rec):
        return affiliation.extract_affiliations(rec.text, rec.speaker, registry).accepted

    def recall_only(rec):
        return [c.display_name for c in affiliation.extract_recall(rec.text, rec.speaker, registry)]

    def precision_only(rec):
        return [c.display_name for c in affiliation.extract_precision(rec.text, rec.speaker, registry)]

    _oc, f_combined = evaluate_extractor(corpus, combined)
    _or, f_recall = evaluate_extractor(corpus, recall_only)
    _op, f_precision = evaluate_extractor(corpus, precision_only)
    assert f_combined >= 0.9, f"combined F1 {f_combined:.4f} < 0.9"
    assert f_combined >= max(f_recall, f_precision), (
        f"combined {f_combined:.4f} not >= recall {f_recall:.4f} / precision {f_precision:.4f}"
    )
    report(3, time.perf_counter() - start, 30.0,
           f"- combined F1 {f_combined:.3f} >= 0.9 and >= recall {f_recall:.3f}, precision {f_precision:.3f}")


def test_criterion_4_stance_suite():
    start = time.perf_counter()
    # no-double-count over 10,000 random concatenations of table phrases
    rng = random.Random(40)
    table = [p for cat in ("oppose opposition opposing opposed".split(),
                           "support supporting".split(),
                           ["no vote", "nay vote"], ["aye vote", "yes vote"], ["cosponsor"])
             for p in cat]
    filler = ["committee", "members", "letter", "today", "amended", "measure", "bill", "chair"]
    for _ in range(10_000):
        planted = 0
        parts = []
        for _ in range(rng.randint(0, 6)):
            if rng.random() < 0.5:
                parts.append(rng.choice(table))
                planted += 1
            else:
                parts.append(rng.choice(filler))
        assert sum(count_phrases(" ".join(parts)).as_tuple()) == planted

    # train on 474 synthetic samples, test on a held-out 167
    samples = synth_stance_samples(641, seed=41)
    pairs = [(count_phrases(text), label) for text, label in samples]
    order = list(range(len(pairs)))
    random.Random(42).shuffle(order)
    train_set = [pairs[i] for i in order[:474]]
    test_set = [pairs[i] for i in order[474:]]
    assert len(train_set) >= 400 and len(test_set) == 167
    tree = train_tree(train_set)
    actual = [label for _v, label in test_set]
    predicted = [tree.classify(v) for v, _label in test_set]
    score = macro_f1(actual, predicted)
    assert score >= 0.95, f"held-out macro F1 {score:.4f} < 0.95"

    # zero-phrase comments always classify Neutral under the fallback
    for _ in range(2_000):
        text = " ".join(rng.choices(filler, k=rng.randint(0, 12)))
        assert rule_fallback(count_phrases(text)) == "Neutral"
    report(4, time.perf_counter() - start, 30.0,
           f"- no double counting in 10,000 cases; held-out F1 {score:.4f} >= 0.95; zero-phrase comments stay Neutral")


def test_criterion_5_back_and_forth_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(50)
    legs = [mk_speaker(f"leg{i}", f"Kim Member{i}") for i in range(3)]
    others = [
        mk_speaker("w1", "Gene Quill", role="witness"),
        mk_speaker("sec1", "Robin Reyes", role="committee-secretary"),
        mk_speaker("pc1", "Ann Moss", role="public-commenter"),
        mk_speaker("b1", "Lee Docket", role="bill-presenter"),
    ]
    cases = 0
    chains_seen = 0
    boundary_hits = 0
    for case in range(1_200):
        n = rng.randint(0, 12)
        alternating_bias = case % 2 == 0  # half the cases lean on L/N/L shapes
        utts = []
        for i in range(n):
            if alternating_bias and rng.random() < 0.7:
                speaker = rng.choice(legs[:2]) if i % 2 == 0 else rng.choice(others[:2])
            else:
                speaker = rng.choice(legs + others)
            # small word counts make 12-word boundary totals common
            utts.append(mk_utt(i, speaker, words(rng.randint(0, 7))))
        hearing = mk_hearing(utts, roster={s.id for s in legs})
        got = [(c.legislator_id, c.utterance_indices, c.total_words)
               for c in detect_back_and_forths(hearing)]
        expected = oracle_chains(hearing)
        assert got == expected
        cases += 1
        chains_seen += len(expected)
        boundary_hits += sum(1 for c in oracle_chains(hearing, min_words=0) if c[2] in (12, 13))
    assert cases >= 1_000 and chains_seen > 100 and boundary_hits > 50
    report(5, time.perf_counter() - start, 30.0,
           f"- detector equals exhaustive enumeration on {cases} random hearings "
           f"({chains_seen} chains, {boundary_hits} near-boundary totals)")


def test_criterion_6_absentee_boundary_suite():
    start = time.perf_counter()
    seven = [mk_speaker(f"leg{k}", f"Kim Roster{k}") for k in range(10)]
    roster = {s.id for s in seven}

    def attendance(n_present):
        utts = [mk_utt(i, seven[i], words(5)) for i in range(n_present)]
        hearing = mk_hearing(utts, roster=roster)
        return detect_absences(hearing, None)

    fired = apply_special_meeting_rule(attendance(3))  # 7 of 10 absent
    assert sum(1 for r in fired if r.status == STATUS_NOT_ASSESSED) == 7
    assert not any(r.status == STATUS_ABSENT for r in fired)
    unchanged = apply_special_meeting_rule(attendance(4))  # 6 of 10 absent
    assert sum(1 for r in unchanged if r.status == STATUS_ABSENT) == 6

    rng = random.Random(60)
    for _ in range(1_200):
        n = rng.randint(1, 15)
        members = [mk_speaker(f"m{k}", f"Pat Random{k}") for k in range(n)]
        speaking = [m for m in members if rng.random() < rng.random()]
        voters = frozenset(m.id for m in members if rng.random() < 0.4)
        utts = [mk_utt(i, s, words(rng.randint(1, 6))) for i, s in enumerate(speaking)]
        hearing = mk_hearing(utts, roster={m.id for m in members})
        roll = RollCall(hearing.id, (0, len(utts)), voters)
        records = hearing_attendance(hearing, roll)
        once_more = apply_special_meeting_rule(records)
        assert once_more == records  # idempotent
        spoke = {u.speaker.id for u in utts}
        for record in records:
            if record.legislator_id in spoke or record.legislator_id in voters:
                assert record.status == "present"
        absent = sum(1 for r in records if r.status == STATUS_ABSENT)
        assert absent <= 0.6 * n
    report(6, time.perf_counter() - start, 10.0,
           "- override fires at 7/10 and not 6/10; speakers never absent; idempotent over 1,200 random rosters")


def test_criterion_7_augmentation_count_identities():
    start = time.perf_counter()
    names = synth_registry_names(60, seed=70)
    registry = OrgRegistry(names)

    desk = synth_tagged_comments(7, names, seed=71)
    assert len(generate_recall_corpus(desk, registry, per_comment=100, seed=72)) == 700

    paper_scale = synth_tagged_comments(693, names, seed=73)
    corpus = generate_recall_corpus(paper_scale, registry, per_comment=100, seed=74)
    assert len(corpus) == 69_300

    zero_slot = sum(1 for c in desk if not c.org_slots)
    precision = generate_precision_corpus(desk, registry, per_org=4, seed=75)
    assert len(precision) == len(registry) * 4 + zero_slot

    import io

    a, b = io.StringIO(), io.StringIO()
    emit_sequence_labels(generate_recall_corpus(desk, registry, per_comment=100, seed=76), a)
    emit_sequence_labels(generate_recall_corpus(desk, registry, per_comment=100, seed=76), b)
    assert a.getvalue() == b.getvalue()
    c = io.StringIO()
    emit_sequence_labels(generate_precision_corpus(desk, registry, per_org=4, seed=77), c)
    d = io.StringIO()
    emit_sequence_labels(generate_precision_corpus(desk, registry, per_org=4, seed=77), d)
    assert c.getvalue() == d.getvalue()
    report(7, time.perf_counter() - start, 60.0,
           f"- corpus sizes exact (7x100=700, 693x100=69,300, {len(registry)}x4+{zero_slot}) and byte-identical under fixed seeds")


def test_criterion_8_reconciliation_fixtures():
    start = time.perf_counter()
    joined = reconcile(
        ["Common Sense Media, Common Sense Kids Action"],
        ["Common Sense Media", "Common Sense Kids Action"],
    )
    assert (joined.true_positives, joined.false_negatives, joined.false_positives) == (2, 0, 0)

    partial = reconcile(
        ["Policylink and the Alliance for Boys and Men of Color"],
        ["PolicyLink", "Alliance for Boys and Men of Color"],
    )
    assert partial.true_positives == 1  # PolicyLink matched
    assert partial.false_negatives == 1
    fragments = [pair[0] for pair in partial.unresolved if pair[0] is not None]
    assert fragments  # the "and"-internal remainder awaits manual review
    assert all("Policylink" not in frag for frag in fragments)
    report(8, time.perf_counter() - start, 1.0,
           "- joined-name fixture gives TP=2; split fixture matches PolicyLink and leaves the remainder unresolved")


def test_criterion_9_end_to_end_determinism(tmp_path):
    start = time.perf_counter()
    names = synth_registry_names(200, seed=90)
    hearings = synth_hearing_corpus(50, names, seed=91)
    assert len(hearings) == 50
    hearings_path = tmp_path / "hearings.jsonl"
    with open(hearings_path, "w", encoding="utf-8") as fh:
        write_hearing_file(hearings, fh)
    (tmp_path / "orgs.txt").write_text("\n".join(names) + "\n", encoding="utf-8")
    (tmp_path / "places.txt").write_text("\n".join(synth_city_names()) + "\n", encoding="utf-8")

    def run(tag):
        out_dir = tmp_path / tag
        assert main([
            "rank", "--hearings", str(hearings_path), "--orgs", str(tmp_path / "orgs.txt"),
            "--places", str(tmp_path / "places.txt"), "--out-dir", str(out_dir),
            "--seed", "7", "--workers", "2",
        ]) == 0
        attendance = out_dir / "attendance.csv"
        assert main([
            "detect-absences", "--hearings", str(hearings_path),
            "--out", str(attendance), "--seed", "7", "--workers", "2",
        ]) == 0
        files = ["org_rankings.csv", "engagement_rankings.csv", "filter_stats.csv", "attendance.csv"]
        return {name: (out_dir / name).read_bytes() for name in files}

    first = run("run1")
    second = run("run2")
    assert first == second
    assert any(first.values())
    report(9, time.perf_counter() - start, 60.0,
           "- two full pipeline runs over 50 hearings produced byte-identical reports")
