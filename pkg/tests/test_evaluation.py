import io
import random

import pytest

from hearinglens.evaluation import (
    LabeledComment,
    MatchOutcome,
    evaluate_extractor,
    f1,
    read_labeled_corpus,
    reconcile,
    write_labeled_corpus,
)

from helpers import mk_speaker


def test_reconcile_identity():
    truth = ["Alpha Group", "Beta Fund", "Gamma League"]
    outcome = reconcile(list(truth), truth)
    assert (outcome.true_positives, outcome.false_negatives, outcome.false_positives) == (3, 0, 0)
    assert outcome.unresolved == []


def test_reconcile_joined_names_split_at_comma():
    outcome = reconcile(
        ["Common Sense Media, Common Sense Kids Action"],
        ["Common Sense Media", "Common Sense Kids Action"],
    )
    assert (outcome.true_positives, outcome.false_negatives, outcome.false_positives) == (2, 0, 0)


def test_reconcile_and_split_leaves_fragment_unresolved():
    outcome = reconcile(
        ["Policylink and the Alliance for Boys and Men of Color"],
        ["PolicyLink", "Alliance for Boys and Men of Color"],
    )
    assert outcome.true_positives == 1  # PolicyLink matched through the split
    assert outcome.false_negatives == 1
    assert outcome.false_positives == 2  # the two "and"-internal fragments
    nearest = {pair[1] for pair in outcome.unresolved if pair[0] is not None}
    assert nearest == {"Alliance for Boys and Men of Color"}


def test_reconcile_strips_leading_the():
    outcome = reconcile(["the Sierra Club"], ["Sierra Club"])
    assert (outcome.true_positives, outcome.false_negatives, outcome.false_positives) == (1, 0, 0)


def test_reconcile_and_is_token_anchored():
    # "Anderson" and "Alliance" must not split on their substrings
    outcome = reconcile(["Anderson Alliance"], ["Anderson Alliance"])
    assert outcome.true_positives == 1


def test_reconcile_fn_reported_in_unresolved():
    outcome = reconcile([], ["Alpha Group"])
    assert outcome.false_negatives == 1
    assert (None, "Alpha Group") in outcome.unresolved


def test_reconcile_tp_bound_invariant():
    rng = random.Random(13)
    pool = ["Alpha Group", "Beta Fund", "Gamma League", "Delta Union", "Epsilon Trust"]
    for _ in range(300):
        truth = rng.sample(pool, rng.randint(0, len(pool)))
        extracted = []
        for _ in range(rng.randint(0, 4)):
            ext = rng.sample(pool, rng.randint(1, 2))
            extracted.append(" and ".join(ext) if len(ext) > 1 else ext[0])
        outcome = reconcile(extracted, truth)
        fragments = sum(max(1, 1 + name.split().count("and")) for name in extracted)
        assert outcome.true_positives <= min(fragments, len(truth))
        assert outcome.true_positives + outcome.false_negatives == len(truth)


def test_f1_reproduces_reference_rows():
    # (tp, fn, fp) -> published three-decimal score
    rows = [
        (130, 64, 38, 0.718),
        (135, 60, 26, 0.758),
        (169, 42, 61, 0.766),
        (136, 65, 20, 0.762),
        (146, 51, 22, 0.800),
        (149, 45, 47, 0.764),
        (171, 31, 19, 0.872),
    ]
    for tp, fn, fp, expected in rows:
        assert f1(tp, fn, fp) == pytest.approx(expected, abs=5e-4)


def test_f1_degenerate_input_warns():
    with pytest.warns(UserWarning, match="undefined"):
        assert f1(0, 0, 0) == 0.0
    with pytest.raises(ValueError):
        f1(-1, 0, 0)


def test_f1_monotone_in_errors():
    base = f1(50, 10, 10)
    assert f1(50, 11, 10) < base
    assert f1(50, 10, 11) < base


def test_outcome_addition():
    a = MatchOutcome(1, 2, 3, [("x", None)])
    b = MatchOutcome(4, 5, 6, [(None, "y")])
    total = a + b
    assert (total.true_positives, total.false_negatives, total.false_positives) == (5, 7, 9)
    assert total.unresolved == [("x", None), (None, "y")]


def test_evaluate_perfect_extractor():
    corpus = [LabeledComment(f"comment {i}", (f"Org Number{i}",)) for i in range(10)]
    outcome, score = evaluate_extractor(corpus, lambda rec: list(rec.orgs))
    assert score == 1.0
    assert outcome.false_negatives == outcome.false_positives == 0


def test_evaluate_empty_extractor():
    corpus = [LabeledComment(f"comment {i}", (f"Org Number{i}",)) for i in range(7)]
    outcome, score = evaluate_extractor(corpus, lambda rec: [])
    assert score == 0.0
    assert outcome.false_negatives == 7


def test_evaluate_corrupted_extractor_matches_recount():
    """10% corrupted outputs; expected counts recomputed independently."""
    rng = random.Random(21)
    corpus = [LabeledComment(f"comment {i}", (f"Org Number{i}", f"Other Group{i}")) for i in range(100)]
    corrupted = {i for i in range(100) if rng.random() < 0.1}

    def extractor(rec):
        i = int(rec.text.split()[-1])
        if i in corrupted:
            return ["Wrong Name", rec.orgs[1]]
        return list(rec.orgs)

    outcome, score = evaluate_extractor(corpus, extractor)
    bad = len(corrupted)
    expected_tp = 2 * (100 - bad) + bad
    assert outcome.true_positives == expected_tp
    assert outcome.false_negatives == bad
    assert outcome.false_positives == bad
    assert score == pytest.approx(2 * expected_tp / (2 * expected_tp + 2 * bad), abs=1e-12)


def test_labeled_corpus_round_trip():
    speaker = mk_speaker("pc1", "Ann Moss", role="public-commenter")
    records = [
        LabeledComment("Ann Moss, with Alpha Group, in support.", ("Alpha Group",), speaker),
        LabeledComment("no orgs here", ()),
    ]
    buf = io.StringIO()
    write_labeled_corpus(records, buf)
    buf.seek(0)
    assert read_labeled_corpus(buf) == records
    with pytest.raises(ValueError, match="bad labeled-comment record"):
        read_labeled_corpus(io.StringIO('{"text": "x"}\n'))
