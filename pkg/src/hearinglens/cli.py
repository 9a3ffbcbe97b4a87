"""Command-line pipeline over hearing corpora.

Subcommands: extract-affiliations, classify-stance, score-engagement,
detect-absences, rank, gen-training-data, evaluate. Every rule constant is
a flag with the documented default, so sensitivity experiments need no
rebuild; a key=value config file supplies defaults that explicit flags
override. Outputs are byte-identical across runs for the same inputs and
seed. Exit codes: 0 success, 1 input error, 2 internal failure.
"""

from __future__ import annotations

import argparse
import csv
import functools
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Optional, Sequence

from hearinglens import absentee, affiliation, analytics, augment, evaluation, gazetteer, stance
from hearinglens import engagement as eng
from hearinglens.model import HearingFormatError, build_speaker_directory, parse_hearing_file

log = logging.getLogger("hearinglens")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


class CLIInputError(ValueError):
    """Bad flags, missing files, or malformed input data."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; that status is reserved for
    # internal failures here, so surface usage problems as input errors.
    def error(self, message):
        raise CLIInputError(message)


_DEFAULTS = {
    "window_words": affiliation.WINDOW_WORDS,
    "cue_window": affiliation.CUE_WINDOW,
    "speaking_min_words": eng.SPEAKING_MIN_WORDS,
    "block_seconds": eng.BLOCK_SECONDS,
    "words_per_block": eng.WORDS_PER_BLOCK,
    "back_and_forth_min_words": eng.BACK_AND_FORTH_MIN_WORDS,
    "special_meeting_threshold": absentee.SPECIAL_MEETING_THRESHOLD,
    "seed": 0,
    "workers": 0,  # 0 = available parallelism
    "max_depth": 5,
    "min_leaf": 2,
    "per_comment": 100,
    "per_org": 4,
    "extractor": "combined",
}

_INT_KEYS = {
    "window_words", "cue_window", "speaking_min_words", "words_per_block",
    "back_and_forth_min_words", "seed", "workers", "max_depth", "min_leaf",
    "per_comment", "per_org", "train_count",
}
_FLOAT_KEYS = {"block_seconds", "special_meeting_threshold"}


@dataclass(frozen=True)
class RunConfig:
    """Resolved knobs shared across subcommands."""

    weights: eng.EngagementWeights
    window_words: int
    cue_window: int
    speaking_min_words: int
    block_seconds: float
    words_per_block: int
    back_and_forth_min_words: int
    special_meeting_threshold: float
    seed: int
    workers: int
    cue_phrases: Optional[tuple[str, ...]] = None
    stop_verbs: Optional[frozenset] = None

    def __post_init__(self):
        for name in (
            "window_words", "cue_window", "speaking_min_words", "block_seconds",
            "words_per_block", "back_and_forth_min_words", "special_meeting_threshold",
        ):
            if getattr(self, name) <= 0:
                raise CLIInputError(f"--{name.replace('_', '-')} must be positive")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hearinglens", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file of defaults; flags override it")

    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")
    common.add_argument("--workers", type=int, help="worker processes (default: available parallelism)")
    common.add_argument("--window-words", type=int, help="introduction window size in words")
    common.add_argument("--cue-window", type=int, help="cue adjacency window in tokens")
    common.add_argument("--speaking-min-words", type=int, help="words an utterance must exceed to earn speaking credit")
    common.add_argument("--block-seconds", type=float, help="seconds per speaking instance")
    common.add_argument("--words-per-block", type=int, help="untimed fallback words per speaking instance")
    common.add_argument("--back-and-forth-min-words", type=int, help="words an exchange must exceed to count")
    common.add_argument("--special-meeting-threshold", type=float, help="absent fraction that voids absence marking")
    common.add_argument("--weights", help="engagement weights file (key=value: alpha, beta, gamma, delta)")
    common.add_argument("--cue-phrases", help="cue phrase list file overriding the shipped defaults")
    common.add_argument("--stop-verbs", help="stop verb list file overriding the shipped defaults")

    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("extract-affiliations", parents=[common],
                       help="organizations stated by public commenters, one CSV row each")
    p.add_argument("--hearings", help="hearing corpus (line-delimited JSON)")
    p.add_argument("--orgs", help="registry file, one organization per line")
    p.add_argument("--places", help="city/county blocklist file")
    p.add_argument("--out", help="accepted-organizations CSV")
    p.add_argument("--rejected-out", help="optional CSV of rejected candidates with reasons")
    p.set_defaults(func=cmd_extract_affiliations, required=("hearings", "orgs", "out"))

    p = sub.add_parser("classify-stance", parents=[common],
                       help="classify public comments as Support/Oppose/Neutral")
    p.add_argument("--hearings", help="hearing corpus to classify")
    p.add_argument("--out", help="stance CSV for --hearings")
    p.add_argument("--train", help="labeled samples (comment<TAB>label) to train a tree on")
    p.add_argument("--train-count", type=int, help="train on this many samples, test on the rest")
    p.add_argument("--tree-out", help="where to save the trained tree")
    p.add_argument("--tree", help="serialized tree to classify with (default: rule fallback)")
    p.add_argument("--max-depth", type=int, help="tree depth cap (default 5)")
    p.add_argument("--min-leaf", type=int, help="minimum samples per leaf (default 2)")
    p.set_defaults(func=cmd_classify_stance, required=())

    p = sub.add_parser("score-engagement", parents=[common],
                       help="per-legislator engagement scores over filtered hearings")
    p.add_argument("--hearings", help="hearing corpus")
    p.add_argument("--out", help="engagement CSV")
    p.set_defaults(func=cmd_score_engagement, required=("hearings", "out"))

    p = sub.add_parser("detect-absences", parents=[common],
                       help="per-hearing attendance records")
    p.add_argument("--hearings", help="hearing corpus")
    p.add_argument("--out", help="attendance CSV")
    p.set_defaults(func=cmd_detect_absences, required=("hearings", "out"))

    p = sub.add_parser("rank", parents=[common],
                       help="session report: organization and engagement rankings")
    p.add_argument("--hearings", help="hearing corpus")
    p.add_argument("--orgs", help="registry file")
    p.add_argument("--places", help="city/county blocklist file")
    p.add_argument("--exclusions", help="organizations to drop from the ranking, one per line")
    p.add_argument("--out-dir", help="directory for the report CSVs")
    p.set_defaults(func=cmd_rank, required=("hearings", "orgs", "out_dir"))

    p = sub.add_parser("gen-training-data", parents=[common],
                       help="substitution corpora for external sequence taggers")
    p.add_argument("--tagged-comments", help="tagged comments (line-delimited JSON)")
    p.add_argument("--orgs", help="registry file")
    p.add_argument("--places", help="city/county blocklist file")
    p.add_argument("--per-comment", type=int, help="synthetic copies per comment (default 100)")
    p.add_argument("--per-org", type=int, help="template sentences per organization (default 4)")
    p.add_argument("--recall-out", help="recall-side corpus (token<TAB>tag blocks)")
    p.add_argument("--precision-out", help="precision-side corpus (token<TAB>tag blocks)")
    p.set_defaults(func=cmd_gen_training_data, required=("tagged_comments", "orgs"))

    p = sub.add_parser("evaluate", parents=[common],
                       help="score an extractor against an annotated corpus")
    p.add_argument("--labeled", help="labeled comments (line-delimited JSON)")
    p.add_argument("--orgs", help="registry file")
    p.add_argument("--places", help="city/county blocklist file")
    p.add_argument("--extractor", choices=("combined", "recall", "precision"),
                   help="which extractor variant to score (default combined)")
    p.add_argument("--out", help="metrics CSV")
    p.add_argument("--unresolved-out", help="optional CSV of unresolved pairs for manual review")
    p.set_defaults(func=cmd_evaluate, required=("labeled", "orgs", "out"))
    return parser


def _read_config_file(path) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise CLIInputError(f"{path}: line {lineno}: expected key=value")
                key, _, raw = line.partition("=")
                values[key.strip().replace("-", "_")] = raw.strip()
    except OSError as exc:
        raise CLIInputError(f"cannot read config file: {exc}") from exc
    return values


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    for key, raw in _read_config_file(args.config).items():
        if not hasattr(args, key):
            continue  # keys for other subcommands are fine in a shared file
        if getattr(args, key) is not None:
            continue  # explicit flags win
        if key in _INT_KEYS:
            value = int(raw)
        elif key in _FLOAT_KEYS:
            value = float(raw)
        else:
            value = raw
        setattr(args, key, value)


def _resolve(args: argparse.Namespace) -> RunConfig:
    _apply_config(args)
    for name in getattr(args, "required", ()):
        if getattr(args, name, None) is None:
            raise CLIInputError(f"missing required option --{name.replace('_', '-')}")
    for key, default in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, default)
    weights = eng.DEFAULT_WEIGHTS
    if getattr(args, "weights", None):
        weights = eng.load_weights_file(args.weights)
    cue_phrases = None
    if getattr(args, "cue_phrases", None):
        cue_phrases = affiliation.load_phrase_file(args.cue_phrases)
    stop_verbs = None
    if getattr(args, "stop_verbs", None):
        stop_verbs = frozenset(affiliation.load_phrase_file(args.stop_verbs))
    workers = args.workers if args.workers else (os.cpu_count() or 1)
    return RunConfig(
        weights=weights,
        window_words=args.window_words,
        cue_window=args.cue_window,
        speaking_min_words=args.speaking_min_words,
        block_seconds=args.block_seconds,
        words_per_block=args.words_per_block,
        back_and_forth_min_words=args.back_and_forth_min_words,
        special_meeting_threshold=args.special_meeting_threshold,
        seed=args.seed,
        workers=workers,
        cue_phrases=cue_phrases,
        stop_verbs=stop_verbs,
    )


def _load_hearings(path):
    try:
        with open(path, encoding="utf-8") as fh:
            hearings = parse_hearing_file(fh)
    except OSError as exc:
        raise CLIInputError(f"cannot read hearings: {exc}") from exc
    log.info("loaded %d hearings from %s", len(hearings), path)
    return hearings


def _load_registry(args) -> gazetteer.OrgRegistry:
    try:
        registry = gazetteer.load_registry(args.orgs, getattr(args, "places", None))
    except OSError as exc:
        raise CLIInputError(f"cannot read registry: {exc}") from exc
    log.info("registry: %d organizations, %d rejected, %d blocked places",
             len(registry), len(registry.rejected), len(registry.city_county_blocklist))
    return registry


def _open_out(path) -> IO[str]:
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise CLIInputError(f"cannot write {path}: {exc}") from exc


def _pmap(fn, items: Sequence, workers: int) -> list:
    """Order-preserving map, across processes when it pays off."""
    if workers <= 1 or len(items) < 4:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _print_table(headers: Sequence[str], rows: Sequence[Sequence], sink: IO[str]) -> None:
    table = [[str(cell) for cell in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in table:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))
    sink.write(line.rstrip() + "\n")
    sink.write("  ".join("-" * w for w in widths) + "\n")
    for row in table:
        sink.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() + "\n")


# ----------------------------------------------------------------------
# subcommands


def cmd_extract_affiliations(args, cfg: RunConfig) -> int:
    hearings = _load_hearings(args.hearings)
    registry = _load_registry(args)
    accepted_rows = []
    rejected_rows = []
    for hearing in hearings:
        for utt in analytics.public_comments(hearing):
            result = affiliation.extract_affiliations(
                utt.text, utt.speaker, registry,
                cue_phrases=cfg.cue_phrases, window_words=cfg.window_words,
                cue_window=cfg.cue_window, stop_verbs=cfg.stop_verbs,
            )
            for org in result.accepted:
                accepted_rows.append([hearing.id, utt.index, utt.speaker.id, org])
            for cand, why in result.rejected:
                rejected_rows.append([hearing.id, utt.index, cand.surface, why])
    with _open_out(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["hearing_id", "utterance_index", "speaker_id", "organization"])
        writer.writerows(accepted_rows)
    if args.rejected_out:
        with _open_out(args.rejected_out) as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["hearing_id", "utterance_index", "surface", "reason"])
            writer.writerows(rejected_rows)
    log.info("extracted %d affiliations (%d candidates rejected)", len(accepted_rows), len(rejected_rows))
    return EXIT_OK


def cmd_classify_stance(args, cfg: RunConfig) -> int:
    if not args.train and not args.hearings:
        raise CLIInputError("classify-stance needs --train and/or --hearings")
    tree = None
    if args.tree:
        tree = stance.load_tree(args.tree)
    if args.train:
        with open(args.train, encoding="utf-8") as fh:
            labeled = stance.load_labeled_comments(fh)
        pairs = [(stance.count_phrases(text), label) for text, label in labeled]
        train_count = args.train_count if args.train_count is not None else len(pairs)
        if not 0 < train_count <= len(pairs):
            raise CLIInputError(f"--train-count must be in 1..{len(pairs)}")
        order = list(range(len(pairs)))
        random.Random(cfg.seed).shuffle(order)
        train_set = [pairs[i] for i in order[:train_count]]
        test_set = [pairs[i] for i in order[train_count:]]
        tree = stance.train_tree(train_set, max_depth=args.max_depth, min_leaf=args.min_leaf)
        log.info("trained tree on %d samples", len(train_set))
        if test_set:
            predicted = [tree.classify(v) for v, _ in test_set]
            actual = [label for _, label in test_set]
            log.info("held-out F1 on %d samples: %.4f", len(test_set), stance.macro_f1(actual, predicted))
        if args.tree_out:
            stance.save_tree(tree, args.tree_out)
            log.info("saved tree to %s", args.tree_out)
    if args.hearings:
        if args.out is None:
            raise CLIInputError("missing required option --out")
        hearings = _load_hearings(args.hearings)
        rows = []
        for hearing in hearings:
            for utt in analytics.public_comments(hearing):
                vector = stance.count_phrases(utt.text)
                label = tree.classify(vector) if tree is not None else stance.rule_fallback(vector)
                rows.append([hearing.id, utt.index, utt.speaker.id, *vector.as_tuple(), label])
        with _open_out(args.out) as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["hearing_id", "utterance_index", "speaker_id", *stance.CATEGORIES, "label"])
            writer.writerows(rows)
        log.info("classified %d public comments", len(rows))
    return EXIT_OK


def _counter_params(cfg: RunConfig) -> dict:
    return {
        "min_words": cfg.speaking_min_words,
        "block_seconds": cfg.block_seconds,
        "words_per_block": cfg.words_per_block,
        "back_and_forth_min_words": cfg.back_and_forth_min_words,
    }


def _hearing_counters_task(hearing, directory, params):
    return eng.hearing_counters(hearing, directory, **params)


def _engagement_rows(hearings, cfg: RunConfig):
    directory = build_speaker_directory(hearings)
    stats: dict[str, int] = {}
    kept = analytics.filter_for_engagement(hearings, directory, stats)
    log.info("engagement filters kept %d of %d hearings (%s)", len(kept), len(hearings),
             ", ".join(f"{k}={v}" for k, v in sorted(stats.items())))
    task = functools.partial(_hearing_counters_task, directory=directory, params=_counter_params(cfg))
    merged: dict[str, eng.EngagementCounters] = {}
    for per_hearing in _pmap(task, kept, cfg.workers):
        for member, counters in per_hearing.items():
            merged[member] = eng.merge_counters(merged[member], counters) if member in merged else counters
    breakdowns = []
    for member in sorted(merged):
        name = directory[member].full_name if member in directory else member
        breakdowns.append((name, member, eng.compute_scores(merged[member], cfg.weights)))
    # Same order rank_legislators produces, with the id as a final tie-break
    # so duplicate full names stay deterministic.
    breakdowns.sort(key=lambda item: (-item[2].total, item[0], item[1]))
    rows = []
    for rank_idx, (name, member, bd) in enumerate(breakdowns, start=1):
        rows.append([
            rank_idx, member, name, f"{bd.total:.6f}", f"{bd.vote_score:.6f}",
            f"{bd.speaking_score:.6f}", f"{bd.back_and_forth_score:.6f}", f"{bd.question_score:.6f}",
        ])
    return rows, stats


_ENGAGEMENT_HEADER = [
    "rank", "legislator_id", "legislator", "engagement_score", "voting_score",
    "speaking_score", "back_and_forth_score", "question_score",
]


def cmd_score_engagement(args, cfg: RunConfig) -> int:
    hearings = _load_hearings(args.hearings)
    rows, _stats = _engagement_rows(hearings, cfg)
    with _open_out(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_ENGAGEMENT_HEADER)
        writer.writerows(rows)
    log.info("scored %d legislators", len(rows))
    return EXIT_OK


def _attendance_task(hearing, directory, threshold):
    roll_call = eng.detect_roll_call(hearing, directory)
    return absentee.hearing_attendance(hearing, roll_call, threshold=threshold)


def _hearing_orgs_task(hearing, registry, cfg: RunConfig):
    orgs: list[str] = []
    for utt in analytics.public_comments(hearing):
        result = affiliation.extract_affiliations(
            utt.text, utt.speaker, registry,
            cue_phrases=cfg.cue_phrases, window_words=cfg.window_words,
            cue_window=cfg.cue_window, stop_verbs=cfg.stop_verbs,
        )
        orgs.extend(result.accepted)
    return orgs


def cmd_detect_absences(args, cfg: RunConfig) -> int:
    hearings = _load_hearings(args.hearings)
    directory = build_speaker_directory(hearings)
    task = functools.partial(_attendance_task, directory=directory, threshold=cfg.special_meeting_threshold)
    with _open_out(args.out) as fh:
        records = [record for batch in _pmap(task, hearings, cfg.workers) for record in batch]
        absentee.write_attendance_csv(records, fh)
    log.info("wrote %d attendance records", len(records))
    return EXIT_OK


def cmd_rank(args, cfg: RunConfig) -> int:
    hearings = _load_hearings(args.hearings)
    registry = _load_registry(args)
    exclusions: tuple[str, ...] = ()
    if args.exclusions:
        exclusions = affiliation.load_phrase_file(args.exclusions)
    directory = build_speaker_directory(hearings)

    aff_stats: dict[str, int] = {}
    aff_hearings = analytics.filter_for_affiliation(hearings, directory, aff_stats)
    log.info("affiliation filters kept %d of %d hearings (%s)", len(aff_hearings), len(hearings),
             ", ".join(f"{k}={v}" for k, v in sorted(aff_stats.items())))
    orgs_task = functools.partial(_hearing_orgs_task, registry=registry, cfg=cfg)
    per_hearing_orgs = _pmap(orgs_task, aff_hearings, cfg.workers)
    org_rows = [
        [rank_idx, org, count]
        for rank_idx, (org, count) in enumerate(
            analytics.org_frequency(per_hearing_orgs, exclusions=exclusions), start=1
        )
    ]
    engagement_rows, eng_stats = _engagement_rows(hearings, cfg)

    os.makedirs(args.out_dir, exist_ok=True)

    def out_path(name):
        return os.path.join(args.out_dir, name)

    with _open_out(out_path("org_rankings.csv")) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "organization", "hearings_count"])
        writer.writerows(org_rows)
    with _open_out(out_path("engagement_rankings.csv")) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_ENGAGEMENT_HEADER)
        writer.writerows(engagement_rows)
    with _open_out(out_path("filter_stats.csv")) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["filter", "removed"])
        for key, value in sorted(aff_stats.items()):
            writer.writerow([f"affiliation.{key}", value])
        for key, value in sorted(eng_stats.items()):
            writer.writerow([f"engagement.{key}", value])

    sys.stdout.write("Organizations commenting on the most hearings\n")
    _print_table(["rank", "organization", "hearings"], org_rows[:10], sys.stdout)
    sys.stdout.write("\nMost engaged legislators\n")
    _print_table(_ENGAGEMENT_HEADER, engagement_rows[:10], sys.stdout)
    log.info("reports written to %s", args.out_dir)
    return EXIT_OK


def cmd_gen_training_data(args, cfg: RunConfig) -> int:
    try:
        with open(args.tagged_comments, encoding="utf-8") as fh:
            comments = augment.read_tagged_comments(fh)
    except OSError as exc:
        raise CLIInputError(f"cannot read tagged comments: {exc}") from exc
    registry = _load_registry(args)
    if args.recall_out:
        corpus = augment.generate_recall_corpus(comments, registry, args.per_comment, cfg.seed)
        with _open_out(args.recall_out) as fh:
            augment.emit_sequence_labels(corpus, fh)
        log.info("recall corpus: %d sentences (%d comments x %d)", len(corpus), len(comments), args.per_comment)
    if args.precision_out:
        corpus = augment.generate_precision_corpus(comments, registry, args.per_org, cfg.seed)
        with _open_out(args.precision_out) as fh:
            augment.emit_sequence_labels(corpus, fh)
        log.info("precision corpus: %d sentences", len(corpus))
    if not args.recall_out and not args.precision_out:
        raise CLIInputError("nothing to do: give --recall-out and/or --precision-out")
    return EXIT_OK


def cmd_evaluate(args, cfg: RunConfig) -> int:
    try:
        with open(args.labeled, encoding="utf-8") as fh:
            corpus = evaluation.read_labeled_corpus(fh)
    except OSError as exc:
        raise CLIInputError(f"cannot read labeled corpus: {exc}") from exc
    registry = _load_registry(args)

    def combined(record):
        return affiliation.extract_affiliations(
            record.text, record.speaker, registry,
            cue_phrases=cfg.cue_phrases, window_words=cfg.window_words,
            cue_window=cfg.cue_window, stop_verbs=cfg.stop_verbs,
        ).accepted

    def recall_only(record):
        cands = affiliation.extract_recall(record.text, record.speaker, registry, cue_phrases=cfg.cue_phrases)
        return [c.display_name for c in cands]

    def precision_only(record):
        cands = affiliation.extract_precision(
            record.text, record.speaker, registry,
            cue_phrases=cfg.cue_phrases, window_words=cfg.window_words, cue_window=cfg.cue_window,
        )
        return [c.display_name for c in cands]

    extractor = {"combined": combined, "recall": recall_only, "precision": precision_only}[args.extractor]
    outcome, score = evaluation.evaluate_extractor(corpus, extractor)
    with _open_out(args.out) as fh:
        evaluation.write_metrics_csv(outcome, score, fh)
    if args.unresolved_out:
        with _open_out(args.unresolved_out) as fh:
            evaluation.write_unresolved_csv(outcome, fh)
    log.info("%s extractor: tp=%d fn=%d fp=%d f1=%.4f", args.extractor,
             outcome.true_positives, outcome.false_negatives, outcome.false_positives, score)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _resolve(args)
        return args.func(args, cfg)
    except CLIInputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (HearingFormatError, FileNotFoundError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - internal invariant failures
        log.error("internal error: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
