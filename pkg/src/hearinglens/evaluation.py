"""Scoring extracted organizations against human-annotated truth.

Extractors legitimately return near-misses: several organizations joined
into one string, or a leading "the". Reconciliation normalizes both sides,
then splits still-unmatched extractions at standalone "and" tokens and
comma boundaries and rematches the fragments. Whatever still disagrees is
reported for manual review rather than silently judged.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from typing import IO, Callable, Iterable, Optional, Sequence

from hearinglens.gazetteer import normalize_org_name
from hearinglens.model import Speaker
from hearinglens.textutil import normalize_token, tokenize


@dataclass
class MatchOutcome:
    true_positives: int = 0
    false_negatives: int = 0
    false_positives: int = 0
    unresolved: list[tuple[Optional[str], Optional[str]]] = field(default_factory=list)

    def __post_init__(self):
        if min(self.true_positives, self.false_negatives, self.false_positives) < 0:
            raise ValueError("outcome counts must be >= 0")

    def __add__(self, other: "MatchOutcome") -> "MatchOutcome":
        return MatchOutcome(
            self.true_positives + other.true_positives,
            self.false_negatives + other.false_negatives,
            self.false_positives + other.false_positives,
            self.unresolved + other.unresolved,
        )


def _split_fragments(name: str) -> list[tuple[str, str]]:
    """(surface, normalized) fragments of an extracted name.

    Boundaries are standalone "and" tokens and tokens ending in a comma or
    semicolon; a leading "the" is stripped from each fragment. "and" only
    splits as a whole token, so "Alliance" and "Anderson" are safe.
    """
    groups: list[list[str]] = []
    current: list[str] = []
    for token in tokenize(name):
        if normalize_token(token) == "and":
            if current:
                groups.append(current)
                current = []
            continue
        current.append(token)
        if token.endswith((",", ";")):
            groups.append(current)
            current = []
    if current:
        groups.append(current)
    fragments = []
    for group in groups:
        normed = [t for t in (normalize_token(tok) for tok in group) if t]
        if normed and normed[0] == "the":
            normed = normed[1:]
            group = group[1:]
        if normed:
            fragments.append((" ".join(group).rstrip(",;"), " ".join(normed)))
    return fragments


def _nearest(norm: str, truths: Sequence[str], used: Sequence[bool]) -> Optional[str]:
    """Remaining truth with the highest token overlap; None when disjoint."""
    tokens = set(norm.split())
    best = None
    best_score = 0.0
    for truth, was_used in zip(truths, used):
        if was_used:
            continue
        truth_tokens = set(normalize_org_name(truth).split())
        union = tokens | truth_tokens
        score = len(tokens & truth_tokens) / len(union) if union else 0.0
        if score > best_score:
            best_score = score
            best = truth
    return best


def reconcile(extracted: Sequence[str], truth: Sequence[str]) -> MatchOutcome:
    """Match extracted names to truth, tolerant of joined names.

    Pass one matches whole names on normalized form (greedy, in truth
    order). Pass two splits the leftovers into fragments and rematches.
    Matched pairs are true positives; leftover truths are false negatives;
    leftover fragments are false positives. Every false positive or false
    negative shows up in ``unresolved`` with its nearest counterpart for
    manual review.
    """
    truth = list(truth)
    truth_norms = [normalize_org_name(t) for t in truth]
    used = [False] * len(truth)

    def claim(norm: str) -> bool:
        for k, candidate in enumerate(truth_norms):
            if not used[k] and candidate == norm:
                used[k] = True
                return True
        return False

    tp = 0
    leftovers: list[str] = []
    for name in extracted:
        if claim(normalize_org_name(name)):
            tp += 1
        else:
            leftovers.append(name)

    fp_fragments: list[tuple[str, str]] = []
    for name in leftovers:
        for surface, norm in _split_fragments(name):
            if claim(norm):
                tp += 1
            else:
                fp_fragments.append((surface, norm))

    unresolved: list[tuple[Optional[str], Optional[str]]] = []
    for surface, norm in fp_fragments:
        unresolved.append((surface, _nearest(norm, truth, used)))
    missed = [truth[k] for k in range(len(truth)) if not used[k]]
    for name in missed:
        unresolved.append((None, name))
    return MatchOutcome(tp, len(missed), len(fp_fragments), unresolved)


def f1(tp: int, fn: int, fp: int) -> float:
    """2*TP / (2*TP + FN + FP); degenerate all-zero input warns and returns 0."""
    if min(tp, fn, fp) < 0:
        raise ValueError("counts must be >= 0")
    if tp + fn + fp == 0:
        warnings.warn("F1 undefined with no observations; returning 0.0", stacklevel=2)
        return 0.0
    return 2 * tp / (2 * tp + fn + fp)


@dataclass(frozen=True)
class LabeledComment:
    text: str
    orgs: tuple[str, ...]
    speaker: Optional[Speaker] = None


def evaluate_extractor(
    corpus: Iterable[LabeledComment],
    extractor: Callable[[LabeledComment], Sequence[str]],
) -> tuple[MatchOutcome, float]:
    """Per-comment reconciliation summed over the corpus, plus overall F1."""
    total = MatchOutcome()
    for record in corpus:
        total = total + reconcile(list(extractor(record)), record.orgs)
    return total, f1(total.true_positives, total.false_negatives, total.false_positives)


def read_labeled_corpus(source: IO[str]) -> list[LabeledComment]:
    """Line-delimited JSON: {"text": ..., "orgs": [...], "speaker": {...}?}."""
    records = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
            speaker = None
            if raw.get("speaker") is not None:
                speaker = Speaker(**raw["speaker"])
            records.append(LabeledComment(raw["text"], tuple(raw["orgs"]), speaker))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValueError(f"line {lineno}: bad labeled-comment record ({exc})") from exc
    return records


def write_labeled_corpus(records: Iterable[LabeledComment], sink: IO[str]) -> None:
    for record in records:
        raw = {"text": record.text, "orgs": list(record.orgs)}
        if record.speaker is not None:
            raw["speaker"] = {
                "id": record.speaker.id,
                "full_name": record.speaker.full_name,
                "last_name": record.speaker.last_name,
                "role": record.speaker.role,
            }
        sink.write(json.dumps(raw, ensure_ascii=False) + "\n")


def write_metrics_csv(outcome: MatchOutcome, score: float, sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["true_positives", "false_negatives", "false_positives", "f1"])
    writer.writerow(
        [outcome.true_positives, outcome.false_negatives, outcome.false_positives, f"{score:.6f}"]
    )


def write_unresolved_csv(outcome: MatchOutcome, sink: IO[str]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["extracted", "nearest_truth"])
    for extracted, nearest in outcome.unresolved:
        writer.writerow([extracted or "", nearest or ""])
