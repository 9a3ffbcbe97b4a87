"""Synthetic training corpora by organization substitution.

Hand-tagged comments carry slots marking their affiliated organizations;
swapping each slot for a random registry entry multiplies the corpus
without further annotation work while preserving the shape of affiliation
statements. Corpora serialize in the conventional token<TAB>tag column
format for external sequence-labeling trainers.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from hearinglens.gazetteer import OrgRegistry

TAG_PERSON = "PERSON"
TAG_ORGANIZATION = "ORGANIZATION"
TAG_OTHER = "OTHER"
TAGS = (TAG_PERSON, TAG_ORGANIZATION, TAG_OTHER)


@dataclass(frozen=True)
class TaggedComment:
    tokens: tuple[str, ...]
    tags: tuple[str, ...]
    org_slots: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.tags):
            raise ValueError("tokens and tags must have the same length")
        for tag in self.tags:
            if tag not in TAGS:
                raise ValueError(f"unknown tag {tag!r}")
        prev_end = 0
        for start, end in self.org_slots:
            if start < prev_end or end <= start or end > len(self.tokens):
                raise ValueError("org_slots must be sorted, non-overlapping and in range")
            prev_end = end


def _child_seed(seed: int, index: int) -> int:
    # Stable per-comment stream so generation can parallelize by comment.
    return (seed * 1_000_003 + index) & 0x7FFF_FFFF_FFFF_FFFF


def _fill_slots(comment: TaggedComment, replacements: Sequence[str]) -> TaggedComment:
    tokens: list[str] = []
    tags: list[str] = []
    slots: list[tuple[int, int]] = []
    prev = 0
    for (start, end), name in zip(comment.org_slots, replacements):
        tokens.extend(comment.tokens[prev:start])
        tags.extend(comment.tags[prev:start])
        entry_tokens = name.split()
        slots.append((len(tokens), len(tokens) + len(entry_tokens)))
        tokens.extend(entry_tokens)
        tags.extend([TAG_ORGANIZATION] * len(entry_tokens))
        prev = end
    tokens.extend(comment.tokens[prev:])
    tags.extend(comment.tags[prev:])
    return TaggedComment(tuple(tokens), tuple(tags), tuple(slots))


def substitute_orgs(
    comment: TaggedComment, registry: OrgRegistry, n: int, seed: int
) -> list[TaggedComment]:
    """``n`` synthetic copies with every slot replaced independently by a
    uniformly drawn registry entry. Slot-free comments come back unchanged
    ``n`` times."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not comment.org_slots:
        return [comment] * n
    if not registry.entries:
        raise ValueError("cannot substitute organizations from an empty registry")
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        replacements = [rng.choice(registry.entries) for _ in comment.org_slots]
        out.append(_fill_slots(comment, replacements))
    return out


def generate_recall_corpus(
    comments: Sequence[TaggedComment],
    registry: OrgRegistry,
    per_comment: int = 100,
    seed: int = 0,
) -> list[TaggedComment]:
    """Substitution corpus for the recall-side trainer.

    Exactly ``len(comments) * per_comment`` sentences, in comment order,
    deterministic for a fixed seed.
    """
    corpus: list[TaggedComment] = []
    for index, comment in enumerate(comments):
        corpus.extend(substitute_orgs(comment, registry, per_comment, _child_seed(seed, index)))
    return corpus


def generate_precision_corpus(
    comments: Sequence[TaggedComment],
    registry: OrgRegistry,
    per_org: int = 4,
    seed: int = 0,
) -> list[TaggedComment]:
    """Template corpus for the precision-side trainer.

    For every registry entry, ``per_org`` single-slot comments are sampled
    (with replacement) and filled with that entry; all slot-free comments
    are appended once. Size is exactly
    ``len(registry) * per_org + number of slot-free comments``.
    """
    if per_org < 1:
        raise ValueError("per_org must be >= 1")
    single = [c for c in comments if len(c.org_slots) == 1]
    zero = [c for c in comments if not c.org_slots]
    if registry.entries and not single:
        raise ValueError("no single-organization template comments available")
    rng = random.Random(seed)
    corpus: list[TaggedComment] = []
    for entry in registry.entries:
        for _ in range(per_org):
            corpus.append(_fill_slots(rng.choice(single), [entry]))
    corpus.extend(zero)
    return corpus


def emit_sequence_labels(corpus: Iterable[TaggedComment], sink: IO[str]) -> None:
    """One ``token<TAB>tag`` line per token, a blank line after each sentence."""
    for comment in corpus:
        for token, tag in zip(comment.tokens, comment.tags):
            sink.write(f"{token}\t{tag}\n")
        sink.write("\n")


def read_sequence_labels(source: IO[str]) -> list[TaggedComment]:
    """Inverse of :func:`emit_sequence_labels`.

    Organization slots are recovered as maximal runs of ORGANIZATION tags,
    so two org spans written back to back merge into one on the way in.
    """
    corpus: list[TaggedComment] = []
    tokens: list[str] = []
    tags: list[str] = []

    def flush() -> None:
        if not tokens:
            return
        slots = []
        k = 0
        while k < len(tags):
            if tags[k] == TAG_ORGANIZATION:
                start = k
                while k < len(tags) and tags[k] == TAG_ORGANIZATION:
                    k += 1
                slots.append((start, k))
            else:
                k += 1
        corpus.append(TaggedComment(tuple(tokens), tuple(tags), tuple(slots)))
        tokens.clear()
        tags.clear()

    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\n")
        if not line:
            flush()
            continue
        if "\t" not in line:
            raise ValueError(f"line {lineno}: expected 'token<TAB>tag'")
        token, tag = line.rsplit("\t", 1)
        if tag not in TAGS:
            raise ValueError(f"line {lineno}: unknown tag {tag!r}")
        tokens.append(token)
        tags.append(tag)
    flush()
    return corpus


def write_tagged_comments(comments: Iterable[TaggedComment], sink: IO[str]) -> None:
    """Line-delimited JSON records with tokens, tags and org_slots."""
    for comment in comments:
        record = {
            "tokens": list(comment.tokens),
            "tags": list(comment.tags),
            "org_slots": [list(slot) for slot in comment.org_slots],
        }
        sink.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_tagged_comments(source: IO[str]) -> list[TaggedComment]:
    comments = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            comments.append(
                TaggedComment(
                    tuple(record["tokens"]),
                    tuple(record["tags"]),
                    tuple((int(s), int(e)) for s, e in record["org_slots"]),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"line {lineno}: bad tagged-comment record ({exc})") from exc
    return comments
