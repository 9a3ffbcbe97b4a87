"""Phrase-count stance classification: Support, Oppose, or Neutral.

Comments carry their position in a handful of explicit keywords. Those
keywords fall into five categories; the counts per category form the
feature vector a small decision tree (or a deterministic mass-comparison
fallback) classifies. Comments with no keyword at all are noise and stay
Neutral; implicit stance detection is deliberately out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence

from hearinglens.matching import TokenSetMatcher
from hearinglens.textutil import normalize_token, tokenize

SUPPORT = "Support"
OPPOSE = "Oppose"
NEUTRAL = "Neutral"
LABELS = (SUPPORT, OPPOSE, NEUTRAL)

CATEGORIES = (
    "strong_opposition",
    "strong_support",
    "medium_opposition",
    "medium_support",
    "weak_support",
)

DEFAULT_PHRASES: dict[str, tuple[str, ...]] = {
    "strong_opposition": ("oppose", "opposition", "opposing", "opposed"),
    "strong_support": ("support", "supporting"),
    "medium_opposition": ("no vote", "nay vote"),
    "medium_support": ("aye vote", "yes vote"),
    "weak_support": ("cosponsor",),
}

# Every token appearing in the default phrase table, normalized. Used by
# the affiliation extractor to stop name captures at stance wording.
STANCE_TOKENS = frozenset(
    normalize_token(tok)
    for phrases in DEFAULT_PHRASES.values()
    for phrase in phrases
    for tok in phrase.split()
)


@dataclass(frozen=True)
class PhraseCountVector:
    strong_opposition: int = 0
    strong_support: int = 0
    medium_opposition: int = 0
    medium_support: int = 0
    weak_support: int = 0

    def __post_init__(self):
        for name in CATEGORIES:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return tuple(getattr(self, name) for name in CATEGORIES)

    @classmethod
    def from_tuple(cls, values: Sequence[int]) -> "PhraseCountVector":
        return cls(**dict(zip(CATEGORIES, values)))


class PhraseCounter:
    """Counts category phrases, case-insensitive and boundary-anchored.

    Multi-word phrases match as contiguous token runs; each token position
    counts toward at most one category and the longest phrase starting at a
    position wins ("aye vote" consumes the "vote" token).
    """

    def __init__(self, phrases: Optional[dict[str, Sequence[str]]] = None):
        table = DEFAULT_PHRASES if phrases is None else phrases
        self.phrases = {cat: tuple(table.get(cat, ())) for cat in CATEGORIES}
        entries = []
        for cat_index, cat in enumerate(CATEGORIES):
            for phrase in self.phrases[cat]:
                toks = tuple(normalize_token(t) for t in phrase.split())
                entries.append((toks, cat_index))
        self._matcher = TokenSetMatcher(entries)

    def count(self, comment: str) -> PhraseCountVector:
        counts = [0] * len(CATEGORIES)
        norm = [normalize_token(t) for t in tokenize(comment)]
        for _start, _end, cat_index in self._matcher.scan(norm):
            counts[cat_index] += 1
        return PhraseCountVector.from_tuple(counts)


_DEFAULT_COUNTER = PhraseCounter()


def count_phrases(comment: str) -> PhraseCountVector:
    """Category counts for a comment, using the default phrase table."""
    return _DEFAULT_COUNTER.count(comment)


def rule_fallback(vector: PhraseCountVector) -> str:
    """Deterministic baseline: compare opposition mass against support mass."""
    opposition = vector.strong_opposition + vector.medium_opposition
    support = vector.strong_support + vector.medium_support + vector.weak_support
    if opposition > support:
        return OPPOSE
    if support > opposition:
        return SUPPORT
    return NEUTRAL


@dataclass
class TreeNode:
    """Internal node: (feature, threshold, children); leaf: label + histogram.

    ``count <= threshold`` goes left.
    """

    feature: Optional[int] = None
    threshold: Optional[int] = None
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None
    label: Optional[str] = None
    histogram: Optional[dict[str, int]] = None

    @property
    def is_leaf(self) -> bool:
        return self.feature is None


@dataclass
class DecisionTree:
    root: TreeNode
    max_depth: int
    min_leaf: int

    def classify(self, vector: PhraseCountVector) -> str:
        values = vector.as_tuple()
        node = self.root
        while not node.is_leaf:
            node = node.left if values[node.feature] <= node.threshold else node.right
        return node.label


def classify(tree: DecisionTree, vector: PhraseCountVector) -> str:
    return tree.classify(vector)


def _label_counts(rows) -> dict[str, int]:
    counts: dict[str, int] = {}
    for _values, label in rows:
        counts[label] = counts.get(label, 0) + 1
    return counts


def _gini(counts: dict[str, int]) -> float:
    total = sum(counts.values())
    if total == 0:
        return 0.0
    return 1.0 - sum((c / total) ** 2 for c in counts.values())


def _majority(counts: dict[str, int]) -> str:
    best = max(counts.values())
    winners = [label for label in LABELS if counts.get(label, 0) == best]
    return winners[0] if len(winners) == 1 else NEUTRAL


def _leaf(counts: dict[str, int]) -> TreeNode:
    return TreeNode(label=_majority(counts), histogram=dict(sorted(counts.items())))


def _grow(rows, depth: int, max_depth: int, min_leaf: int) -> TreeNode:
    counts = _label_counts(rows)
    node_gini = _gini(counts)
    if node_gini == 0.0 or depth >= max_depth or len(rows) < 2 * min_leaf:
        return _leaf(counts)
    n = len(rows)
    best_key = None
    best_split = None
    for feature in range(len(CATEGORIES)):
        values = sorted({values[feature] for values, _label in rows})
        for lo, hi in zip(values, values[1:]):
            threshold = (lo + hi) // 2
            left = [row for row in rows if row[0][feature] <= threshold]
            if len(left) < min_leaf or n - len(left) < min_leaf:
                continue
            right = [row for row in rows if row[0][feature] > threshold]
            weighted = (
                len(left) * _gini(_label_counts(left)) + len(right) * _gini(_label_counts(right))
            ) / n
            key = (weighted, feature, threshold)
            if best_key is None or key < best_key:
                best_key = key
                best_split = (left, right)
    # Splits must strictly reduce impurity; otherwise this is a leaf.
    if best_key is None or best_key[0] >= node_gini - 1e-12:
        return _leaf(counts)
    left_rows, right_rows = best_split
    return TreeNode(
        feature=best_key[1],
        threshold=best_key[2],
        left=_grow(left_rows, depth + 1, max_depth, min_leaf),
        right=_grow(right_rows, depth + 1, max_depth, min_leaf),
    )


def train_tree(
    samples: Iterable[tuple[PhraseCountVector, str]],
    max_depth: int = 5,
    min_leaf: int = 2,
) -> DecisionTree:
    """Greedy CART induction over (count vector, label) pairs.

    Split search minimizes Gini impurity over all (feature, threshold)
    pairs, thresholds at midpoint-floors between consecutive distinct
    observed values. Ties break deterministically: lowest impurity, then
    lowest feature index, then lowest threshold. Leaves take the majority
    label; exact ties go Neutral. Training is bit-reproducible.
    """
    rows = []
    for vector, label in samples:
        if label not in LABELS:
            raise ValueError(f"unknown label {label!r}")
        values = vector.as_tuple() if isinstance(vector, PhraseCountVector) else tuple(vector)
        rows.append((values, label))
    if not rows:
        raise ValueError("no training samples")
    if max_depth < 0 or min_leaf < 1:
        raise ValueError("max_depth must be >= 0 and min_leaf >= 1")
    return DecisionTree(_grow(rows, 0, max_depth, min_leaf), max_depth, min_leaf)


def tree_to_text(tree: DecisionTree) -> str:
    """Serialize a tree to the nested indented text format.

    Line one holds the training parameters; every further line is either
    ``node feature=F threshold=T`` with its two children indented below
    (left = "count <= T" first), or ``leaf label=L counts=A:1,B:2``.
    """
    lines = [f"tree max_depth={tree.max_depth} min_leaf={tree.min_leaf}"]

    def walk(node: TreeNode, depth: int) -> None:
        pad = "  " * depth
        if node.is_leaf:
            hist = ",".join(f"{label}:{count}" for label, count in sorted((node.histogram or {}).items()))
            lines.append(f"{pad}leaf label={node.label} counts={hist}")
        else:
            lines.append(f"{pad}node feature={node.feature} threshold={node.threshold}")
            walk(node.left, depth + 1)
            walk(node.right, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines) + "\n"


def tree_from_text(text: str) -> DecisionTree:
    """Parse the format produced by :func:`tree_to_text`."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("tree "):
        raise ValueError("tree text must start with a 'tree' header line")
    header = dict(part.split("=", 1) for part in lines[0].split()[1:])
    position = 1

    def parse(depth: int) -> TreeNode:
        nonlocal position
        if position >= len(lines):
            raise ValueError("unexpected end of tree text")
        line = lines[position]
        indent = (len(line) - len(line.lstrip())) // 2
        if indent != depth:
            raise ValueError(f"bad indentation at line {position + 1}")
        position += 1
        parts = line.split()
        kind = parts[0]
        attrs = dict(part.split("=", 1) for part in parts[1:])
        if kind == "leaf":
            if attrs["label"] not in LABELS:
                raise ValueError(f"unknown label {attrs['label']!r}")
            histogram = {}
            if attrs.get("counts"):
                for item in attrs["counts"].split(","):
                    label, count = item.split(":")
                    histogram[label] = int(count)
            return TreeNode(label=attrs["label"], histogram=histogram)
        if kind == "node":
            feature = int(attrs["feature"])
            threshold = int(attrs["threshold"])
            if not 0 <= feature < len(CATEGORIES) or threshold < 0:
                raise ValueError(f"bad split at line {position}")
            left = parse(depth + 1)
            right = parse(depth + 1)
            return TreeNode(feature=feature, threshold=threshold, left=left, right=right)
        raise ValueError(f"unknown node kind {kind!r}")

    root = parse(0)
    if position != len(lines):
        raise ValueError("trailing content after tree")
    return DecisionTree(root, int(header.get("max_depth", 0)), int(header.get("min_leaf", 1)))


def save_tree(tree: DecisionTree, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(tree_to_text(tree))


def load_tree(path) -> DecisionTree:
    with open(path, encoding="utf-8") as fh:
        return tree_from_text(fh.read())


def macro_f1(actual: Sequence[str], predicted: Sequence[str]) -> float:
    """Mean per-label F1 over the labels that occur in ``actual``."""
    if len(actual) != len(predicted) or not actual:
        raise ValueError("need equal-length, non-empty label sequences")
    scores = []
    for label in LABELS:
        tp = sum(1 for a, p in zip(actual, predicted) if a == label and p == label)
        fp = sum(1 for a, p in zip(actual, predicted) if a != label and p == label)
        fn = sum(1 for a, p in zip(actual, predicted) if a == label and p != label)
        if tp + fn == 0:
            continue
        scores.append(2 * tp / (2 * tp + fp + fn) if (2 * tp + fp + fn) else 0.0)
    return sum(scores) / len(scores) if scores else 0.0


def load_labeled_comments(stream: IO[str]) -> list[tuple[str, str]]:
    """Labeled samples, one ``comment<TAB>label`` per line."""
    rows = []
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line:
            continue
        if "\t" not in line:
            raise ValueError(f"line {lineno}: expected 'comment<TAB>label'")
        comment, label = line.rsplit("\t", 1)
        if label not in LABELS:
            raise ValueError(f"line {lineno}: unknown label {label!r}")
        rows.append((comment, label))
    return rows
