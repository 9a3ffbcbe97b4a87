"""Dual-extractor affiliation extraction with a combining rule cascade.

Two extractors with opposite error profiles run over each public comment:
a recall-oriented one (cue-phrase name captures, the comment-initial
capitalized run, and a whole-comment registry scan) that over-generates,
and a precision-oriented one (registry matches inside the introduction
window with an adjacent cue) that under-generates. Names produced by both
are accepted outright. Every remaining candidate runs a rule cascade
(introduction window, speaker-name check, template retest, length floor,
blocklists) and the first failing rule becomes its rejection reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from hearinglens import stance
from hearinglens.gazetteer import OrgRegistry, is_blocklisted, normalize_org_name, registry_scan
from hearinglens.model import Speaker
from hearinglens.textutil import is_capitalized, normalize_token, tokenize

REJECT_OUTSIDE_WINDOW = "outside-window"
REJECT_SPEAKER_NAME = "speaker-name"
REJECT_TEMPLATE = "template-retest-failed"
REJECT_BLOCKLISTED = "blocklisted"
REJECT_TOO_SHORT = "too-short"
REJECTION_REASONS = (
    REJECT_OUTSIDE_WINDOW,
    REJECT_SPEAKER_NAME,
    REJECT_TEMPLATE,
    REJECT_BLOCKLISTED,
    REJECT_TOO_SHORT,
)

SOURCE_RECALL = "recall"
SOURCE_PRECISION = "precision"
SOURCE_REGISTRY = "registry-scan"

# Affiliations live in the first words of a comment; names past the window
# are mentions, not affiliations.
WINDOW_WORDS = 12

# A precision match needs a cue phrase whose last token sits within this
# many tokens immediately before the matched span.
CUE_WINDOW = 3

RETEST_TEMPLATE = "My name is Alex Rivera, with {}, and I am in support of this bill."

# Lowercase tokens allowed inside a captured name run.
CONNECTOR_TOKENS = frozenset({"and", "of", "the", "for", "&"})

# Capitalized tokens that are sentence openers or pronouns, not name content.
_NON_CONTENT = frozenset(
    {"i", "im", "ive", "ill", "id", "we", "weve", "my", "our", "madam", "mr", "mrs", "ms", "dr"}
)


def _load_default_list(name: str) -> tuple[str, ...]:
    text = resources.files("hearinglens.data").joinpath(name).read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#"))


def load_phrase_file(path) -> tuple[str, ...]:
    """One phrase per line; '#' comments and blank lines are skipped."""
    with open(path, encoding="utf-8") as fh:
        return tuple(line.strip() for line in fh if line.strip() and not line.startswith("#"))


DEFAULT_CUE_PHRASES = _load_default_list("cue_phrases.txt")
DEFAULT_STOP_VERBS = frozenset(normalize_token(v) for v in _load_default_list("stop_verbs.txt"))


@dataclass(frozen=True)
class Candidate:
    """One proposed organization name with its position in the comment."""

    surface: str
    token_start: int
    token_end: int
    source: str
    canonical: Optional[str] = None

    def __post_init__(self):
        if not self.surface:
            raise ValueError("candidate surface must be non-empty")
        if self.token_start < 0 or self.token_end <= self.token_start:
            raise ValueError("candidate span must be a non-empty token range")

    @property
    def normalized(self) -> str:
        return normalize_org_name(self.canonical or self.surface)

    @property
    def display_name(self) -> str:
        return self.canonical or self.surface


@dataclass(frozen=True)
class AffiliationResult:
    accepted: tuple[str, ...]
    rejected: tuple[tuple[Candidate, str], ...]


def _normalize_cues(cue_phrases: Sequence[str]) -> list[tuple[str, ...]]:
    cues = []
    for phrase in cue_phrases:
        toks = tuple(normalize_token(t) for t in phrase.split())
        if toks and all(toks):
            cues.append(toks)
    return cues


def _cue_occurrences(norm: Sequence[str], cues: Sequence[tuple[str, ...]]) -> list[tuple[int, int]]:
    """All cue spans (start, end) over the normalized token list."""
    spans = []
    for cue in cues:
        k = len(cue)
        for i in range(len(norm) - k + 1):
            if tuple(norm[i : i + k]) == cue:
                spans.append((i, i + k))
    spans.sort()
    return spans


def _is_content_token(token: str) -> bool:
    norm = normalize_token(token)
    return (
        bool(norm)
        and is_capitalized(token)
        and norm not in _NON_CONTENT
        and norm not in stance.STANCE_TOKENS
    )


def _capture_run(tokens: Sequence[str], norm: Sequence[str], start: int) -> Optional[tuple[int, int]]:
    """Capitalized name run from ``start``: content tokens joined by
    connectors, ended by stance wording, sentence-final punctuation, or
    plain lowercase prose. Leading connectors ("the") are skipped."""
    n = len(tokens)
    while start < n and norm[start] in CONNECTOR_TOKENS:
        start += 1
    if start >= n or not _is_content_token(tokens[start]):
        return None
    last_content = start
    j = start
    while j < n:
        nt = norm[j]
        if not nt or nt in stance.STANCE_TOKENS:
            break
        if _is_content_token(tokens[j]):
            last_content = j
            if tokens[j][-1] in ".!?;":
                break
            j += 1
            continue
        if nt in CONNECTOR_TOKENS:
            j += 1
            continue
        break
    return (start, last_content + 1)


def _clean_surface(tokens: Sequence[str]) -> str:
    return " ".join(tokens).rstrip(",.;:!?")


def _speaker_name_spans(norm: Sequence[str], speaker: Optional[Speaker]) -> list[tuple[int, int]]:
    """Occurrences of the speaker's full name as a token span."""
    if speaker is None:
        return []
    name = tuple(t for t in (normalize_token(t) for t in speaker.full_name.split()) if t)
    if not name:
        return []
    spans = []
    k = len(name)
    for i in range(len(norm) - k + 1):
        if tuple(norm[i : i + k]) == name:
            spans.append((i, i + k))
    return spans


def _dedup(candidates: list[Candidate]) -> list[Candidate]:
    # Registry-backed duplicates win over raw captures at the same name.
    ordered = sorted(candidates, key=lambda c: (c.token_start, c.canonical is None, c.token_end))
    seen: set[str] = set()
    out = []
    for cand in ordered:
        key = cand.normalized
        if key in seen:
            continue
        seen.add(key)
        out.append(cand)
    return out


def intro_window(
    comment: str,
    tagged_entity_spans: Sequence[tuple[int, int]] = (),
    *,
    window_words: int = WINDOW_WORDS,
) -> tuple[int, int]:
    """Token span (0, end) holding the first ``window_words`` countable words.

    A left-to-right sweep counts words; punctuation-only tokens never
    count, and an entity span reached while the window is still open is
    skipped whole without counting (so the window extends through any
    entity it touches). The window closes right after the last counted
    word; comments shorter than the budget are returned whole.
    """
    tokens = tokenize(comment)
    n = len(tokens)
    cover_end = [0] * n  # furthest entity-span end covering each position
    for s, e in tagged_entity_spans:
        for k in range(max(s, 0), min(e, n)):
            cover_end[k] = max(cover_end[k], min(e, n))
    count = 0
    end = n
    k = 0
    while k < n:
        if cover_end[k] > k:
            k = cover_end[k]
            continue
        if normalize_token(tokens[k]):
            count += 1
            if count == window_words:
                end = k + 1
                break
        k += 1
    return (0, end)


def extract_recall(
    comment: str,
    speaker: Optional[Speaker],
    registry: OrgRegistry,
    *,
    cue_phrases: Optional[Sequence[str]] = None,
) -> list[Candidate]:
    """Over-generating extractor.

    Candidates come from three places: name runs following a cue phrase,
    the comment-initial capitalized run (the commenter's self-introduction,
    which mimics the name-as-organization error mode the cascade must
    clean), and a registry scan over the whole comment. A cue capture whose
    capitalized tokens are fully covered by registry matches decomposes
    into those matches instead of surviving as one merged span.
    """
    tokens = tokenize(comment)
    norm = [normalize_token(t) for t in tokens]
    cues = _normalize_cues(DEFAULT_CUE_PHRASES if cue_phrases is None else cue_phrases)
    scan = registry_scan(comment, registry)

    candidates: list[Candidate] = []
    starts = {0}
    starts.update(end for _s, end in _cue_occurrences(norm, cues))
    for start in sorted(starts):
        run = _capture_run(tokens, norm, start)
        if run is None:
            continue
        s, e = run
        inner = [(ms, me) for _name, (ms, me) in scan if s <= ms and me <= e]
        covered: set[int] = set()
        for ms, me in inner:
            covered.update(range(ms, me))
        content = {k for k in range(s, e) if _is_content_token(tokens[k])}
        if inner and content <= covered:
            continue  # fully decomposed by the registry matches below
        surface = _clean_surface(tokens[s:e])
        candidates.append(
            Candidate(surface, s, e, SOURCE_RECALL, canonical=registry.canonical(surface))
        )
    for name, (ms, me) in scan:
        candidates.append(Candidate(_clean_surface(tokens[ms:me]), ms, me, SOURCE_REGISTRY, name))
    return _dedup(candidates)


def extract_precision(
    comment: str,
    speaker: Optional[Speaker],
    registry: OrgRegistry,
    *,
    cue_phrases: Optional[Sequence[str]] = None,
    window_words: int = WINDOW_WORDS,
    cue_window: int = CUE_WINDOW,
) -> list[Candidate]:
    """Under-generating extractor: registry matches only, restricted to the
    introduction window, with a cue phrase ending within ``cue_window``
    tokens before the match."""
    tokens = tokenize(comment)
    norm = [normalize_token(t) for t in tokens]
    cues = _normalize_cues(DEFAULT_CUE_PHRASES if cue_phrases is None else cue_phrases)
    scan = registry_scan(comment, registry)
    entity_spans = _speaker_name_spans(norm, speaker) + [span for _name, span in scan]
    window_end = intro_window(comment, entity_spans, window_words=window_words)[1]
    cue_ends = [e for _s, e in _cue_occurrences(norm, cues)]
    out = []
    for name, (ms, me) in scan:
        if ms >= window_end:
            continue
        if not any(0 <= ms - e < cue_window for e in cue_ends):
            continue
        out.append(Candidate(_clean_surface(tokens[ms:me]), ms, me, SOURCE_PRECISION, name))
    return _dedup(out)


def template_retest(
    candidate_surface: str,
    registry: OrgRegistry,
    *,
    stop_verbs: Optional[frozenset] = None,
    cue_phrases: Optional[Sequence[str]] = None,
) -> bool:
    """Re-test a candidate inside an ideal affiliation sentence.

    A registry-backed surface must survive the precision extractor when
    substituted into the template. Anything else gets a shape test: at
    least one capitalized content token and no stop verb.
    """
    verbs = DEFAULT_STOP_VERBS if stop_verbs is None else stop_verbs
    canonical = registry.canonical(candidate_surface)
    if canonical is not None:
        probe = RETEST_TEMPLATE.format(candidate_surface)
        hits = extract_precision(probe, None, registry, cue_phrases=cue_phrases)
        return any(c.canonical == canonical for c in hits)
    tokens = tokenize(candidate_surface)
    if not any(_is_content_token(t) for t in tokens):
        return False
    return all(normalize_token(t) not in verbs for t in tokens)


def combine(
    recall: Sequence[Candidate],
    precision: Sequence[Candidate],
    comment: str,
    speaker: Optional[Speaker],
    registry: OrgRegistry,
    *,
    window_words: int = WINDOW_WORDS,
    stop_verbs: Optional[frozenset] = None,
    cue_phrases: Optional[Sequence[str]] = None,
) -> AffiliationResult:
    """Merge the two extractors' candidates.

    Names present in both lists (matched on normalized form) are accepted
    outright. Every other candidate passes the cascade in order
    (introduction window, speaker-name equality, template retest, length
    floor, blocklists) and is rejected with the first rule it fails.
    Accepted names are deduplicated by normalized form and keep comment
    order.
    """
    tokens = tokenize(comment)
    norm = [normalize_token(t) for t in tokens]
    all_candidates = list(recall) + list(precision)
    recall_norms = {c.normalized for c in recall}
    precision_norms = {c.normalized for c in precision}
    both = recall_norms & precision_norms

    entity_spans = _speaker_name_spans(norm, speaker)
    entity_spans += [(c.token_start, c.token_end) for c in all_candidates if c.canonical is not None]
    window_end = intro_window(comment, entity_spans, window_words=window_words)[1]

    speaker_norms: set[str] = set()
    if speaker is not None:
        speaker_norms = {normalize_org_name(speaker.full_name), normalize_org_name(speaker.last_name)}
        speaker_norms.discard("")

    first_position: dict[str, int] = {}
    for cand in all_candidates:
        key = cand.normalized
        if key not in first_position or cand.token_start < first_position[key]:
            first_position[key] = cand.token_start

    accepted: list[tuple[int, str]] = []
    rejected: list[tuple[Candidate, str]] = []
    seen: set[str] = set()
    for cand in sorted(all_candidates, key=lambda c: (c.token_start, c.token_end, c.source)):
        key = cand.normalized
        if key in seen:
            continue
        if key in both:
            seen.add(key)
            accepted.append((first_position[key], cand.display_name))
            continue
        if cand.token_start >= window_end:
            rejected.append((cand, REJECT_OUTSIDE_WINDOW))
            continue
        if key in speaker_norms:
            rejected.append((cand, REJECT_SPEAKER_NAME))
            continue
        if not template_retest(cand.surface, registry, stop_verbs=stop_verbs, cue_phrases=cue_phrases):
            rejected.append((cand, REJECT_TEMPLATE))
            continue
        if len(key) <= 2:
            rejected.append((cand, REJECT_TOO_SHORT))
            continue
        if is_blocklisted(cand.display_name, registry):
            rejected.append((cand, REJECT_BLOCKLISTED))
            continue
        seen.add(key)
        accepted.append((cand.token_start, cand.display_name))
    accepted.sort()
    return AffiliationResult(tuple(name for _pos, name in accepted), tuple(rejected))


def extract_affiliations(
    comment: str,
    speaker: Optional[Speaker],
    registry: OrgRegistry,
    *,
    cue_phrases: Optional[Sequence[str]] = None,
    window_words: int = WINDOW_WORDS,
    cue_window: int = CUE_WINDOW,
    stop_verbs: Optional[frozenset] = None,
) -> AffiliationResult:
    """Run both extractors and combine them: the full pipeline for one comment."""
    recall = extract_recall(comment, speaker, registry, cue_phrases=cue_phrases)
    precision = extract_precision(
        comment, speaker, registry,
        cue_phrases=cue_phrases, window_words=window_words, cue_window=cue_window,
    )
    return combine(
        recall, precision, comment, speaker, registry,
        window_words=window_words, stop_verbs=stop_verbs, cue_phrases=cue_phrases,
    )
