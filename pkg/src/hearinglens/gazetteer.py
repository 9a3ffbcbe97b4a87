"""Registry of known organizations plus the blocklists used downstream.

Matching is exact on normalized forms: lowercase, punctuation stripped,
whitespace collapsed. No fuzzy matching: the acceptance rules downstream
are exact-match rules and fuzziness would inflate false positives.
"""

from __future__ import annotations

import logging
from typing import IO, Iterable, Optional

from hearinglens.matching import TokenSetMatcher
from hearinglens.textutil import norm_tokens_with_map, normalize_text, tokenize

log = logging.getLogger(__name__)

# Normalized forms shorter than this are junk matches and never enter the
# registry or the accepted output.
MIN_NAME_CHARS = 3

DEFAULT_PHRASE_BLOCKLIST = ("board member",)


def normalize_org_name(text: str) -> str:
    """Lowercase, strip punctuation, collapse internal whitespace, trim."""
    return normalize_text(text)


class OrgRegistry:
    """Known organization names with normalized exact matching.

    ``entries`` keeps canonical names in load order; ``normalized_index``
    maps each normalized form to its canonical name (duplicates collapse to
    the first occurrence). The city/county and phrase blocklists back
    :func:`is_blocklisted`; the phrase blocklist always contains
    "board member".
    """

    def __init__(
        self,
        entries: Iterable[str],
        city_county_blocklist: Iterable[str] = (),
        phrase_blocklist: Iterable[str] = DEFAULT_PHRASE_BLOCKLIST,
    ):
        canonical: list[str] = []
        index: dict[str, str] = {}
        rejected: list[tuple[str, str]] = []
        phrases = []
        for name in entries:
            norm = normalize_org_name(name)
            if len(norm) < MIN_NAME_CHARS:
                rejected.append((name, f"normalized form {norm!r} shorter than {MIN_NAME_CHARS} characters"))
                continue
            if norm in index:
                continue
            index[norm] = name
            phrases.append((tuple(norm.split()), len(canonical)))
            canonical.append(name)
        self.entries: tuple[str, ...] = tuple(canonical)
        self.normalized_index: dict[str, str] = index
        self.rejected: tuple[tuple[str, str], ...] = tuple(rejected)
        self.city_county_blocklist = frozenset(
            normalize_org_name(c) for c in city_county_blocklist if normalize_org_name(c)
        )
        self.phrase_blocklist = (
            frozenset(normalize_org_name(p) for p in phrase_blocklist if normalize_org_name(p))
            | frozenset(DEFAULT_PHRASE_BLOCKLIST)
        )
        self._matcher = TokenSetMatcher(phrases)

    def __len__(self) -> int:
        return len(self.entries)

    def canonical(self, name: str) -> Optional[str]:
        """Canonical name for any text whose normalized form is an entry."""
        return self.normalized_index.get(normalize_org_name(name))


def read_name_file(stream: IO[str]) -> list[str]:
    """One name per line; blank lines and '#' comment lines are skipped."""
    names = []
    for line in stream:
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(line)
    return names


def load_registry(orgs_file, places_file=None) -> OrgRegistry:
    """Build a registry from one-name-per-line UTF-8 files.

    Names whose normalized form is shorter than three characters are
    rejected; the rejects are logged and kept on ``registry.rejected``.
    """
    with open(orgs_file, encoding="utf-8") as fh:
        names = read_name_file(fh)
    places: list[str] = []
    if places_file is not None:
        with open(places_file, encoding="utf-8") as fh:
            places = read_name_file(fh)
    registry = OrgRegistry(names, places)
    for name, why in registry.rejected:
        log.warning("rejected registry entry %r: %s", name, why)
    return registry


def registry_scan(text: str, registry: OrgRegistry) -> list[tuple[str, tuple[int, int]]]:
    """All non-overlapping longest registry matches, left to right.

    Spans are half-open ``(start, end)`` offsets into the whitespace tokens
    of the original text; punctuation-only tokens inside a span are
    absorbed by it.
    """
    tokens = tokenize(text)
    norm, back = norm_tokens_with_map(tokens)
    out = []
    for start, end, payload in registry._matcher.scan(norm):
        out.append((registry.entries[payload], (back[start], back[end - 1] + 1)))
    return out


def is_blocklisted(name: str, registry: OrgRegistry) -> bool:
    """True for city/county names, blocked phrases, and names of <= 2 chars."""
    norm = normalize_org_name(name)
    return (
        len(norm) <= 2
        or norm in registry.city_county_blocklist
        or norm in registry.phrase_blocklist
    )
