"""Tokenization and normalization shared by every stage of the pipeline.

Word counts are whitespace-token counts that ignore tokens made purely of
punctuation, since transcripts carry standalone punctuation marks and the
word-based thresholds downstream should not count them.
"""

from __future__ import annotations

import re

_PUNCT = re.compile(r"[^\w\s]+", re.UNICODE)
_SPACE = re.compile(r"\s+")


def tokenize(text: str) -> list[str]:
    """Split on whitespace, leaving punctuation attached to its token."""
    return text.split()


def normalize_token(token: str) -> str:
    """Lowercase and drop punctuation characters ("A.C.L.U." -> "aclu")."""
    return _PUNCT.sub("", token).lower()


def normalize_text(text: str) -> str:
    """Lowercase, strip punctuation, collapse internal whitespace, trim."""
    return _SPACE.sub(" ", _PUNCT.sub("", text).lower()).strip()


def is_word(token: str) -> bool:
    """True unless the token is nothing but punctuation."""
    return normalize_token(token) != ""


def word_count(text: str) -> int:
    """Number of whitespace tokens that are not purely punctuation."""
    return sum(1 for tok in text.split() if is_word(tok))


def norm_tokens_with_map(tokens: list[str]) -> tuple[list[str], list[int]]:
    """Normalized non-empty tokens plus a map back to original positions.

    Punctuation-only tokens vanish; the map lets match spans over the
    normalized stream be reported in original token offsets.
    """
    out: list[str] = []
    back: list[int] = []
    for i, tok in enumerate(tokens):
        norm = normalize_token(tok)
        if norm:
            out.append(norm)
            back.append(i)
    return out, back


def is_capitalized(token: str) -> bool:
    """True if the token's first alphabetic character is uppercase."""
    for ch in token:
        if ch.isalpha():
            return ch.isupper()
    return False
