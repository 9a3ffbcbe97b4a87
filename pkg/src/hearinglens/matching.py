"""Token-sequence matching against a fixed phrase set.

The scan is the hot loop of the whole pipeline: a registry of thousands of
organization names gets matched against every comment, and the same
machinery drives stance phrase counting and roll-call name spotting. It
therefore ships as a compiled extension (``hearinglens._scanner``) with a
pure-Python fallback selected at import time. Set ``HEARINGLENS_PURE=1``
to force the fallback; ``benchmarks/bench_scan.py`` compares the two.
"""

from __future__ import annotations

import os
from array import array
from typing import Iterable, Sequence

from hearinglens._scan_py import scan_ids as scan_ids_py

try:
    from hearinglens._scanner import scan_ids as scan_ids_native
except ImportError:  # extension not built; run on the pure kernel
    scan_ids_native = None

NATIVE_AVAILABLE = scan_ids_native is not None
USING_NATIVE = NATIVE_AVAILABLE and not os.environ.get("HEARINGLENS_PURE")

DEFAULT_KERNEL = scan_ids_native if USING_NATIVE else scan_ids_py


class TokenSetMatcher:
    """Leftmost-longest, non-overlapping scan for a set of token sequences.

    Phrases are ``(tokens, payload)`` pairs; tokens must already be
    normalized the same way the scanned token stream will be. When one
    phrase is a prefix of another, the longest match starting at a position
    wins and consumes its tokens.
    """

    def __init__(self, phrases: Iterable[tuple[Sequence[str], int]]):
        vocab: dict[str, int] = {}
        terminals = [-1]
        children: list[dict[int, int]] = [{}]
        count = 0
        for tokens, payload in phrases:
            if not tokens:
                raise ValueError("cannot match an empty phrase")
            if payload < 0:
                raise ValueError("payload ids must be >= 0")
            node = 0
            for tok in tokens:
                tid = vocab.setdefault(tok, len(vocab))
                nxt = children[node].get(tid)
                if nxt is None:
                    nxt = len(terminals)
                    terminals.append(-1)
                    children.append({})
                    children[node][tid] = nxt
                node = nxt
            if terminals[node] < 0:  # first definition wins on duplicates
                terminals[node] = payload
            count += 1
        starts = array("i", [0])
        edge_tokens = array("i")
        edge_children = array("i")
        for node_children in children:
            for tid in sorted(node_children):
                edge_tokens.append(tid)
                edge_children.append(node_children[tid])
            starts.append(len(edge_tokens))
        self._vocab = vocab
        self._starts = starts
        self._edge_tokens = edge_tokens
        self._edge_children = edge_children
        self._terminals = array("i", terminals)
        self.n_phrases = count

    def scan(self, tokens: Sequence[str], kernel=None) -> list[tuple[int, int, int]]:
        """All leftmost-longest matches as (start, end, payload) triples."""
        get = self._vocab.get
        ids = array("i", [get(t, -1) for t in tokens])
        fn = DEFAULT_KERNEL if kernel is None else kernel
        return fn(ids, self._starts, self._edge_tokens, self._edge_children, self._terminals)
