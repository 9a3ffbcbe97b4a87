"""Pure-Python scan kernel, the fallback for the compiled extension."""

from __future__ import annotations


def scan_ids(ids, starts, edge_tokens, edge_children, terminals):
    """Leftmost-longest non-overlapping matches over interned token ids.

    The trie is flattened CSR-style: node ``k`` owns the edges
    ``edge_tokens[starts[k]:starts[k+1]]`` sorted by token id, with
    ``edge_children`` giving the target nodes. ``terminals[k]`` is the
    payload of a phrase ending at node ``k``, or -1. Returns a list of
    ``(start, end, payload)`` triples over positions in ``ids``.
    """
    n = len(ids)
    out = []
    i = 0
    while i < n:
        node = 0
        best_end = -1
        best_payload = -1
        j = i
        while j < n:
            t = ids[j]
            if t < 0:
                break
            lo = starts[node]
            hi = starts[node + 1]
            child = -1
            while lo < hi:
                mid = (lo + hi) >> 1
                tok = edge_tokens[mid]
                if tok < t:
                    lo = mid + 1
                elif tok > t:
                    hi = mid
                else:
                    child = edge_children[mid]
                    break
            if child < 0:
                break
            node = child
            j += 1
            if terminals[node] >= 0:
                best_end = j
                best_payload = terminals[node]
        if best_end >= 0:
            out.append((i, best_end, best_payload))
            i = best_end
        else:
            i += 1
    return out
