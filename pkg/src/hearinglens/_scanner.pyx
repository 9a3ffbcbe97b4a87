# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled leftmost-longest scan over interned token ids.

Mirrors hearinglens._scan_py.scan_ids exactly; both operate on the same
flattened trie arrays (see hearinglens.matching.TokenSetMatcher).
"""


def scan_ids(const int[:] ids, const int[:] starts, const int[:] edge_tokens,
             const int[:] edge_children, const int[:] terminals):
    cdef Py_ssize_t n = ids.shape[0]
    cdef Py_ssize_t i = 0, j, best_end, lo, hi, mid
    cdef int node, child, t, tok, best_payload
    out = []
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
