#!/usr/bin/env python3
"""Benchmark the compiled scan kernel against the pure-Python fallback.

Builds a production-scale synthetic registry, scans a synthetic comment
corpus with both kernels, checks the outputs match, and prints timings.

    python benchmarks/bench_scan.py --registry-size 12829 --comments 2000
"""

from __future__ import annotations

import argparse
import time

from hearinglens import matching
from hearinglens.gazetteer import OrgRegistry
from hearinglens.synthetic import synth_affiliation_corpus, synth_registry_names
from hearinglens.textutil import norm_tokens_with_map, tokenize


def run(kernel, matcher, token_lists, repeats):
    best = float("inf")
    hits = 0
    for _ in range(repeats):
        start = time.perf_counter()
        hits = 0
        for tokens in token_lists:
            hits += len(matcher.scan(tokens, kernel=kernel))
        best = min(best, time.perf_counter() - start)
    return best, hits


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--registry-size", type=int, default=12829)
    parser.add_argument("--comments", type=int, default=2000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    names = synth_registry_names(args.registry_size, seed=args.seed)
    registry = OrgRegistry(names)
    corpus = synth_affiliation_corpus(names, args.comments, seed=args.seed + 1)
    token_lists = [norm_tokens_with_map(tokenize(rec.text))[0] for rec in corpus]
    total_tokens = sum(len(t) for t in token_lists)
    matcher = registry._matcher

    print(f"registry entries : {len(registry)}")
    print(f"comments         : {len(token_lists)} ({total_tokens} tokens)")
    print(f"native available : {matching.NATIVE_AVAILABLE}")

    py_time, py_hits = run(matching.scan_ids_py, matcher, token_lists, args.repeats)
    rate = total_tokens / py_time / 1e6
    print(f"pure python      : {py_time * 1e3:9.2f} ms  ({rate:6.2f} M tokens/s, {py_hits} matches)")

    if matching.NATIVE_AVAILABLE:
        nat_time, nat_hits = run(matching.scan_ids_native, matcher, token_lists, args.repeats)
        if nat_hits != py_hits:
            raise SystemExit("kernel mismatch: outputs differ")
        for tokens in token_lists[:50]:
            if matcher.scan(tokens, kernel=matching.scan_ids_py) != matcher.scan(
                tokens, kernel=matching.scan_ids_native
            ):
                raise SystemExit("kernel mismatch: outputs differ")
        rate = total_tokens / nat_time / 1e6
        print(f"compiled         : {nat_time * 1e3:9.2f} ms  ({rate:6.2f} M tokens/s, {nat_hits} matches)")
        print(f"speedup          : {py_time / nat_time:9.2f}x")


if __name__ == "__main__":
    main()
