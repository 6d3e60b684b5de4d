"""Time the word problem and order search on each available walk kernel.

Run with: python3 benchmarks/bench_walk.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from cftr import _kernel
from cftr.core import random_reduced_word
from cftr.examples import example_system
from cftr.group import Ensemble, is_identity, order

CASES = ("omega", "antenna", "comb", "torsion")


def _words(ens: Ensemble, n: int, length: int, seed: int) -> list[tuple[str, ...]]:
    rng = random.Random(seed)
    return [random_reduced_word(ens.alphabet, length, rng) for _ in range(n)]


def bench(impl, ens: Ensemble, words, repeat: int) -> tuple[float, float]:
    best_wp = best_ord = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        wp = [bool(is_identity(ens, w, impl=impl)) for w in words]
        t1 = time.perf_counter()
        od = [type(order(ens, w, max_exp=64, impl=impl)).__name__ for w in words[:20]]
        t2 = time.perf_counter()
        best_wp, best_ord = min(best_wp, t1 - t0), min(best_ord, t2 - t1)
    bench.last = (wp, od)
    return best_wp, best_ord


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--length", type=int, default=12)
    args = ap.parse_args()
    impls = _kernel.backends()
    print(f"default backend: {_kernel.BACKEND}")
    print(f"{'example':<10}{'backend':<9}{'wp (s)':>10}{'order (s)':>11}")
    for name in CASES:
        ens = Ensemble([example_system(name)])
        words = _words(ens, args.words, args.length, seed=1)
        results = {}
        for label, impl in impls.items():
            wp, od = bench(impl, ens, words, args.repeat)
            results[label] = bench.last
            print(f"{name:<10}{label:<9}{wp:>10.4f}{od:>11.4f}")
        answers = list(results.values())
        assert all(a == answers[0] for a in answers), f"backends disagree on {name}"


if __name__ == "__main__":
    main()
