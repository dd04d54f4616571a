#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twin.

Times the three primitive kernels on representative inputs plus two
end-to-end workloads (Jacobian ranks and null-cone classification with
certificates), once per backend, and prints a speedup table.  Results are
identical across backends by construction; only the wall time differs.

Run:  python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from eadjoint import _kernels
from eadjoint.invariants import jacobian_rank
from eadjoint.nullcone import component_certificates, sample_component
from eadjoint.sampling import as_rng, random_point


def _int_rows(rng, m, n, bound=40):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def bench_mat_mul_int(rng):
    n = 12
    a = [rng.randint(-9, 9) for _ in range(n * n)]
    b = [rng.randint(-9, 9) for _ in range(n * n)]
    for _ in range(600):
        _kernels.mat_mul(a, n, n, b, n)


def bench_mat_mul_fractions(rng):
    n = 12
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(n * n)]
    b = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(n * n)]
    for _ in range(60):
        _kernels.mat_mul(a, n, n, b, n)


def bench_rank_int(rng):
    rows = _int_rows(rng, 40, 40)
    for _ in range(25):
        _kernels.rank_int(rows, 40)


def bench_rre_int(rng):
    rows = _int_rows(rng, 30, 45)
    for _ in range(25):
        _kernels.rre_int(rows, 45)


def bench_jacobian(rng):
    for _ in range(12):
        w = random_point(rng, 4, 3, 3)
        jacobian_rank(w)


def bench_classify_certify(rng):
    for _ in range(40):
        w = sample_component(4, 2, 2, rng.randint(0, 4), rng.randrange(2**32))
        component_certificates(w)


WORKLOADS = [
    ("mat_mul 12x12 ints x600", bench_mat_mul_int),
    ("mat_mul 12x12 fractions x60", bench_mat_mul_fractions),
    ("rank_int 40x40 x25", bench_rank_int),
    ("rre_int 30x45 x25", bench_rre_int),
    ("jacobian_rank n=4 p=q=3 x12", bench_jacobian),
    ("classify+certify n=4 x40", bench_classify_certify),
]


def run(repeat):
    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; timing the pure backend only")
    results = {}
    for backend in backends:
        _kernels.use_backend(backend)
        for name, fn in WORKLOADS:
            best = float("inf")
            for _ in range(repeat):
                rng = as_rng(12345)
                t0 = time.perf_counter()
                fn(rng)
                best = min(best, time.perf_counter() - t0)
            results[(backend, name)] = best
    _kernels.use_backend(backends[-1])

    width = max(len(name) for name, _ in WORKLOADS)
    header = f"{'workload':<{width}}  {'pure':>9}"
    if "compiled" in backends:
        header += f"  {'compiled':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for name, _ in WORKLOADS:
        line = f"{name:<{width}}  {results[('pure', name)] * 1e3:>7.1f}ms"
        if "compiled" in backends:
            c = results[("compiled", name)]
            line += (
                f"  {c * 1e3:>7.1f}ms"
                f"  {results[('pure', name)] / c:>6.2f}x"
            )
        print(line)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    run(parser.parse_args().repeat)
