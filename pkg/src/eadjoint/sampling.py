"""Seeded random generators for points, group elements and fiber data.

Every sampler takes an explicit ``random.Random`` (or a seed) and draws
integer entries uniformly from [-bound, bound] with the default bound 10, so
all randomized suites are deterministic given their seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .invariants import Point
from .linalg import RationalMatrix, char_poly, discriminant_is_nonzero

DEFAULT_BOUND = 10


def as_rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def random_matrix(rng, rows, cols, bound=DEFAULT_BOUND) -> RationalMatrix:
    return RationalMatrix(
        rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)],
        validate=False,
    )


def random_nonzero_int(rng, bound=DEFAULT_BOUND) -> int:
    v = rng.randint(1, bound)
    return -v if rng.randint(0, 1) else v


def random_full_support_matrix(rng, rows, cols, bound=DEFAULT_BOUND) -> RationalMatrix:
    return RationalMatrix(
        rows, cols, [random_nonzero_int(rng, bound) for _ in range(rows * cols)],
        validate=False,
    )


def random_invertible(rng, n, bound=DEFAULT_BOUND) -> RationalMatrix:
    while True:
        m = random_matrix(rng, n, n, bound)
        if m.rank() == n:
            return m


def random_point(rng, n, p, q, r=1, bound=DEFAULT_BOUND) -> Point:
    return Point(
        random_matrix(rng, n, p, bound),
        random_matrix(rng, q, n, bound),
        tuple(random_matrix(rng, n, n, bound) for _ in range(r)),
    )


def random_regular_semisimple(rng, n, bound=DEFAULT_BOUND) -> RationalMatrix:
    """Random integer matrix with squarefree characteristic polynomial."""
    while True:
        a = random_matrix(rng, n, n, bound)
        if discriminant_is_nonzero(char_poly(a)):
            return a


def random_distinct_rationals(rng, n, bound=DEFAULT_BOUND, denominators=(1, 2, 3)):
    """n pairwise distinct rationals with small denominators."""
    seen = set()
    out = []
    while len(out) < n:
        v = Fraction(rng.randint(-bound, bound), rng.choice(denominators))
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def random_rank_one_factors(rng, q, p, bound=DEFAULT_BOUND, allow_zero=False):
    """A pair (c, b) with c of shape q x 1 and b of shape 1 x p.

    With ``allow_zero`` the pair is occasionally (0, 0), producing the rank
    zero degeneration of the fiber data.
    """
    if allow_zero and rng.random() < 0.15:
        return RationalMatrix.zeros(q, 1), RationalMatrix.zeros(1, p)
    return (
        random_full_support_matrix(rng, q, 1, bound),
        random_full_support_matrix(rng, 1, p, bound),
    )
