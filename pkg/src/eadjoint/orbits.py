"""Stabilizers, orbit dimensions and fiber reconstruction.

The stabilizer of a point is computed as the exact kernel of the linear
system X B = 0, C X = 0, [X, A] = 0 in the n^2-dimensional matrix space;
the orbit dimension is its codimension.  Over a regular semisimple spectrum
the fiber of the quotient map is reconstructed from its invariant data by a
Vandermonde solve followed by rank-one factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FiberConditionError, ShapeError
from .invariants import Point, evaluate_invariants
from .linalg import (
    RationalMatrix,
    Subspace,
    _canon,
    char_poly,
    discriminant_is_nonzero,
    kernel_subspace,
    rational_from_str,
    rational_to_str,
    vandermonde_solve,
)


@dataclass(frozen=True)
class StabilizerReport:
    """Dimension data of the Lie algebra centralizer of a point."""

    stab_dim: int
    orbit_dim: int
    kernel_basis: Subspace

    def to_json_obj(self):
        return {
            "stab_dim": self.stab_dim,
            "orbit_dim": self.orbit_dim,
            "kernel_basis": self.kernel_basis.basis.to_lists(),
        }


def stabilizer(w: Point) -> StabilizerReport:
    """Solve {X : XB = 0, CX = 0, XA = AX} exactly; report dimensions.

    The group stabilizer of a point under this action has the same dimension
    as this Lie algebra centralizer, so orbit_dim = n^2 - stab_dim.  Every
    kernel basis element is re-substituted into the defining system before
    the report is returned.
    """
    if w.r != 1:
        raise ShapeError("stabilizer is computed for r = 1 points")
    n, p, q = w.n, w.p, w.q
    b, c, a = w.B, w.C, w.A
    rows = []
    # X B = 0
    for i in range(n):
        for jb in range(p):
            row = [0] * (n * n)
            for t in range(n):
                row[i * n + t] = b.entry(t, jb)
            rows.append(row)
    # C X = 0
    for ic in range(q):
        for j in range(n):
            row = [0] * (n * n)
            for t in range(n):
                row[t * n + j] = c.entry(ic, t)
            rows.append(row)
    # X A - A X = 0
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for t in range(n):
                row[i * n + t] += a.entry(t, j)
                row[t * n + j] -= a.entry(i, t)
            rows.append(row)
    system = RationalMatrix.from_rows(rows) if rows else RationalMatrix.zeros(0, n * n)
    ker = kernel_subspace(system)
    for col in range(ker.dim):
        x = RationalMatrix(n, n, ker.basis.col_list(col))
        if not (
            (x @ b).is_zero() and (c @ x).is_zero() and (x @ a - a @ x).is_zero()
        ):
            raise AssertionError("stabilizer kernel failed re-substitution")
    return StabilizerReport(ker.dim, n * n - ker.dim, ker)


def is_regular_semisimple(a: RationalMatrix) -> bool:
    """Distinct eigenvalues, detected root-free through the discriminant."""
    if not a.is_square:
        raise ShapeError("regular semisimplicity is a square-matrix property")
    return discriminant_is_nonzero(char_poly(a))


# ---------------------------------------------------------------------------
# fiber reconstruction


@dataclass(frozen=True)
class ReconstructionData:
    """Spectrum, rank <= 1 summands and their chosen factorizations."""

    t: tuple
    X: tuple
    factors: tuple  # pairs (c_k: q x 1, b_k: 1 x p) with X_k = c_k @ b_k


def rank_one_factor(x: RationalMatrix):
    """Deterministic factorization x = c @ b of a rank <= 1 matrix.

    c is the first nonzero column of x, b is scaled to match; the zero
    matrix factors as (0, 0).  Raises if x has rank two or more.
    """
    q, p = x.rows, x.cols
    pivot_col = -1
    for j in range(p):
        if any(x.entry(i, j) for i in range(q)):
            pivot_col = j
            break
    if pivot_col < 0:
        return RationalMatrix.zeros(q, 1), RationalMatrix.zeros(1, p)
    c = RationalMatrix.column(x.col_list(pivot_col))
    pivot_row = next(i for i in range(q) if x.entry(i, pivot_col))
    pv = x.entry(pivot_row, pivot_col)
    b = RationalMatrix.row(
        [_canon(Fraction(x.entry(pivot_row, j)) / pv) for j in range(p)]
    )
    if c @ b != x:
        raise FiberConditionError("matrix has rank >= 2")
    return c, b


def fiber_reconstruction_data(t, gamma, strict_rank1=False) -> ReconstructionData:
    """Solve the Vandermonde system and factor every summand."""
    xs = vandermonde_solve(t, list(gamma))
    factors = []
    for x in xs:
        c, b = rank_one_factor(x)
        if strict_rank1 and x.is_zero():
            raise FiberConditionError(
                "rank-one condition violated: zero summand under strict mode"
            )
        factors.append((c, b))
    return ReconstructionData(tuple(_canon(v) for v in t), tuple(xs), tuple(factors))


def reconstruct_fiber_point(t, gamma, strict_rank1=False) -> Point:
    """Build (B, C, diag(t)) whose invariants are the given (power sums; gamma).

    The k-th row of B and the k-th column of C come from factoring the k-th
    Vandermonde solve summand as c_k b_k.  By default a zero summand is
    accepted with factors (0, 0); ``strict_rank1`` restores the literal
    rank-one requirement.
    """
    data = fiber_reconstruction_data(t, gamma, strict_rank1=strict_rank1)
    n = len(data.t)
    if n == 0:
        raise ShapeError("reconstruction needs a nonempty spectrum")
    q, p = data.X[0].shape
    b_rows = [data.factors[k][1].row_list(0) for k in range(n)]
    c_cols = [data.factors[k][0].col_list(0) for k in range(n)]
    return Point(
        RationalMatrix.from_rows(b_rows),
        RationalMatrix.from_rows([[c_cols[k][i] for k in range(n)] for i in range(q)]),
        (RationalMatrix.diagonal(data.t),),
    )


def reconstruction_input_from_json(obj):
    """Parse {"t": [...], "gamma": [matrix, ...]}."""
    try:
        t = [rational_from_str(s) for s in obj["t"]]
        gamma = [RationalMatrix.from_lists(g) for g in obj["gamma"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed reconstruction input: {exc}") from exc
    return t, gamma


def reconstruction_input_to_json(t, gamma):
    return {
        "t": [rational_to_str(v) for v in t],
        "gamma": [g.to_lists() for g in gamma],
    }


def same_closed_orbit(w1: Point, w2: Point) -> bool:
    """Invariant-equality test; separates points with closed orbits.

    The caller asserts both orbits are closed (reconstructed fiber points
    qualify); this comparison itself only checks exact equality of the
    invariant vectors.
    """
    if (w1.n, w1.p, w1.q) != (w2.n, w2.p, w2.q):
        raise ShapeError("points live in different representation spaces")
    return evaluate_invariants(w1) == evaluate_invariants(w2)
