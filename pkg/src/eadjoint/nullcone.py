"""Null-cone structure: weights, components, membership and certificates.

A point lies in the null cone exactly when all invariants vanish.  The cone
splits into n + 1 irreducible components C_0..C_n, where C_k is swept out by
the group from the coordinate subspace U_k (B supported in the first k rows,
C in the last n - k columns, adjoint part strictly upper triangular).

Component membership is decided by two canonical invariant subspaces of a
null point: S, the smallest A-invariant subspace containing the column space
of B, and K, the largest A-invariant subspace inside ker C.  Then the point
belongs to C_k if and only if dim S <= k <= dim K: any adapted flag squeezes
an invariant F of dimension k between S and K, and conversely a nilpotent
map admits invariant subspaces of every dimension between dim S and dim K.
This criterion is validated against the component sampler by the
verification suites before anything downstream relies on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotAMemberError, NotInNullConeError, ShapeError
from .invariants import Point, evaluate_invariants, group_action
from .linalg import (
    RationalMatrix,
    Subspace,
    column_space,
    integer_rescaled,
    kernel_subspace,
)
from .sampling import (
    DEFAULT_BOUND,
    as_rng,
    random_invertible,
    random_nonzero_int,
)

# ---------------------------------------------------------------------------
# weights of the representation


@dataclass(frozen=True)
class Weight:
    """A diagonal-torus character in epsilon coordinates, with multiplicity."""

    coeffs: tuple
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


@dataclass(frozen=True)
class OnePSG:
    """An integer cocharacter of the diagonal torus."""

    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(v) for v in self.lam))

    def pairing(self, coeffs) -> int:
        return sum(l * c for l, c in zip(self.lam, coeffs))


def weights_of_W(n, p, q, r=1):
    """All torus weights of the representation space, with multiplicities.

    Zero occurs with multiplicity n*r (each adjoint copy contributes its
    diagonal), each root e_i - e_j once, each e_i with multiplicity p and
    each -e_i with multiplicity q.  For r = 1 the multiplicity total is the
    ambient dimension n^2 + np + nq.
    """
    if n < 1 or p < 1 or q < 1 or r < 1:
        raise ShapeError("n, p, q, r must be positive")
    out = [Weight((0,) * n, n * r)]
    for i in range(n):
        for j in range(n):
            if i != j:
                coeffs = [0] * n
                coeffs[i] = 1
                coeffs[j] = -1
                out.append(Weight(tuple(coeffs), 1))
    for i in range(n):
        coeffs = [0] * n
        coeffs[i] = 1
        out.append(Weight(tuple(coeffs), p))
    for i in range(n):
        coeffs = [0] * n
        coeffs[i] = -1
        out.append(Weight(tuple(coeffs), q))
    return out


def x_k_weight_set(n, k) -> frozenset:
    """The maximal unstable weight set: positive roots, e_1..e_k, -e_{k+1..n}."""
    weights = set()
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = [0] * n
            coeffs[i] = 1
            coeffs[j] = -1
            weights.add(tuple(coeffs))
    for i in range(k):
        coeffs = [0] * n
        coeffs[i] = 1
        weights.add(tuple(coeffs))
    for j in range(k, n):
        coeffs = [0] * n
        coeffs[j] = -1
        weights.add(tuple(coeffs))
    return frozenset(weights)


@dataclass(frozen=True)
class UnstableSubset:
    """A maximal unstable class, recognized as the k-th rung of the ladder."""

    k: int
    weights: frozenset  # coefficient tuples


@dataclass(frozen=True)
class UnstableCoordinates:
    """Coordinates of the subspace destabilized by a cocharacter.

    Rows of B, columns of C and entries of A whose weight pairs strictly
    positively with the cocharacter (all indices zero-based).
    """

    b_rows: tuple
    c_cols: tuple
    a_entries: tuple


def unstable_subspace(lam: OnePSG, n, p, q) -> UnstableCoordinates:
    """Select the coordinates sent to zero in the limit along the cocharacter."""
    if len(lam.lam) != n:
        raise ShapeError("cocharacter length must be n")
    b_rows = tuple(i for i in range(n) if lam.lam[i] > 0)
    c_cols = tuple(j for j in range(n) if lam.lam[j] < 0)
    a_entries = tuple(
        (i, j)
        for i in range(n)
        for j in range(n)
        if lam.lam[i] > lam.lam[j]
    )
    return UnstableCoordinates(b_rows, c_cols, a_entries)


def _weight_set_of(lam_tuple, candidate_weights) -> frozenset:
    out = []
    for coeffs in candidate_weights:
        s = 0
        for l, c in zip(lam_tuple, coeffs):
            if c:
                s += l * c
        if s > 0:
            out.append(coeffs)
    return frozenset(out)


def _canonical_under_permutations(weight_set, n):
    best = None
    for perm in itertools.permutations(range(n)):
        image = tuple(
            sorted(tuple(coeffs[perm[i]] for i in range(n)) for coeffs in weight_set)
        )
        if best is None or image < best:
            best = image
    return best


def enumerate_maximal_unstable(n, p, q, box=None):
    """Search the cocharacter box for maximal unstable weight subsets.

    Every cocharacter with entries in [-box, box] selects its positive-pairing
    weight subset; subsets maximal under inclusion are collected and
    deduplicated under coordinate permutations.  Only the comparison pattern
    and the signs of a cocharacter matter, so distinct order types are
    evaluated once.  The result must be the ladder X_0..X_n of n + 1 classes;
    anything else raises.
    """
    if box is None:
        box = n
    if box < n:
        raise ValueError("box must be at least n")
    candidates = [w.coeffs for w in weights_of_W(n, p, q) if any(w.coeffs)]
    seen_patterns = set()
    found = set()
    for lam in itertools.product(range(-box, box + 1), repeat=n):
        distinct = sorted(set(lam))
        ranks = {v: i for i, v in enumerate(distinct)}
        pattern = (
            tuple(ranks[v] for v in lam),
            tuple((v > 0) - (v < 0) for v in distinct),
        )
        if pattern in seen_patterns:
            continue
        seen_patterns.add(pattern)
        s = _weight_set_of(lam, candidates)
        if s:
            found.add(s)
    maximal = [s for s in found if not any(s < t for t in found)]
    classes = {}
    for s in maximal:
        classes.setdefault(_canonical_under_permutations(s, n), s)
    expected = {}
    for k in range(n + 1):
        expected[_canonical_under_permutations(x_k_weight_set(n, k), n)] = k
    if set(classes) != set(expected):
        raise AssertionError(
            "maximal unstable classes do not match the expected ladder"
        )
    return [
        UnstableSubset(k, x_k_weight_set(n, k)) for k in sorted(expected.values())
    ]


# ---------------------------------------------------------------------------
# membership


def _integer_rescaled_point(w: Point) -> Point:
    """Rescale B, C and A separately to integers.

    Scaling by positive rationals multiplies every invariant by a nonzero
    factor and fixes all invariant subspaces, so the rescaled point has the
    same null-cone membership and the same component interval.
    """
    return Point(
        integer_rescaled(w.B),
        integer_rescaled(w.C),
        (integer_rescaled(w.A),),
    )


def in_null_cone(w: Point) -> bool:
    """True exactly when every generating invariant vanishes at w."""
    return evaluate_invariants(_integer_rescaled_point(w)).is_zero()


@dataclass(frozen=True)
class ComponentInterval:
    """The components containing a point: {k : w in C_k} = [d_min, d_max]."""

    d_min: int | None
    d_max: int | None
    in_null_cone: bool

    def is_empty(self):
        return not self.in_null_cone

    def members(self):
        if self.is_empty():
            return range(0)
        return range(self.d_min, self.d_max + 1)

    def __contains__(self, k):
        return self.in_null_cone and self.d_min <= k <= self.d_max

    def to_json_obj(self):
        return {
            "in_null_cone": self.in_null_cone,
            "d_min": self.d_min,
            "d_max": self.d_max,
        }


def invariant_hull_of_image(a: RationalMatrix, b: RationalMatrix) -> Subspace:
    """Smallest a-invariant subspace containing the column space of b."""
    s = column_space(b)
    while True:
        grown = s.sum_with(s.image_under(a))
        if grown.dim == s.dim:
            return s
        s = grown


def largest_invariant_in_kernel(a: RationalMatrix, c: RationalMatrix) -> Subspace:
    """Largest a-invariant subspace contained in ker c."""
    k = kernel_subspace(c)
    while True:
        shrunk = k.intersect(k.preimage_under(a))
        if shrunk.dim == k.dim:
            return k
        k = shrunk


def component_interval(w: Point) -> ComponentInterval:
    """Classify a point into null-cone components.

    For a null point the answer is the interval [dim S, dim K] with S the
    A-span of the image of B and K the largest A-invariant subspace of
    ker C; both fixed points are reached in at most n steps.  A point with
    nonzero invariants gets the empty interval.
    """
    if not in_null_cone(w):
        return ComponentInterval(None, None, False)
    wi = _integer_rescaled_point(w)
    s = invariant_hull_of_image(wi.A, wi.B)
    k = largest_invariant_in_kernel(wi.A, wi.C)
    if s.dim > k.dim:
        raise AssertionError("membership interval inverted on a null point")
    return ComponentInterval(s.dim, k.dim, True)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    """A destabilization witness: g moves the point into U_k coordinatewise,
    and the cocharacter contracts every U_k coordinate to zero in the limit."""

    k: int
    g: RationalMatrix
    lam: OnePSG

    def to_json_obj(self):
        return {
            "k": self.k,
            "g": self.g.to_lists(),
            "lambda": list(self.lam.lam),
        }


def standard_destabilizer(n, k) -> OnePSG:
    """The cocharacter (k, ..., 1, -1, ..., -(n-k))."""
    return OnePSG(tuple(range(k, 0, -1)) + tuple(range(-1, k - n - 1, -1)))


def point_in_unstable_subspace(w: Point, k) -> bool:
    """Coordinate-exact membership of w in U_k."""
    n = w.n
    for i in range(k, n):
        if any(w.B.entry(i, j) for j in range(w.p)):
            return False
    for j in range(k):
        if any(w.C.entry(i, j) for i in range(w.q)):
            return False
    a = w.A
    for i in range(n):
        for j in range(i + 1):
            if a.entry(i, j):
                return False
    return True


def check_certificate(w: Point, cert: Certificate) -> bool:
    """Both certificate invariants, bit-exactly."""
    moved = group_action(cert.g, w)
    if not point_in_unstable_subspace(moved, cert.k):
        return False
    return all(
        cert.lam.pairing(coeffs) > 0 for coeffs in x_k_weight_set(w.n, cert.k)
    )


def _first_new_basis_column(target: Subspace, current: Subspace):
    for j in range(target.dim):
        col = target.basis.col_list(j)
        if not current.contains_vector(col):
            return col
    return None


def _build_certificate(a: RationalMatrix, s: Subspace, big: Subspace, k: int) -> Certificate:
    """Flag construction between the hull s and the core big; see below."""
    n = a.rows
    f = s
    while f.dim < k:
        grow = f.preimage_under(a).intersect(big)
        col = _first_new_basis_column(grow, f)
        if col is None:
            raise AssertionError("invariant subspace growth stalled")
        f = f.sum_with(Subspace.from_spanning_columns(RationalMatrix.column(col)))

    flag_vectors = []
    current = Subspace.zero(n)
    # below F: kernels of powers of A intersected with F
    power = RationalMatrix.identity(n)
    while current.dim < k:
        power = power @ a
        layer = kernel_subspace(power).intersect(f)
        while current.dim < layer.dim:
            col = _first_new_basis_column(layer, current)
            flag_vectors.append(col)
            current = current.sum_with(
                Subspace.from_spanning_columns(RationalMatrix.column(col))
            )
    # above F: iterated preimages of F
    layer = f
    while current.dim < n:
        layer = layer.preimage_under(a)
        while current.dim < layer.dim:
            col = _first_new_basis_column(layer, current)
            flag_vectors.append(col)
            current = current.sum_with(
                Subspace.from_spanning_columns(RationalMatrix.column(col))
            )
    basis = RationalMatrix.from_rows(
        [[flag_vectors[j][i] for j in range(n)] for i in range(n)]
    )
    return Certificate(k, basis.inverse(), standard_destabilizer(n, k))


def adapted_certificate(w: Point, k) -> Certificate:
    """Construct a change of basis carrying a null point into U_k.

    An A-invariant subspace F with image(B)-hull <= F <= ker(C)-core and
    dim F = k is grown one kernel-filtration vector at a time, then refined
    to a complete flag along which A strictly descends: below F through the
    kernels of the powers of A restricted to F, above F through the iterated
    preimages of F.  The basis change to that flag, together with the
    strictly decreasing cocharacter, is returned after both certificate
    conditions are re-verified.
    """
    if not in_null_cone(w):
        raise NotInNullConeError("certificates exist only for null points")
    wi = _integer_rescaled_point(w)
    a = wi.A
    s = invariant_hull_of_image(a, wi.B)
    big = largest_invariant_in_kernel(a, wi.C)
    if not (s.dim <= k <= big.dim):
        raise NotAMemberError(
            f"point is not a member of component {k}: interval is "
            f"[{s.dim}, {big.dim}]"
        )
    cert = _build_certificate(a, s, big, k)
    if not check_certificate(w, cert):
        raise AssertionError("constructed certificate failed validation")
    return cert


def component_certificates(w: Point):
    """Classify a null point and certify every component it belongs to.

    Returns (interval, {k: certificate for k in the interval}), sharing the
    invariant-subspace computations across the certificates.  Every
    certificate is re-verified bit-exactly before being returned.
    """
    if not in_null_cone(w):
        raise NotInNullConeError("certificates exist only for null points")
    wi = _integer_rescaled_point(w)
    a = wi.A
    s = invariant_hull_of_image(a, wi.B)
    big = largest_invariant_in_kernel(a, wi.C)
    interval = ComponentInterval(s.dim, big.dim, True)
    certs = {}
    for k in interval.members():
        cert = _build_certificate(a, s, big, k)
        if not check_certificate(w, cert):
            raise AssertionError("constructed certificate failed validation")
        certs[k] = cert
    return interval, certs


# ---------------------------------------------------------------------------
# samplers and dimension formulas


def random_unstable_point(rng, n, p, q, k, bound=DEFAULT_BOUND) -> Point:
    """Random point of U_k whose adjoint part has a full superdiagonal."""
    b = [[0] * p for _ in range(n)]
    for i in range(k):
        for j in range(p):
            b[i][j] = rng.randint(-bound, bound)
    c = [[0] * n for _ in range(q)]
    for i in range(q):
        for j in range(k, n):
            c[i][j] = rng.randint(-bound, bound)
    v = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v[i][j] = (
                random_nonzero_int(rng, bound)
                if j == i + 1
                else rng.randint(-bound, bound)
            )
    return Point(
        RationalMatrix.from_rows(b),
        RationalMatrix.from_rows(c),
        (RationalMatrix.from_rows(v),),
    )


def sample_component(n, p, q, k, seed) -> Point:
    """A random point of C_k: a group element applied to a random U_k point."""
    if not (0 <= k <= n):
        raise ValueError("k must lie in [0, n]")
    rng = as_rng(seed)
    u = random_unstable_point(rng, n, p, q, k)
    g = random_invertible(rng, n)
    return group_action(g, u)


def unstable_coordinate_vectors(n, p, q, k):
    """Basis of U_k as coordinate vectors of the ambient representation.

    Coordinates are ordered vec(B), vec(C), vec(A), all row-major.
    """
    dim_w = n * p + q * n + n * n
    vecs = []
    for i in range(k):
        for j in range(p):
            v = [0] * dim_w
            v[i * p + j] = 1
            vecs.append(v)
    for i in range(q):
        for j in range(k, n):
            v = [0] * dim_w
            v[n * p + i * n + j] = 1
            vecs.append(v)
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * dim_w
            v[n * p + q * n + i * n + j] = 1
            vecs.append(v)
    return vecs


def component_tangent_dim(n, p, q, k, seed) -> int:
    """dim(g.u + U_k) at a random U_k point u with principal adjoint part.

    The infinitesimal action contributes (XB, -CX, [X, A]) for X in the
    matrix algebra; together with U_k itself this spans the image of the
    differential of the sweep map, whose generic dimension is the component
    dimension (n^2 - n) + pk + q(n - k).
    """
    rng = as_rng(seed)
    u = random_unstable_point(rng, n, p, q, k)
    b, c, a = u.B, u.C, u.A
    dim_w = n * p + q * n + n * n
    rows = list(unstable_coordinate_vectors(n, p, q, k))
    for i in range(n):
        for t in range(n):
            # direction of the elementary matrix E_{it}
            v = [0] * dim_w
            for j in range(p):
                v[i * p + j] = b.entry(t, j)
            for qi in range(q):
                v[n * p + qi * n + t] = -c.entry(qi, i)
            for j in range(n):
                v[n * p + q * n + i * n + j] += a.entry(t, j)
                v[n * p + q * n + j * n + t] -= a.entry(j, i)
            rows.append(v)
    from . import _kernels as _k

    return _k.rank_int(rows, dim_w)


@dataclass(frozen=True)
class NullconeSummary:
    component_dims: tuple
    nullcone_dim: int
    equidimensional: bool

    def to_json_obj(self):
        return {
            "component_dims": list(self.component_dims),
            "nullcone_dim": self.nullcone_dim,
            "equidimensional": self.equidimensional,
        }


def nullcone_summary(n, p, q) -> NullconeSummary:
    """Closed-form component dimensions (n^2 - n) + pk + q(n - k) and the max."""
    dims = tuple((n * n - n) + p * k + q * (n - k) for k in range(n + 1))
    return NullconeSummary(dims, max(dims), p == q)


def generic_orbit_witness(n, p, q, k, seed=0):
    """A U_k point with principal adjoint part realizing the largest orbit.

    For k >= n - k the first column of the B part is pinned to the k-th
    elementary vector with the remaining supported entries generic; for
    k < n - k the mirrored construction pins the first row of the supported
    C block instead.  Either way the centralizer has dimension
    min(k, n - k), so the returned orbit dimension is n^2 - min(k, n - k).
    """
    if not (0 <= k <= n):
        raise ValueError("k must lie in [0, n]")
    from .orbits import stabilizer

    rng = as_rng(seed)
    b = [[0] * p for _ in range(n)]
    c = [[0] * n for _ in range(q)]
    if k >= n - k:
        b[k - 1][0] = 1
        for i in range(k):
            for j in range(1, p):
                b[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
        for i in range(q):
            for j in range(k, n):
                c[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
    else:
        c[0][k] = 1
        for i in range(1, q):
            for j in range(k, n):
                c[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
        for i in range(k):
            for j in range(p):
                b[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
    e = RationalMatrix(
        n, n, [1 if j == i + 1 else 0 for i in range(n) for j in range(n)]
    )
    w = Point(RationalMatrix.from_rows(b), RationalMatrix.from_rows(c), (e,))
    return w, stabilizer(w).orbit_dim


def pinned_row_witness(n, p, q, k, seed=0) -> Point:
    """The k >= n - k 'pinned column' family with generic remaining entries.

    B's first column is the k-th elementary vector, B's other supported
    entries and the supported C block are generic; the adjoint part is the
    regular nilpotent Jordan block.  Its centralizer dimension is exactly
    n - k, independent of the generic choices.
    """
    if not (1 <= k <= n and k >= n - k):
        raise ValueError("the pinned family needs n - k <= k <= n")
    rng = as_rng(seed)
    b = [[0] * p for _ in range(n)]
    b[k - 1][0] = 1
    for i in range(k):
        for j in range(1, p):
            b[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
    c = [[0] * n for _ in range(q)]
    for i in range(q):
        for j in range(k, n):
            c[i][j] = rng.randint(-DEFAULT_BOUND, DEFAULT_BOUND)
    e = RationalMatrix(
        n, n, [1 if j == i + 1 else 0 for i in range(n) for j in range(n)]
    )
    return Point(RationalMatrix.from_rows(b), RationalMatrix.from_rows(c), (e,))
