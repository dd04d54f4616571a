"""Generating invariants of the enhanced adjoint action and the quotient map.

A point is a triple (B, C, A) with B of shape n x p, C of shape q x n and A
an n x n matrix (or a tuple of r such matrices for the several-copies
action); the group element g sends it to (gB, C g^-1, g A g^-1).  The
invariants evaluated here are the power traces tau_k = trace(A^k) for
k = 1..n and the moment matrices Gamma_k = C A^k B for k = 0..n-1, together
with their general-r word versions trace(A_I) and C A_K B.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FiberConditionError, ShapeError, SingularMatrixError
from .linalg import (
    RationalMatrix,
    Rational,
    _canon,
    rational_from_str,
    rational_to_str,
    trace_product,
)


@dataclass(frozen=True)
class Point:
    """A point (B, C, (A_1..A_r)) of the representation space."""

    B: RationalMatrix
    C: RationalMatrix
    A_list: tuple

    def __post_init__(self):
        object.__setattr__(self, "A_list", tuple(self.A_list))
        if not self.A_list:
            raise ShapeError("a point needs at least one adjoint copy")
        n = self.B.rows
        if n < 1 or self.B.cols < 1 or self.C.rows < 1:
            raise ShapeError("n, p and q must all be positive")
        if self.C.cols != n:
            raise ShapeError("C must have n columns")
        for a in self.A_list:
            if a.shape != (n, n):
                raise ShapeError("every adjoint copy must be n x n")

    @property
    def n(self):
        return self.B.rows

    @property
    def p(self):
        return self.B.cols

    @property
    def q(self):
        return self.C.rows

    @property
    def r(self):
        return len(self.A_list)

    @property
    def A(self) -> RationalMatrix:
        if self.r != 1:
            raise ShapeError("single adjoint copy requested from an r > 1 point")
        return self.A_list[0]

    def dims(self):
        return (self.n, self.p, self.q, self.r)

    def to_json_obj(self):
        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "A": [a.to_lists() for a in self.A_list],
            "B": self.B.to_lists(),
            "C": self.C.to_lists(),
        }

    @classmethod
    def from_json_obj(cls, obj) -> "Point":
        if not isinstance(obj, dict):
            raise ValueError("point must be a JSON object")
        try:
            a_list = tuple(RationalMatrix.from_lists(a) for a in obj["A"])
            pt = cls(
                RationalMatrix.from_lists(obj["B"]),
                RationalMatrix.from_lists(obj["C"]),
                a_list,
            )
        except (KeyError, TypeError, ShapeError) as exc:
            raise ValueError(f"malformed point: {exc}") from exc
        for key in ("n", "p", "q", "r"):
            if key in obj and obj[key] != getattr(pt, key):
                raise ValueError(f"declared {key} does not match matrix shapes")
        return pt


def zero_point(n, p, q, r=1) -> Point:
    return Point(
        RationalMatrix.zeros(n, p),
        RationalMatrix.zeros(q, n),
        tuple(RationalMatrix.zeros(n, n) for _ in range(r)),
    )


@dataclass(frozen=True)
class InvariantVector:
    """Values (tau_1..tau_n; Gamma_0..Gamma_{n-1}) of the quotient map."""

    tau: tuple
    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(_canon(t) for t in self.tau))
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if len(self.tau) != len(self.gamma):
            raise ShapeError("tau and gamma must both have length n")

    @property
    def n(self):
        return len(self.tau)

    def is_zero(self):
        return all(not t for t in self.tau) and all(g.is_zero() for g in self.gamma)

    def to_json_obj(self):
        return {
            "tau": [rational_to_str(t) for t in self.tau],
            "gamma": [g.to_lists() for g in self.gamma],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "InvariantVector":
        try:
            return cls(
                tuple(rational_from_str(t) for t in obj["tau"]),
                tuple(RationalMatrix.from_lists(g) for g in obj["gamma"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed invariant vector: {exc}") from exc


@dataclass(frozen=True)
class TangentVector:
    """A direction (dB, dC, dA) at an r = 1 point."""

    dB: RationalMatrix
    dC: RationalMatrix
    dA: RationalMatrix


def matrix_powers(a: RationalMatrix, top: int):
    """[I, a, a^2, ..., a^top]."""
    out = [RationalMatrix.identity(a.rows)]
    for _ in range(top):
        out.append(out[-1] @ a)
    return out


def evaluate_invariants(w: Point) -> InvariantVector:
    """The quotient-map value of an r = 1 point, exactly."""
    if w.r != 1:
        raise ShapeError("invariant vector is defined for r = 1 points")
    n = w.n
    a = w.A
    pows = matrix_powers(a, n)
    tau = tuple(pows[k].trace() for k in range(1, n + 1))
    gamma = tuple(w.C @ (pows[k] @ w.B) for k in range(n))
    return InvariantVector(tau, gamma)


def group_action(g: RationalMatrix, w: Point) -> Point:
    """Apply g: (B, C, (A_i)) -> (gB, C g^-1, (g A_i g^-1))."""
    n = w.n
    if g.shape != (n, n):
        raise ShapeError("group element has wrong size")
    try:
        ginv = g.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("group element must be invertible") from None
    return Point(
        g @ w.B,
        w.C @ ginv,
        tuple(g @ a @ ginv for a in w.A_list),
    )


# ---------------------------------------------------------------------------
# word invariants (general r)


def cyclic_canonical(word: tuple) -> tuple:
    """Lexicographically smallest rotation; traces agree on the whole class."""
    if len(word) <= 1:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class WordInvariants:
    """Trace words (cyclic-deduplicated) and moment words up to a length."""

    max_len: int
    tau: dict
    gamma: dict

    def to_json_obj(self):
        def key(word):
            return ",".join(str(i) for i in word)

        return {
            "max_len": self.max_len,
            "tau": {key(w): rational_to_str(v) for w, v in self.tau.items()},
            "gamma": {key(w): m.to_lists() for w, m in self.gamma.items()},
        }


def word_invariants(w: Point, max_len: int) -> WordInvariants:
    """All trace words tau_I (nonempty I) and moment words gamma_K, |K|, |I| <= max_len.

    tau keys are deduplicated up to cyclic rotation, the only identity that
    holds a priori; gamma keys are not deduplicated.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    tau: dict = {}
    gamma: dict = {(): w.C @ w.B}
    frontier = {(): RationalMatrix.identity(w.n)}
    for _ in range(max_len):
        nxt = {}
        for word, prod in frontier.items():
            for letter in range(1, w.r + 1):
                nw = word + (letter,)
                np_ = prod @ w.A_list[letter - 1]
                nxt[nw] = np_
                gamma[nw] = w.C @ (np_ @ w.B)
                canon = cyclic_canonical(nw)
                if canon not in tau:
                    tau[canon] = np_.trace()
        frontier = nxt
    return WordInvariants(max_len, tau, gamma)


# ---------------------------------------------------------------------------
# differential of the quotient map


def differential(w: Point, dw: TangentVector) -> InvariantVector:
    """Exact directional derivative of the invariants at w along dw.

    Product rule only, no finite differences:
      d tau_k   = k * trace(A^{k-1} dA)
      d Gamma_k = dC A^k B + sum_i C A^i dA A^{k-1-i} B + C A^k dB
    """
    if w.r != 1:
        raise ShapeError("differential is defined for r = 1 points")
    n, p, q = w.n, w.p, w.q
    if dw.dB.shape != (n, p) or dw.dC.shape != (q, n) or dw.dA.shape != (n, n):
        raise ShapeError("tangent vector shapes do not match the point")
    pows = matrix_powers(w.A, n)
    lefts = [w.C @ pows[i] for i in range(n)]
    rights = [pows[i] @ w.B for i in range(n)]
    dtau = tuple(
        _canon(k * trace_product(pows[k - 1], dw.dA)) for k in range(1, n + 1)
    )
    dgamma = []
    for k in range(n):
        acc = dw.dC @ rights[k] + lefts[k] @ dw.dB
        for i in range(k):
            acc = acc + lefts[i] @ (dw.dA @ rights[k - 1 - i])
        dgamma.append(acc)
    return InvariantVector(dtau, tuple(dgamma))


def jacobian_matrix(w: Point) -> RationalMatrix:
    """Matrix of the differential at w.

    Rows: tau_1..tau_n then Gamma entries (k, i, j) in lexicographic order.
    Columns: the standard basis directions dA (row-major), then dB, then dC.
    Assembled column group by column group from the product-rule formulas;
    agreement with ``differential`` on random directions is covered by tests.
    """
    if w.r != 1:
        raise ShapeError("Jacobian is defined for r = 1 points")
    n, p, q = w.n, w.p, w.q
    pows = matrix_powers(w.A, n)
    lefts = [w.C @ pows[i] for i in range(n)]
    rights = [pows[i] @ w.B for i in range(n)]
    nrows = n + n * q * p
    ncols = n * n + n * p + q * n
    cols = []

    def gamma_row_index(k, i, j):
        return n + (k * q + i) * p + j

    # dA directions E_{ab}
    for a_ in range(n):
        for b_ in range(n):
            col = [0] * nrows
            for k in range(1, n + 1):
                col[k - 1] = _canon(k * pows[k - 1].entry(b_, a_))
            for k in range(n):
                for i in range(k):
                    lv = lefts[i]
                    rv = rights[k - 1 - i]
                    for qi in range(q):
                        lqa = lv.entry(qi, a_)
                        if lqa:
                            for pj in range(p):
                                col[gamma_row_index(k, qi, pj)] += lqa * rv.entry(
                                    b_, pj
                                )
            cols.append(col)
    # dB directions E_{bj}
    for b_ in range(n):
        for j_ in range(p):
            col = [0] * nrows
            for k in range(n):
                lv = lefts[k]
                for qi in range(q):
                    col[gamma_row_index(k, qi, j_)] = lv.entry(qi, b_)
            cols.append(col)
    # dC directions E_{ic}
    for i_ in range(q):
        for c_ in range(n):
            col = [0] * nrows
            for k in range(n):
                rv = rights[k]
                for pj in range(p):
                    col[gamma_row_index(k, i_, pj)] = rv.entry(c_, pj)
            cols.append(col)

    flat = [cols[j][i] for i in range(nrows) for j in range(ncols)]
    return RationalMatrix(nrows, ncols, flat)


def jacobian_rank(w: Point) -> int:
    """Exact rank of the differential of the quotient map at w."""
    return jacobian_matrix(w).rank()


# ---------------------------------------------------------------------------
# the symmetrized parametrization of the image


def psi_map(t, xs) -> InvariantVector:
    """Map spectra and rank <= 1 matrices to invariant values.

    Sends (t_1..t_n; X_1..X_n) to the power sums of t and the combinations
    Gamma_k = sum_r t_r^k X_r for k = 0..n-1.  Every X_r must have rank at
    most one; the map is invariant under simultaneously permuting the t and
    X coordinates.
    """
    t = [_canon(x) for x in t]
    n = len(t)
    if len(xs) != n:
        raise ShapeError("need exactly one matrix per spectrum entry")
    if n == 0:
        return InvariantVector((), ())
    shape = xs[0].shape
    for x in xs:
        if x.shape != shape:
            raise ShapeError("matrices differ in shape")
        if x.rank() > 1:
            raise FiberConditionError("matrix of rank >= 2 is outside the image")
    tau = tuple(_canon(sum(ti**k for ti in t)) for k in range(1, n + 1))
    gamma = []
    for k in range(n):
        acc = RationalMatrix.zeros(*shape)
        for r in range(n):
            acc = acc + xs[r].scale(t[r] ** k)
        gamma.append(acc)
    return InvariantVector(tau, tuple(gamma))


# ---------------------------------------------------------------------------
# the determinant relation for the special linear subgroup


@dataclass(frozen=True)
class SlRelationResult:
    d1: Rational
    d2: Rational
    hankel_det: Rational
    holds: bool


def sl_relation_check(u: RationalMatrix, v: RationalMatrix, a: RationalMatrix) -> SlRelationResult:
    """Verify D1 * D2 = det(v A^{i+j} u) for column u, row v, square A.

    D1 is the determinant of the rows v, vA, ..., vA^{n-1}; D2 of the
    columns u, Au, ..., A^{n-1}u.  The product identity holds because the
    Hankel matrix factors through those two Krylov matrices.
    """
    if not a.is_square:
        raise ShapeError("A must be square")
    n = a.rows
    if u.shape != (n, 1) or v.shape != (1, n):
        raise ShapeError("u must be n x 1 and v must be 1 x n")
    pows = matrix_powers(a, 2 * n - 2 if n else 0)
    v_rows = [(v @ pows[i]).row_list(0) for i in range(n)]
    u_cols = [(pows[i] @ u).col_list(0) for i in range(n)]
    d1 = RationalMatrix.from_rows(v_rows).det()
    d2 = RationalMatrix.from_rows(
        [[u_cols[j][i] for j in range(n)] for i in range(n)]
    ).det()
    hankel = RationalMatrix.from_rows(
        [
            [(v @ (pows[i + j] @ u)).entry(0, 0) for j in range(n)]
            for i in range(n)
        ]
    ).det()
    return SlRelationResult(d1, d2, hankel, d1 * d2 == hankel)


# ---------------------------------------------------------------------------
# the non-closed-image toy model


@dataclass(frozen=True)
class NonclosedImageDemo:
    """One sample of the family showing the symmetrized map has non-closed image."""

    eps: Fraction
    image_tau: tuple
    image_parts: tuple
    limit_tau: tuple
    limit_parts: tuple
    gap: Rational


def nonclosed_image_demo(n: int, u: RationalMatrix, eps) -> NonclosedImageDemo:
    """Evaluate the toy family a = (eps, 2 eps, ..., n eps), v_i = u / a_i.

    Along this family a_i v_i = u stays fixed while the image point
    ((power sums of a); (sum a_i^k v_i)_{k=1..n}) approaches
    (0; (n u, 0, ..., 0)).  That limit is never attained: vanishing power
    sums force a = 0 (see ``limit_point_is_outside_family_image``), and
    a = 0 contradicts a_i v_i = u != 0.  The gap is the maximum absolute
    coordinate difference, exact on rationals.
    """
    eps = Fraction(eps)
    if eps == 0:
        raise ValueError("eps must be nonzero")
    if n < 1:
        raise ValueError("n must be positive")
    if u.is_zero():
        raise ValueError("u must be nonzero")
    a = [eps * (i + 1) for i in range(n)]
    vs = [u.scale(Fraction(1, 1) / ai) for ai in a]
    image_tau = tuple(_canon(sum(ai**k for ai in a)) for k in range(1, n + 1))
    image_parts = []
    for k in range(1, n + 1):
        acc = RationalMatrix.zeros(u.rows, u.cols)
        for i in range(n):
            acc = acc + vs[i].scale(a[i] ** k)
        image_parts.append(acc)
    limit_tau = (0,) * n
    limit_parts = [u.scale(n)] + [
        RationalMatrix.zeros(u.rows, u.cols) for _ in range(n - 1)
    ]
    gap = 0
    for t1, t2 in zip(image_tau, limit_tau):
        gap = max(gap, abs(t1 - t2))
    for m1, m2 in zip(image_parts, limit_parts):
        for x, y in zip(m1.entries, m2.entries):
            gap = max(gap, abs(x - y))
    return NonclosedImageDemo(
        eps,
        image_tau,
        tuple(image_parts),
        limit_tau,
        tuple(limit_parts),
        _canon(gap),
    )


def limit_point_is_outside_family_image(n: int, u: RationalMatrix) -> bool:
    """Certify that the limit point of the demo family is not in the image.

    A preimage of the limit would need all power sums p_1..p_n of a to be
    zero.  Newton's identities express the elementary symmetric values as a
    triangular, division-free-in-p combination of the power sums, so p = 0
    forces e = 0 (verified below by running the recursion), which makes every
    a_i a root of x^n and hence zero over a field.  But the family constraint
    a_i v_i = u with u != 0 excludes a = 0.
    """
    if n < 1 or u.is_zero():
        return False
    from .linalg import elementary_from_power_sums

    return all(e == 0 for e in elementary_from_power_sums([0] * n))
