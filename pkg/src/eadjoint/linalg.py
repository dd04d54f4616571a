"""Exact dense linear algebra over the rationals.

Everything here is root-free and exact: entries are Python ``int`` or
``fractions.Fraction`` (an integral ``Fraction`` is stored as ``int``), ranks
and echelon forms come from integer-preserving elimination, and subspaces
carry a canonical reduced column echelon basis so that equal subspaces have
equal basis matrices.  All values are immutable and all operations are pure,
so concurrent use needs no synchronization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _kernels as _k
from .errors import DegenerateSpectrumError, ShapeError, SingularMatrixError

Rational = int | Fraction


def _canon(x) -> Rational:
    """Normalize an exact rational: integral Fractions collapse to int."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"not an exact rational entry: {x!r}")


def rational_to_str(x: Rational) -> str:
    """Serialize to 'num' or 'num/den' in lowest terms, denominator > 0."""
    x = _canon(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Rational:
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string, got {type(s).__name__}")
    try:
        return _canon(Fraction(s.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {s!r}") from exc


class RationalMatrix:
    """Immutable dense matrix with exact rational entries, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries, validate=True):
        if validate:
            if rows < 0 or cols < 0:
                raise ShapeError("negative matrix dimension")
            entries = tuple(_canon(x) for x in entries)
            if len(entries) != rows * cols:
                raise ShapeError(
                    f"expected {rows * cols} entries, got {len(entries)}"
                )
        else:
            entries = tuple(entries)
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows_list) -> "RationalMatrix":
        rows_list = list(rows_list)
        nrows = len(rows_list)
        ncols = len(rows_list[0]) if nrows else 0
        flat = []
        for row in rows_list:
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, flat)

    @classmethod
    def zeros(cls, rows, cols) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols), validate=False)

    @classmethod
    def identity(cls, n) -> "RationalMatrix":
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + i] = 1
        return cls(n, n, e, validate=False)

    @classmethod
    def diagonal(cls, values) -> "RationalMatrix":
        values = [_canon(v) for v in values]
        n = len(values)
        e = [0] * (n * n)
        for i, v in enumerate(values):
            e[i * n + i] = v
        return cls(n, n, e, validate=False)

    @classmethod
    def column(cls, values) -> "RationalMatrix":
        return cls.from_rows([[v] for v in values])

    @classmethod
    def row(cls, values) -> "RationalMatrix":
        return cls.from_rows([list(values)])

    # -- basic protocol ------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def entry(self, i, j) -> Rational:
        return self.entries[i * self.cols + j]

    def row_list(self, i):
        c = self.cols
        return list(self.entries[i * c : (i + 1) * c])

    def col_list(self, j):
        c = self.cols
        return [self.entries[i * c + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row_list(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(rational_to_str(x) for x in self.row_list(i))
            for i in range(self.rows)
        )
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self):
        return all(not x for x in self.entries)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
            validate=False,
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
            validate=False,
        )

    def __neg__(self):
        return RationalMatrix(
            self.rows, self.cols, [-a for a in self.entries], validate=False
        )

    def scale(self, s) -> "RationalMatrix":
        s = _canon(s)
        return RationalMatrix(
            self.rows, self.cols, [s * a for a in self.entries], validate=False
        )

    def __mul__(self, s):
        if isinstance(s, (int, Fraction)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        out = _k.mat_mul(self.entries, self.rows, self.cols, other.entries, other.cols)
        return RationalMatrix(self.rows, other.cols, out, validate=False)

    def transpose(self) -> "RationalMatrix":
        r, c, e = self.rows, self.cols, self.entries
        out = [0] * (r * c)
        for i in range(r):
            for j in range(c):
                out[j * r + i] = e[i * c + j]
        return RationalMatrix(c, r, out, validate=False)

    @property
    def T(self):
        return self.transpose()

    def trace(self) -> Rational:
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        n = self.rows
        return _canon(sum(self.entries[i * n + i] for i in range(n)))

    def matpow(self, m) -> "RationalMatrix":
        if not self.is_square:
            raise ShapeError("power of a non-square matrix")
        out = RationalMatrix.identity(self.rows)
        for _ in range(m):
            out = out @ self
        return out

    @staticmethod
    def hstack(mats):
        mats = list(mats)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ShapeError("hstack with differing row counts")
        rows = [[] for _ in range(r)]
        for m in mats:
            for i in range(r):
                rows[i].extend(m.row_list(i))
        cols = sum(m.cols for m in mats)
        flat = [x for row in rows for x in row]
        return RationalMatrix(r, cols, flat, validate=False)

    @staticmethod
    def vstack(mats):
        mats = list(mats)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ShapeError("vstack with differing column counts")
        flat = []
        for m in mats:
            flat.extend(m.entries)
        return RationalMatrix(sum(m.rows for m in mats), c, flat, validate=False)

    # -- serialization ---------------------------------------------------

    def to_lists(self):
        return [
            [rational_to_str(x) for x in self.row_list(i)] for i in range(self.rows)
        ]

    @classmethod
    def from_lists(cls, rows_list) -> "RationalMatrix":
        if not isinstance(rows_list, list):
            raise ValueError("matrix must be a list of rows")
        parsed = []
        for row in rows_list:
            if not isinstance(row, list):
                raise ValueError("matrix row must be a list")
            parsed.append([rational_from_str(x) for x in row])
        return cls.from_rows(parsed)

    # -- elimination-backed queries ---------------------------------------

    def _same_shape(self, other):
        if not isinstance(other, RationalMatrix) or self.shape != other.shape:
            raise ShapeError("shape mismatch")

    def _int_rows(self):
        """Rows scaled to integers (row scaling preserves rank/RREF/kernel)."""
        out = []
        c = self.cols
        e = self.entries
        for i in range(self.rows):
            row = e[i * c : (i + 1) * c]
            l = 1
            for x in row:
                if isinstance(x, Fraction):
                    d = x.denominator
                    l = l * d // gcd(l, d)
            if l == 1:
                # a Fraction can carry denominator 1 after arithmetic
                out.append(
                    [x.numerator if isinstance(x, Fraction) else x for x in row]
                )
            else:
                out.append(
                    [
                        x.numerator * (l // x.denominator)
                        if isinstance(x, Fraction)
                        else x * l
                        for x in row
                    ]
                )
        return out

    def rank(self) -> int:
        return _k.rank_int(self._int_rows(), self.cols)

    def rref(self):
        """Unique rational RREF: (rank, pivot column tuple, rows as lists)."""
        rank, pivots, rows = _k.rre_int(self._int_rows(), self.cols)
        out = []
        for idx in range(rank):
            row = rows[idx]
            p = row[pivots[idx]]
            out.append([_canon(Fraction(x, p)) if x else 0 for x in row])
        return rank, tuple(pivots), out

    def inverse(self) -> "RationalMatrix":
        if not self.is_square:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        aug = RationalMatrix.hstack([self, RationalMatrix.identity(n)])
        rank, pivots, rows = aug.rref()
        if rank < n or any(p >= n for p in pivots):
            raise SingularMatrixError("matrix is singular")
        flat = []
        for i in range(n):
            flat.extend(rows[i][n:])
        return RationalMatrix(n, n, flat, validate=False)

    def det(self) -> Rational:
        """Determinant by fraction-free Bareiss elimination (exact)."""
        if not self.is_square:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self._int_rows()
        denom = 1
        c = self.cols
        e = self.entries
        for i in range(n):
            l = 1
            for x in e[i * c : (i + 1) * c]:
                if isinstance(x, Fraction):
                    d = x.denominator
                    l = l * d // gcd(l, d)
            denom *= l
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = -1
                for i in range(k + 1, n):
                    if a[i][k]:
                        swap = i
                        break
                if swap < 0:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            pkk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                rowi = a[i]
                rowk = a[k]
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * pkk - aik * rowk[j]) // prev
                rowi[k] = 0
            prev = pkk
        return _canon(Fraction(sign * a[n - 1][n - 1], denom))


def integer_rescaled(m: RationalMatrix) -> RationalMatrix:
    """The positive integer multiple of m clearing every denominator.

    Useful wherever only the zero pattern, spans or kernels of a matrix
    matter; those are unchanged under scaling by a positive rational.
    """
    l = 1
    for x in m.entries:
        if isinstance(x, Fraction):
            d = x.denominator
            l = l * d // gcd(l, d)
    if l == 1:
        if all(isinstance(x, int) for x in m.entries):
            return m
        return RationalMatrix(
            m.rows,
            m.cols,
            [x.numerator if isinstance(x, Fraction) else x for x in m.entries],
            validate=False,
        )
    return RationalMatrix(
        m.rows,
        m.cols,
        [
            x.numerator * (l // x.denominator) if isinstance(x, Fraction) else x * l
            for x in m.entries
        ],
        validate=False,
    )


def trace_product(a: RationalMatrix, b: RationalMatrix) -> Rational:
    """trace(a @ b) without forming the product."""
    if a.cols != b.rows or a.rows != b.cols:
        raise ShapeError("trace_product shape mismatch")
    ae, be = a.entries, b.entries
    n, m = a.rows, a.cols
    s = 0
    for i in range(n):
        ia = i * m
        for t in range(m):
            x = ae[ia + t]
            if x:
                s += x * be[t * n + i]
    return _canon(s)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace of Q^n with a canonical echelon basis.

    The basis matrix is in reduced column echelon form (leading 1 of each
    column at a strictly increasing row index, zeros elsewhere in pivot
    rows), which is unique per subspace: two equal subspaces always carry
    identical basis matrices.
    """

    __slots__ = ("ambient_dim", "dim", "basis")

    def __init__(self, ambient_dim, basis: RationalMatrix):
        # callers must hand in an already-canonical basis; use the
        # constructors below for arbitrary spanning sets
        self.ambient_dim = ambient_dim
        self.dim = basis.cols
        self.basis = basis

    @classmethod
    def from_spanning_columns(cls, m: RationalMatrix) -> "Subspace":
        rank, _, rows = m.transpose().rref()
        basis = RationalMatrix.from_rows(rows[:rank]).transpose() if rank else (
            RationalMatrix.zeros(m.rows, 0)
        )
        return cls(m.rows, basis)

    @classmethod
    def zero(cls, ambient_dim) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def basis_columns(self):
        return [self.basis.col_list(j) for j in range(self.dim)]

    def contains_vector(self, v) -> bool:
        if isinstance(v, RationalMatrix):
            col = v
        else:
            col = RationalMatrix.column(v)
        if col.rows != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        if self.dim == 0:
            return col.is_zero()
        return RationalMatrix.hstack([self.basis, col]).rank() == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        if other.dim == 0:
            return True
        stacked = RationalMatrix.hstack([self.basis, other.basis])
        return stacked.rank() == self.dim

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.from_spanning_columns(
            RationalMatrix.hstack([self.basis, other.basis])
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # solve basis_self @ x = basis_other @ y;  intersection = basis_self @ x
        stacked = RationalMatrix.hstack([self.basis, -other.basis])
        ker = kernel_subspace(stacked)
        if ker.dim == 0:
            return Subspace.zero(self.ambient_dim)
        xpart = RationalMatrix.from_rows(ker.basis.to_rows()[: self.dim])
        return Subspace.from_spanning_columns(self.basis @ xpart)

    def image_under(self, a: RationalMatrix) -> "Subspace":
        if a.cols != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        return Subspace.from_spanning_columns(a @ self.basis)

    def preimage_under(self, a: RationalMatrix) -> "Subspace":
        """The solution space {x : a @ x lies in this subspace}."""
        if a.rows != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        ann = self.annihilator_rows()
        if ann.rows == 0:
            return Subspace.full(a.cols)
        return kernel_subspace(ann @ a)

    def annihilator_rows(self) -> RationalMatrix:
        """Matrix whose rows span {z : z @ basis = 0}; its kernel is self."""
        ker = kernel_subspace(self.basis.transpose())
        return ker.basis.transpose()

    def _same_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient dimension mismatch")


def column_space(m: RationalMatrix) -> Subspace:
    return Subspace.from_spanning_columns(m)


def kernel_subspace(m: RationalMatrix) -> Subspace:
    """Null space {x : m @ x = 0} with canonical basis."""
    rank, pivots, rows = m.rref()
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return Subspace.zero(n)
    cols = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for idx, pc in enumerate(pivots):
            v[pc] = -rows[idx][f]
        cols.append(v)
    spanning = RationalMatrix.from_rows(
        [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    )
    return Subspace.from_spanning_columns(spanning)


def rref_decompose(m: RationalMatrix):
    """(rank, column space, kernel) of a matrix, all exact and canonical."""
    ker = kernel_subspace(m)
    col = column_space(m)
    return col.dim, col, ker


class SubspaceRelation(enum.Enum):
    EQUAL = "equal"
    S_IN_T = "S_in_T"
    T_IN_S = "T_in_S"
    INCOMPARABLE = "incomparable"


def subspace_compare(s: Subspace, t: Subspace) -> SubspaceRelation:
    """Compare two subspaces by exact rank tests on stacked bases."""
    if s.ambient_dim != t.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    joint = RationalMatrix.hstack([s.basis, t.basis]).rank()
    s_in_t = joint == t.dim
    t_in_s = joint == s.dim
    if s_in_t and t_in_s:
        return SubspaceRelation.EQUAL
    if s_in_t:
        return SubspaceRelation.S_IN_T
    if t_in_s:
        return SubspaceRelation.T_IN_S
    return SubspaceRelation.INCOMPARABLE


# ---------------------------------------------------------------------------
# characteristic polynomials and friends


@dataclass(frozen=True)
class PolynomialCoeffs:
    """Monic polynomial, coefficients from the top power down to the constant."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("polynomial must be monic")
        object.__setattr__(self, "coeffs", tuple(_canon(c) for c in self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def derivative(self) -> tuple:
        n = self.degree
        return tuple(
            _canon(self.coeffs[i] * (n - i)) for i in range(n)
        )

    def evaluate_matrix(self, a: RationalMatrix) -> RationalMatrix:
        """Horner evaluation p(a); the Cayley-Hamilton check in tests."""
        if not a.is_square:
            raise ShapeError("matrix substitution needs a square matrix")
        n = a.rows
        out = RationalMatrix.identity(n)
        for c in self.coeffs[1:]:
            out = out @ a
            if c:
                out = out + RationalMatrix.identity(n).scale(c)
        return out

    def is_power_of_x(self) -> bool:
        return all(not c for c in self.coeffs[1:])


def char_poly(a: RationalMatrix, check: bool = False) -> PolynomialCoeffs:
    """Characteristic polynomial of a square matrix.

    Uses the Faddeev-LeVerrier recurrence: only matrix products, traces and
    exact divisions by the step index, so no determinant expansion and no
    entry-dependent divisions.  For integer input every intermediate
    coefficient is the exact integer coefficient of the polynomial.  With
    ``check`` the result is asserted to annihilate the matrix
    (Cayley-Hamilton), a debug aid that costs n extra products.
    """
    if not a.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [1]
    m = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        if k > 1:
            m = a @ m + RationalMatrix.identity(n).scale(coeffs[-1])
        coeffs.append(_canon(Fraction(-trace_product(a, m), k)))
    poly = PolynomialCoeffs(tuple(coeffs))
    if check and not poly.evaluate_matrix(a).is_zero():
        raise AssertionError("characteristic polynomial failed Cayley-Hamilton")
    return poly


def elementary_from_power_sums(psums) -> list:
    """Newton's identities: elementary symmetric values e_1..e_n from p_1..p_n."""
    psums = [_canon(p) for p in psums]
    n = len(psums)
    e = [1]
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * psums[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        e.append(_canon(Fraction(acc, k)))
    return e[1:]


def charpoly_from_power_sums(psums) -> PolynomialCoeffs:
    """Monic polynomial whose roots have the given power sums p_1..p_n."""
    e = elementary_from_power_sums(psums)
    coeffs = [1]
    for k, ek in enumerate(e, start=1):
        coeffs.append(_canon(-ek if k % 2 == 1 else ek))
    return PolynomialCoeffs(tuple(coeffs))


def sylvester_resultant(f: tuple, g: tuple) -> Rational:
    """Resultant of two polynomials given by coefficient tuples (top down)."""
    df = len(f) - 1
    dg = len(g) - 1
    if df < 0 or dg < 0:
        raise ValueError("resultant of an empty polynomial")
    size = df + dg
    if size == 0:
        return 1
    rows = []
    for i in range(dg):
        rows.append([0] * i + list(f) + [0] * (size - i - df - 1))
    for i in range(df):
        rows.append([0] * i + list(g) + [0] * (size - i - dg - 1))
    return RationalMatrix.from_rows(rows).det()


def discriminant_is_nonzero(p: PolynomialCoeffs) -> bool:
    """Whether the discriminant of a monic polynomial is nonzero (root-free)."""
    if p.degree <= 1:
        return True
    return sylvester_resultant(p.coeffs, p.derivative()) != 0


# ---------------------------------------------------------------------------
# Vandermonde systems


def vandermonde_solve(t, rhs):
    """Solve sum_r t_r^k X_r = rhs_k (k = 0..n-1) for matrices X_1..X_n.

    The t values must be pairwise distinct; the right-hand sides are n
    equally shaped matrices.  Solved by exact elimination on the n x n
    Vandermonde system with a block right-hand side.
    """
    t = [_canon(x) for x in t]
    n = len(t)
    if len(set(map(Fraction, t))) != n:
        raise DegenerateSpectrumError("degenerate spectrum: repeated t values")
    if len(rhs) != n:
        raise ShapeError(f"expected {n} right-hand blocks, got {len(rhs)}")
    if n == 0:
        return []
    q, p = rhs[0].rows, rhs[0].cols
    for blk in rhs:
        if blk.shape != (q, p):
            raise ShapeError("right-hand blocks differ in shape")
    # Vandermonde rows (t_j^i)_{i=0..n-1}, flattened block RHS alongside
    width = q * p
    aug_rows = []
    for i in range(n):
        row = [t[j] ** i for j in range(n)]
        row.extend(rhs[i].entries)
        aug_rows.append(row)
    aug = RationalMatrix.from_rows(aug_rows)
    rank, pivots, rows = aug.rref()
    if rank != n or any(pc >= n for pc in pivots):
        raise DegenerateSpectrumError("Vandermonde system is singular")
    out = []
    for r in range(n):
        out.append(RationalMatrix(q, p, rows[r][n : n + width]))
    return out


def vandermonde_matrix(t) -> RationalMatrix:
    t = [_canon(x) for x in t]
    n = len(t)
    return RationalMatrix.from_rows([[t[j] ** i for j in range(n)] for i in range(n)])
