import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eadjoint.errors import DegenerateSpectrumError, ShapeError, SingularMatrixError
from eadjoint.linalg import (
    PolynomialCoeffs,
    RationalMatrix,
    Subspace,
    SubspaceRelation,
    char_poly,
    charpoly_from_power_sums,
    column_space,
    discriminant_is_nonzero,
    rational_from_str,
    rational_to_str,
    rref_decompose,
    subspace_compare,
    sylvester_resultant,
    trace_product,
    vandermonde_matrix,
    vandermonde_solve,
)

RM = RationalMatrix.from_rows


def random_matrix(rng, rows, cols, bound=10):
    return RationalMatrix(
        rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)]
    )


def random_invertible(rng, n, bound=10):
    while True:
        m = random_matrix(rng, n, n, bound)
        if m.rank() == n:
            return m


small_rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = draw(
        st.lists(small_rationals, min_size=rows * cols, max_size=rows * cols)
    )
    return RationalMatrix(rows, cols, entries)


@st.composite
def matrix_pairs(draw, max_dim=4):
    """Two matrices sharing a row count (spanning sets in one ambient space)."""
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    out = []
    for _ in range(2):
        cols = draw(st.integers(min_value=1, max_value=max_dim))
        entries = draw(
            st.lists(small_rationals, min_size=rows * cols, max_size=rows * cols)
        )
        out.append(RationalMatrix(rows, cols, entries))
    return tuple(out)


# ---------------------------------------------------------------------------
# RationalMatrix basics


class TestMatrixBasics:
    def test_entries_are_canonical(self):
        m = RationalMatrix(1, 3, [Fraction(4, 2), Fraction(1, 3), 7])
        assert m.entries == (2, Fraction(1, 3), 7)
        assert isinstance(m.entries[0], int)

    def test_shape_validation(self):
        with pytest.raises(ShapeError):
            RationalMatrix(2, 2, [1, 2, 3])
        with pytest.raises(ShapeError):
            RM([[1, 2], [3]])

    def test_matmul_and_trace(self):
        a = RM([[1, 2], [3, 4]])
        b = RM([[0, 1], [1, 0]])
        assert (a @ b) == RM([[2, 1], [4, 3]])
        assert a.trace() == 5
        with pytest.raises(ShapeError):
            a @ RM([[1, 2, 3]])

    def test_empty_shapes(self):
        z = RationalMatrix.zeros(3, 0)
        assert z.shape == (3, 0)
        assert (z.transpose() @ z).shape == (0, 0)

    def test_inverse_roundtrip(self):
        rng = random.Random(5)
        for n in (1, 2, 3, 4):
            g = random_invertible(rng, n)
            assert g @ g.inverse() == RationalMatrix.identity(n)

    def test_singular_inverse_rejected(self):
        with pytest.raises(SingularMatrixError):
            RM([[1, 2], [2, 4]]).inverse()

    def test_det_known_values(self):
        assert RM([[1, 2], [3, 4]]).det() == -2
        assert RM([[2, 3], [3, 5]]).det() == 1
        assert RationalMatrix.identity(4).det() == 1
        assert RM([[1, 2], [2, 4]]).det() == 0
        assert RM([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]).det() == Fraction(1, 6)

    def test_det_matches_cofactor_expansion(self):
        # independent cofactor-expansion check on random 3x3 matrices
        rng = random.Random(11)

        def cof(m):
            if m.rows == 1:
                return m.entry(0, 0)
            total = 0
            for j in range(m.cols):
                sub = RM(
                    [
                        [m.entry(i, jj) for jj in range(m.cols) if jj != j]
                        for i in range(1, m.rows)
                    ]
                )
                term = m.entry(0, j) * cof(sub)
                total += term if j % 2 == 0 else -term
            return total

        for _ in range(25):
            m = random_matrix(rng, 3, 3, 6)
            assert m.det() == cof(m)

    def test_serialization_roundtrip(self):
        m = RM([[Fraction(-3, 7), 5], [0, Fraction(1, 2)]])
        lists = m.to_lists()
        assert lists == [["-3/7", "5"], ["0", "1/2"]]
        assert RationalMatrix.from_lists(lists) == m

    def test_rational_strings(self):
        assert rational_to_str(Fraction(-3, 7)) == "-3/7"
        assert rational_to_str(Fraction(10, 2)) == "5"
        assert rational_from_str("-3/7") == Fraction(-3, 7)
        assert rational_from_str("5") == 5
        with pytest.raises(ValueError):
            rational_from_str("1.5x")
        with pytest.raises(ValueError):
            rational_from_str("1/0")


# ---------------------------------------------------------------------------
# rref_decompose


class TestRrefDecompose:
    def test_zero_matrix(self):
        rank, col, ker = rref_decompose(RationalMatrix.zeros(3, 2))
        assert rank == 0
        assert col == Subspace.zero(3)
        assert ker == Subspace.full(2)

    def test_identity(self):
        rank, col, ker = rref_decompose(RationalMatrix.identity(3))
        assert rank == 3
        assert col == Subspace.full(3)
        assert ker == Subspace.zero(3)

    def test_rank_one_example(self):
        # hand row reduction: second row is twice the first
        m = RM([[1, 2, 3], [2, 4, 6]])
        rank, col, ker = rref_decompose(m)
        assert rank == 1
        assert ker.dim == 2

    def test_kernel_annihilates(self):
        rng = random.Random(7)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 6)
            rank, col, ker = rref_decompose(m)
            assert rank + ker.dim == m.cols
            if ker.dim:
                assert (m @ ker.basis).is_zero()
            # every column of m lies in the column space
            for j in range(m.cols):
                assert col.contains_vector(m.col_list(j))

    @given(matrices())
    @settings(deadline=None, max_examples=60)
    def test_rank_nullity(self, m):
        rank, _, ker = rref_decompose(m)
        assert rank + ker.dim == m.cols


# ---------------------------------------------------------------------------
# char_poly


class TestCharPoly:
    def test_diag_example(self):
        # expand (x-1)(x-2) by hand: x^2 - 3x + 2
        p = char_poly(RationalMatrix.diagonal([1, 2]))
        assert p.coeffs == (1, -3, 2)

    def test_zero_matrix(self):
        for n in (1, 2, 3, 5):
            p = char_poly(RationalMatrix.zeros(n, n))
            assert p.coeffs == (1,) + (0,) * n

    def test_principal_nilpotent(self):
        for n in (2, 3, 4):
            e = RationalMatrix(
                n, n, [1 if j == i + 1 else 0 for i in range(n) for j in range(n)]
            )
            assert char_poly(e).is_power_of_x()

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            char_poly(RationalMatrix.zeros(2, 3))

    def test_cayley_hamilton(self):
        rng = random.Random(3)
        for n in (1, 2, 3, 4):
            a = random_matrix(rng, n, n, 8)
            assert char_poly(a).evaluate_matrix(a).is_zero()
            char_poly(a, check=True)  # the built-in assertion must agree

    def test_conjugation_invariance(self):
        rng = random.Random(9)
        for n in (2, 3, 4):
            a = random_matrix(rng, n, n, 6)
            g = random_invertible(rng, n, 6)
            assert char_poly(g @ a @ g.inverse()).coeffs == char_poly(a).coeffs

    def test_matches_newton_identities(self):
        # power-sum route: trace(A^k) -> elementary symmetric -> coefficients
        rng = random.Random(21)
        for n in (1, 2, 3, 4, 5):
            a = random_matrix(rng, n, n, 6)
            psums = [a.matpow(k).trace() for k in range(1, n + 1)]
            assert charpoly_from_power_sums(psums).coeffs == char_poly(a).coeffs

    def test_trace_powers_satisfy_recursion(self):
        # trace(A^(n+m)) is the linear combination of lower traces dictated
        # by the characteristic polynomial
        rng = random.Random(13)
        for n in (2, 3, 4):
            a = random_matrix(rng, n, n, 5)
            coeffs = char_poly(a).coeffs
            traces = [a.matpow(k).trace() for k in range(0, 2 * n + 2)]
            for m in range(n, 2 * n + 2):
                predicted = -sum(
                    coeffs[i] * traces[m - i] for i in range(1, n + 1)
                )
                assert traces[m] == predicted


# ---------------------------------------------------------------------------
# vandermonde_solve


class TestVandermonde:
    def test_hand_inverted_example(self):
        # invert [[1,1],[1,2]] by hand: X1 = [1], X2 = [1]
        xs = vandermonde_solve([1, 2], [RM([[2]]), RM([[3]])])
        assert xs == [RM([[1]]), RM([[1]])]

    def test_zero_rhs(self):
        xs = vandermonde_solve(
            [Fraction(1, 3), -2, 5], [RationalMatrix.zeros(2, 2)] * 3
        )
        assert all(x.is_zero() for x in xs)

    def test_single_point(self):
        m = RM([[1, 2], [3, 4]])
        assert vandermonde_solve([5], [m]) == [m]

    def test_repeated_nodes_rejected(self):
        with pytest.raises(DegenerateSpectrumError):
            vandermonde_solve([1, Fraction(2, 2)], [RM([[1]]), RM([[2]])])

    def test_remultiplication_reproduces_rhs(self):
        rng = random.Random(17)
        for n in (1, 2, 3, 4):
            ts = rng.sample(range(-10, 11), n)
            rhs = [random_matrix(rng, 2, 3, 7) for _ in range(n)]
            xs = vandermonde_solve(ts, rhs)
            for k in range(n):
                total = RationalMatrix.zeros(2, 3)
                for r in range(n):
                    total = total + xs[r].scale(ts[r] ** k)
                assert total == rhs[k]

    def test_vandermonde_matrix_layout(self):
        assert vandermonde_matrix([1, 2]) == RM([[1, 1], [1, 2]])


# ---------------------------------------------------------------------------
# subspaces


class TestSubspaces:
    def test_zero_subspace_comparisons(self):
        z = Subspace.zero(3)
        t = column_space(RM([[1], [0], [2]]))
        assert subspace_compare(z, t) == SubspaceRelation.S_IN_T
        assert subspace_compare(z, Subspace.zero(3)) == SubspaceRelation.EQUAL

    def test_full_space_equal(self):
        s = column_space(RM([[1, 1], [0, 1]]))
        assert subspace_compare(s, Subspace.full(2)) == SubspaceRelation.EQUAL

    def test_incomparable_axes(self):
        # stacked basis has rank 2, so neither contains the other
        e1 = column_space(RM([[1], [0]]))
        e2 = column_space(RM([[0], [1]]))
        assert subspace_compare(e1, e2) == SubspaceRelation.INCOMPARABLE

    def test_ambient_mismatch(self):
        with pytest.raises(ShapeError):
            subspace_compare(Subspace.zero(2), Subspace.zero(3))

    def test_canonical_form_is_spanning_set_independent(self):
        rng = random.Random(23)
        for _ in range(30):
            n = rng.randint(1, 5)
            d = rng.randint(0, n)
            base = random_matrix(rng, n, d, 6)
            # a second spanning set: shuffled columns plus random combinations
            cols = [base.col_list(j) for j in range(d)]
            extra = []
            for _ in range(rng.randint(0, 3)):
                coeffs = [rng.randint(-3, 3) for _ in range(d)]
                extra.append(
                    [
                        sum(c * cols[j][i] for j, c in enumerate(coeffs))
                        for i in range(n)
                    ]
                )
            rng.shuffle(cols)
            other = RM([list(r) for r in zip(*(cols + extra))]) if d or extra else (
                RationalMatrix.zeros(n, 0)
            )
            s1 = Subspace.from_spanning_columns(base)
            s2 = Subspace.from_spanning_columns(other)
            if s1.dim == s2.dim:
                assert s1.basis == s2.basis

    def test_sum_and_intersection(self):
        e1 = column_space(RM([[1], [0], [0]]))
        e12 = column_space(RM([[1, 0], [0, 1], [0, 0]]))
        e23 = column_space(RM([[0, 0], [1, 0], [0, 1]]))
        assert e12.sum_with(e23) == Subspace.full(3)
        inter = e12.intersect(e23)
        assert inter.dim == 1
        assert inter.contains_vector([0, 1, 0])
        assert e12.intersect(e1) == e1

    def test_preimage(self):
        a = RM([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        f = column_space(RM([[1], [0], [0]]))
        pre = f.preimage_under(a)
        # x with a @ x in span(e1): second coordinate free, third zero
        assert pre.dim == 2
        assert pre.contains_vector([0, 1, 0])
        assert pre.contains_vector([1, 0, 0])
        assert not pre.contains_vector([0, 0, 1])

    def test_annihilator(self):
        s = column_space(RM([[1, 0], [0, 1], [1, 1]]))
        ann = s.annihilator_rows()
        assert ann.rows == 1
        assert (ann @ s.basis).is_zero()

    @given(matrix_pairs())
    @settings(deadline=None, max_examples=40)
    def test_dimension_formula(self, pair):
        # dim(S + T) + dim(S ∩ T) = dim S + dim T, exactly
        a, b = pair
        s = column_space(a)
        t = column_space(b)
        total = s.sum_with(t)
        meet = s.intersect(t)
        assert total.dim + meet.dim == s.dim + t.dim
        assert total.contains(s) and total.contains(t)
        assert s.contains(meet) and t.contains(meet)


# ---------------------------------------------------------------------------
# resultants / discriminants


class TestDiscriminant:
    def test_known_resultant(self):
        # res(x^2 + 1, 2x) = 4: roots +-i, product of 2x evaluated there
        assert sylvester_resultant((1, 0, 1), (2, 0)) == 4

    def test_discriminant_flags(self):
        assert discriminant_is_nonzero(char_poly(RationalMatrix.diagonal([1, 2, 3])))
        assert not discriminant_is_nonzero(char_poly(RationalMatrix.identity(2)))
        # rotation matrix: eigenvalues +-i, no root extraction needed
        assert discriminant_is_nonzero(char_poly(RM([[0, 1], [-1, 0]])))


class TestTraceProduct:
    def test_matches_full_product(self):
        rng = random.Random(31)
        for _ in range(20):
            n, m = rng.randint(1, 4), rng.randint(1, 4)
            a = random_matrix(rng, n, m, 6)
            b = random_matrix(rng, m, n, 6)
            assert trace_product(a, b) == (a @ b).trace()


class TestPolynomialCoeffs:
    def test_monic_required(self):
        with pytest.raises(ValueError):
            PolynomialCoeffs((2, 1))

    def test_derivative(self):
        p = PolynomialCoeffs((1, -3, 2))
        assert p.derivative() == (2, -3)
