import itertools
import random
from fractions import Fraction

import pytest

from eadjoint.errors import FiberConditionError, ShapeError, SingularMatrixError
from eadjoint.invariants import (
    InvariantVector,
    Point,
    TangentVector,
    cyclic_canonical,
    differential,
    evaluate_invariants,
    group_action,
    jacobian_matrix,
    jacobian_rank,
    limit_point_is_outside_family_image,
    nonclosed_image_demo,
    psi_map,
    sl_relation_check,
    word_invariants,
    zero_point,
)
from eadjoint.linalg import RationalMatrix

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


def random_point(rng, n, p, q, r=1, bound=10):
    return Point(
        random_matrix(rng, n, p, bound),
        random_matrix(rng, q, n, bound),
        tuple(random_matrix(rng, n, n, bound) for _ in range(r)),
    )


DIAG_POINT = Point(RM([[1], [1]]), RM([[1, 1]]), (RationalMatrix.diagonal([1, 2]),))


# ---------------------------------------------------------------------------
# evaluate_invariants / group_action


class TestEvaluate:
    def test_diag_example(self):
        # direct arithmetic: tau = (3, 5), Gamma = ([2], [3])
        iv = evaluate_invariants(DIAG_POINT)
        assert iv.tau == (3, 5)
        assert iv.gamma == (RM([[2]]), RM([[3]]))

    def test_zero_point(self):
        iv = evaluate_invariants(zero_point(3, 2, 1))
        assert iv.is_zero()

    def test_principal_nilpotent_null(self):
        e = RM([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        w = Point(RationalMatrix.zeros(3, 1), RationalMatrix.zeros(1, 3), (e,))
        assert evaluate_invariants(w).is_zero()

    def test_r2_rejected(self):
        w = zero_point(2, 1, 1, r=2)
        with pytest.raises(ShapeError):
            evaluate_invariants(w)

    def test_identity_action(self):
        w = DIAG_POINT
        assert group_action(RationalMatrix.identity(2), w) == w

    def test_scalar_action(self):
        w = DIAG_POINT
        g = RationalMatrix.diagonal([3, 3])
        out = group_action(g, w)
        assert out.A_list[0] == w.A
        assert out.B == w.B.scale(3)
        assert out.C == w.C.scale(Fraction(1, 3))

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            group_action(RM([[1, 1], [1, 1]]), DIAG_POINT)

    def test_invariance_under_random_action(self):
        rng = random.Random(41)
        for _ in range(40):
            n = rng.randint(1, 4)
            w = random_point(rng, n, rng.randint(1, 3), rng.randint(1, 3))
            g = random_invertible(rng, n)
            assert evaluate_invariants(group_action(g, w)) == evaluate_invariants(w)

    def test_json_roundtrip(self):
        obj = DIAG_POINT.to_json_obj()
        assert obj["B"] == [["1"], ["1"]]
        assert Point.from_json_obj(obj) == DIAG_POINT
        iv = evaluate_invariants(DIAG_POINT)
        assert InvariantVector.from_json_obj(iv.to_json_obj()) == iv

    def test_json_shape_mismatch_rejected(self):
        obj = DIAG_POINT.to_json_obj()
        obj["n"] = 3
        with pytest.raises(ValueError):
            Point.from_json_obj(obj)


# ---------------------------------------------------------------------------
# word invariants


class TestWordInvariants:
    def test_specializes_to_plain_invariants(self):
        rng = random.Random(5)
        w = random_point(rng, 3, 2, 2)
        iv = evaluate_invariants(w)
        words = word_invariants(w, 2 * w.n - 1)
        for k in range(1, w.n + 1):
            assert words.tau[(1,) * k] == iv.tau[k - 1]
        for k in range(w.n):
            assert words.gamma[(1,) * k] == iv.gamma[k]

    def test_empty_word_is_cb(self):
        rng = random.Random(6)
        w = random_point(rng, 2, 2, 3, r=2)
        words = word_invariants(w, 0)
        assert words.gamma[()] == w.C @ w.B
        assert words.tau == {}

    def test_trace_cyclicity(self):
        rng = random.Random(7)
        w = random_point(rng, 2, 1, 1, r=2)
        a1, a2 = w.A_list
        words = word_invariants(w, 2)
        # the canonical key carries the common value of both rotations
        assert (1, 2) in words.tau
        assert (2, 1) not in words.tau
        assert words.tau[(1, 2)] == (a1 @ a2).trace() == (a2 @ a1).trace()

    def test_word_values_match_direct_products(self):
        rng = random.Random(8)
        w = random_point(rng, 2, 2, 1, r=3)
        words = word_invariants(w, 3)
        for key, val in words.gamma.items():
            prod = RationalMatrix.identity(2)
            for letter in key:
                prod = prod @ w.A_list[letter - 1]
            assert val == w.C @ prod @ w.B

    def test_invariance_r2(self):
        rng = random.Random(9)
        for _ in range(15):
            n = rng.randint(1, 3)
            w = random_point(rng, n, rng.randint(1, 2), rng.randint(1, 2), r=2)
            g = random_invertible(rng, n)
            w2 = group_action(g, w)
            a, b = word_invariants(w, n), word_invariants(w2, n)
            assert a.tau == b.tau and a.gamma == b.gamma

    def test_cyclic_canonical(self):
        assert cyclic_canonical((2, 1, 1)) == (1, 1, 2)
        assert cyclic_canonical(()) == ()


# ---------------------------------------------------------------------------
# differential: formal-epsilon oracle


class Dual:
    """a + b*eps with eps^2 = 0; exact rational dual numbers for the oracle."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        o = o if isinstance(o, Dual) else Dual(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __mul__(self, o):
        o = o if isinstance(o, Dual) else Dual(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__


def dual_matmul(x, y):
    rows, inner, cols = len(x), len(y), len(y[0])
    return [
        [sum((x[i][t] * y[t][j] for t in range(inner)), Dual(0)) for j in range(cols)]
        for i in range(rows)
    ]


def dual_invariants(w, dw):
    """Invariants of w + eps*dw computed with dual numbers; independent path."""
    n = w.n

    def lift(m, dm):
        return [
            [Dual(m.entry(i, j), dm.entry(i, j)) for j in range(m.cols)]
            for i in range(m.rows)
        ]

    A = lift(w.A, dw.dA)
    B = lift(w.B, dw.dB)
    C = lift(w.C, dw.dC)
    taus = []
    gammas = []
    power = [[Dual(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for k in range(n + 1):
        if k:
            power = dual_matmul(power, A)
            taus.append(sum((power[i][i] for i in range(n)), Dual(0)))
        if k < n:
            gk = dual_matmul(C, dual_matmul(power, B))
            gammas.append(gk)
    eps_tau = tuple(t.b for t in taus)
    eps_gamma = tuple(
        RationalMatrix.from_rows([[e.b for e in row] for row in g]) for g in gammas
    )
    return eps_tau, eps_gamma


class TestDifferential:
    def test_zero_direction(self):
        rng = random.Random(11)
        w = random_point(rng, 3, 2, 2)
        zero = TangentVector(
            RationalMatrix.zeros(3, 2),
            RationalMatrix.zeros(2, 3),
            RationalMatrix.zeros(3, 3),
        )
        assert differential(w, zero).is_zero()

    def test_at_zero_point(self):
        # evaluating the formulas at w = 0: only d tau_1 = trace(dA) survives
        rng = random.Random(12)
        w = zero_point(3, 2, 1)
        dw = TangentVector(
            random_matrix(rng, 3, 2),
            random_matrix(rng, 1, 3),
            random_matrix(rng, 3, 3),
        )
        dv = differential(w, dw)
        assert dv.tau[0] == dw.dA.trace()
        assert all(t == 0 for t in dv.tau[1:])
        assert all(g.is_zero() for g in dv.gamma)

    def test_formal_epsilon_oracle(self):
        rng = random.Random(13)
        for _ in range(20):
            n, p, q = rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 2)
            w = random_point(rng, n, p, q, bound=5)
            dw = TangentVector(
                random_matrix(rng, n, p, 5),
                random_matrix(rng, q, n, 5),
                random_matrix(rng, n, n, 5),
            )
            got = differential(w, dw)
            eps_tau, eps_gamma = dual_invariants(w, dw)
            assert got.tau == eps_tau
            assert got.gamma == eps_gamma

    def test_linearity(self):
        rng = random.Random(14)
        w = random_point(rng, 2, 2, 2, bound=5)

        def rnd():
            return TangentVector(
                random_matrix(rng, 2, 2, 5),
                random_matrix(rng, 2, 2, 5),
                random_matrix(rng, 2, 2, 5),
            )

        d1, d2 = rnd(), rnd()
        s = TangentVector(d1.dB + d2.dB.scale(3), d1.dC + d2.dC.scale(3), d1.dA + d2.dA.scale(3))
        lhs = differential(w, s)
        a, b = differential(w, d1), differential(w, d2)
        assert lhs.tau == tuple(x + 3 * y for x, y in zip(a.tau, b.tau))
        for m, x, y in zip(lhs.gamma, a.gamma, b.gamma):
            assert m == x + y.scale(3)


class TestJacobian:
    def test_rank_at_origin(self):
        # only the trace row survives at zero
        assert jacobian_rank(zero_point(2, 1, 1)) == 1
        assert jacobian_rank(zero_point(3, 2, 2)) == 1

    def test_generic_rank_small(self):
        # distinct eigenvalues, fully supported B and C
        assert jacobian_rank(DIAG_POINT) == 4

    def test_generic_rank_n3(self):
        rng = random.Random(15)
        hits = 0
        for _ in range(10):
            w = random_point(rng, 3, 2, 1)
            r = jacobian_rank(w)
            assert r <= min(9 + 6 + 3, 3 + 3 * 2 * 1)
            hits += r == 9
        assert hits >= 9

    def test_matrix_matches_differential(self):
        rng = random.Random(16)
        for _ in range(10):
            n, p, q = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
            w = random_point(rng, n, p, q, bound=6)
            jm = jacobian_matrix(w)
            dw = TangentVector(
                random_matrix(rng, n, p, 6),
                random_matrix(rng, q, n, 6),
                random_matrix(rng, n, n, 6),
            )
            vec = list(dw.dA.entries) + list(dw.dB.entries) + list(dw.dC.entries)
            out = jm @ RationalMatrix.column(vec)
            dv = differential(w, dw)
            expected = list(dv.tau)
            for g in dv.gamma:
                expected.extend(g.entries)
            assert out.col_list(0) == [x for x in expected]


# ---------------------------------------------------------------------------
# psi map


class TestPsiMap:
    def test_zero_matrices(self):
        t = [1, 2, 3]
        xs = [RationalMatrix.zeros(2, 2)] * 3
        iv = psi_map(t, xs)
        assert iv.tau == (6, 14, 36)
        assert all(g.is_zero() for g in iv.gamma)

    def test_agrees_with_evaluate_example(self):
        iv = psi_map([1, 2], [RM([[1]]), RM([[1]])])
        assert iv == evaluate_invariants(DIAG_POINT)

    def test_symmetric_group_invariance(self):
        rng = random.Random(17)
        for n in (2, 3, 4):
            t = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
            xs = []
            for _ in range(n):
                c = random_matrix(rng, 2, 1, 4)
                b = random_matrix(rng, 1, 2, 4)
                xs.append(c @ b)
            base = psi_map(t, xs)
            for perm in itertools.permutations(range(n)):
                assert psi_map([t[i] for i in perm], [xs[i] for i in perm]) == base

    def test_rank_two_rejected(self):
        with pytest.raises(FiberConditionError):
            psi_map([1, 2], [RationalMatrix.identity(2), RationalMatrix.zeros(2, 2)])


# ---------------------------------------------------------------------------
# determinant relation


class TestSlRelation:
    def test_hand_example(self):
        res = sl_relation_check(
            RM([[1], [1]]), RM([[1, 1]]), RationalMatrix.diagonal([1, 2])
        )
        assert (res.d1, res.d2, res.hankel_det) == (1, 1, 1)
        assert res.holds

    def test_zero_column(self):
        res = sl_relation_check(
            RationalMatrix.zeros(2, 1), RM([[1, 1]]), RationalMatrix.diagonal([1, 2])
        )
        assert res.d2 == 0 and res.hankel_det == 0 and res.holds

    def test_random_identity(self):
        rng = random.Random(19)
        for n in (1, 2, 3, 4):
            for _ in range(10):
                res = sl_relation_check(
                    random_matrix(rng, n, 1, 6),
                    random_matrix(rng, 1, n, 6),
                    random_matrix(rng, n, n, 6),
                )
                assert res.holds


# ---------------------------------------------------------------------------
# non-closed image demo


class TestNonclosedDemo:
    def test_eps_zero_rejected(self):
        with pytest.raises(ValueError):
            nonclosed_image_demo(2, RM([[1]]), 0)

    def test_zero_u_rejected(self):
        with pytest.raises(ValueError):
            nonclosed_image_demo(2, RationalMatrix.zeros(1, 1), Fraction(1, 10))

    def test_frozen_gap_value(self):
        # hand evaluation at eps = 1/10, n = 2: power sums (3/10, 1/20),
        # second part differs by (0, (3/10) u); gap = 3/10
        demo = nonclosed_image_demo(2, RM([[1]]), Fraction(1, 10))
        assert demo.gap == Fraction(3, 10)
        assert demo.image_parts[0] == RM([[2]])
        assert demo.limit_parts[0] == RM([[2]])

    def test_gap_strictly_decreasing(self):
        u = RM([[1]])
        g1 = nonclosed_image_demo(2, u, Fraction(1, 10)).gap
        g2 = nonclosed_image_demo(2, u, Fraction(1, 20)).gap
        g3 = nonclosed_image_demo(2, u, Fraction(1, 40)).gap
        assert g1 > g2 > g3 > 0

    def test_limit_never_attained_certificate(self):
        assert limit_point_is_outside_family_image(3, RM([[1], [0]]))
        assert not limit_point_is_outside_family_image(3, RationalMatrix.zeros(2, 1))

    def test_image_tau_never_zero_on_family(self):
        # any nonzero eps leaves a nonzero top power sum, separating the
        # image point from the limit in the tau part
        for eps in (Fraction(1, 10), Fraction(-1, 7), 2):
            demo = nonclosed_image_demo(3, RM([[2], [1]]), eps)
            assert any(t != 0 for t in demo.image_tau)
