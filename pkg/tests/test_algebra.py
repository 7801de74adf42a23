"""Exact linear algebra: ranks, kernels, Smith forms, Laurent orders."""

import random
from fractions import Fraction

import pytest

from scx.algebra import (GF, QQ, AlgebraError, LaurentRing, Matrix, det_poly,
                         diagonalize_laurent, field_by_tag, inverse,
                         kernel_basis, pid_homology_order, poly_from_str,
                         poly_to_str, rank, snf_integers, solve)

R = LaurentRing(QQ)


def mat(rows, dom=QQ):
    return Matrix.from_rows(dom, rows)


def lmat(rows):
    """Laurent matrix from (low, coeffs) pairs or ints."""
    conv = []
    for row in rows:
        out = []
        for x in row:
            if isinstance(x, tuple):
                out.append(R.poly(x[0], list(x[1])))
            else:
                out.append(R.of(x))
        conv.append(out)
    return Matrix(R, conv)


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(QQ, 2)) == 2

    def test_equal_rows_f2(self):
        assert rank(mat([[1, 1], [1, 1]], GF(2))) == 1

    def test_swap_block(self):
        # [I | S - I] with S the 2x2 swap
        m = mat([[1, 0, -1, 1], [0, 1, 1, -1]])
        assert rank(m) == 2

    def test_empty(self):
        assert rank(Matrix.zeros(QQ, 0, 3)) == 0
        assert rank(Matrix.zeros(QQ, 3, 0)) == 0


class TestKernel:
    def test_zero_map(self):
        k = kernel_basis(Matrix.zeros(QQ, 1, 3))
        assert k.n == 3

    def test_identity(self):
        assert kernel_basis(Matrix.identity(QQ, 3)).n == 0

    def test_proportional(self):
        k = kernel_basis(mat([[2, -1]]))
        assert k.n == 1
        v = k.column(0)
        assert v[1] == 2 * v[0]

    def test_exactness(self):
        rng = random.Random(5)
        for _ in range(25):
            m = mat([[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)])
            k = kernel_basis(m)
            assert (m * k).is_zero_matrix()
            assert k.n == m.n - rank(m)


class TestSolveInverse:
    def test_inverse_round_trip(self):
        m = mat([[1, 1], [0, 1]])
        assert m * inverse(m) == Matrix.identity(QQ, 2)

    def test_solve_consistent(self):
        m = mat([[1, 2], [2, 4]])
        target = mat([[1], [2]])
        sol = solve(m, target)
        assert m * sol == target

    def test_solve_inconsistent(self):
        assert solve(mat([[1], [0]]), mat([[0], [1]])) is None


class TestSnfIntegers:
    def test_single(self):
        assert snf_integers([[2]]) == (2,)

    def test_divisibility(self):
        assert snf_integers([[2, 0], [0, 3]]) == (1, 6)

    def test_zero(self):
        assert snf_integers([[0]]) == (0,)

    def test_rank_matches_rational_rank(self):
        rng = random.Random(11)
        for _ in range(40):
            rows = [[rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
                    for _ in range(rng.randint(1, 4))]
            rows = [r[: len(rows[0])] + [0] * (len(rows[0]) - len(r))
                    for r in rows]
            diag = snf_integers(rows)
            assert sum(1 for d in diag if d) == rank(mat(rows))

    def test_chain(self):
        diag = snf_integers([[6, 0, 0], [0, 10, 0], [0, 0, 15]])
        for a, b in zip(diag, diag[1:]):
            assert b == 0 or a == 0 or b % a == 0


class TestLaurent:
    def test_canonical_form(self):
        p = R.poly(-1, [0, 1, 0])
        assert p.low == 0 and p.coeffs == (Fraction(1),)

    def test_str_round_trip(self):
        rng = random.Random(3)
        for _ in range(50):
            p = R.poly(rng.randint(-3, 3),
                       [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                        for _ in range(rng.randint(0, 5))])
            assert R.eq(poly_from_str(R, poly_to_str(R, p)), p)

    def test_deg_unit_invariant(self):
        p = R.poly(0, [1, 2, 1])
        shifted = R.mul(p, R.monomial(Fraction(3), -2))
        assert shifted.degree_span() == p.degree_span()

    def test_field_tags(self):
        assert field_by_tag("q") is QQ
        assert field_by_tag("f5").p == 5
        with pytest.raises(AlgebraError):
            field_by_tag("f4")


class TestDetPoly:
    def test_one_by_one(self):
        d = det_poly(lmat([[(0, (-1, 1))]]))
        assert poly_to_str(R, d) == "-1 + t"

    def test_identity_minus_t(self):
        m = lmat([[(0, (1, -1)), 0], [0, (0, (1, -1))]])
        d = det_poly(m)
        assert poly_to_str(R, d) == "1 - 2*t + t^2"
        assert d.degree_span() == 2

    def test_singular_a(self):
        # A = diag(1,0), B = I: det(A + tB) = t(1+t), degree 1 < 2
        m = lmat([[(0, (1, 1)), 0], [0, (1, (1,))]])
        d = det_poly(m)
        assert poly_to_str(R, d) == "t + t^2"
        assert d.degree_span() == 1

    def test_empty(self):
        assert R.eq(det_poly(Matrix.zeros(R, 0, 0)), R.one)

    def test_vs_expansion(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(1, 3)
            m = lmat([[(rng.randint(-1, 1),
                        tuple(rng.randint(-2, 2) for _ in range(2)))
                       for _ in range(n)] for _ in range(n)])
            d = det_poly(m)
            assert R.eq(d, _laplace(m))


def _laplace(m):
    if m.n == 0:
        return R.one
    if m.n == 1:
        return m.rows[0][0]
    total = R.zero
    sub = [row[1:] for row in m.rows]
    for i in range(m.m):
        minor = Matrix(R, [r for j, r in enumerate(sub) if j != i])
        term = R.mul(m.rows[i][0], _laplace(minor))
        total = R.add(total, term) if i % 2 == 0 else R.sub(total, term)
    return total


class TestDiagonalizeLaurent:
    def test_transforms(self):
        rng = random.Random(13)
        for _ in range(15):
            m_, n_ = rng.randint(1, 3), rng.randint(1, 3)
            a = lmat([[(rng.randint(-1, 1),
                        tuple(rng.randint(-2, 2) for _ in range(2)))
                       for _ in range(n_)] for _ in range(m_)])
            diag, U, V, Vinv = diagonalize_laurent(a)
            prod = U * a * V
            for i in range(m_):
                for j in range(n_):
                    if i == j:
                        assert R.eq(prod.rows[i][j], diag[i])
                    else:
                        assert prod.rows[i][j].is_zero()
            assert V * Vinv == Matrix.identity(R, n_)


class TestPidHomologyOrder:
    def test_single_t_minus_one(self):
        d_in = lmat([[(0, (-1, 1))]])
        d_out = Matrix.zeros(R, 0, 1)
        order = pid_homology_order(d_in, d_out)
        assert poly_to_str(R, order) == "-1 + t"

    def test_exact_complex_unit(self):
        d_in = Matrix.identity(R, 2)
        d_out = Matrix.zeros(R, 0, 2)
        assert poly_to_str(R, pid_homology_order(d_in, d_out)) == "1"

    def test_free_rank_gives_zero(self):
        d_in = lmat([[0]])
        d_out = lmat([[0]])
        assert pid_homology_order(d_in, d_out).is_zero()

    def test_rejects_noncomposing(self):
        d_in = Matrix.identity(R, 1)
        d_out = Matrix.identity(R, 1)
        with pytest.raises(AlgebraError):
            pid_homology_order(d_in, d_out)

    def test_kernel_quotient(self):
        # d_out = [1, -1] (row); kernel = (1,1); d_in = column (t-1, t-1)
        d_out = lmat([[1, -1]])
        d_in = lmat([[(0, (-1, 1))], [(0, (-1, 1))]])
        order = pid_homology_order(d_in, d_out)
        assert poly_to_str(R, order) == "-1 + t"
