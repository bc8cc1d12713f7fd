import random
from fractions import Fraction
from math import gcd

import pytest

from pforms.exactalg import (
    FgAbGroup,
    GroupHom,
    Mat,
    cokernel,
    cokernel_with_basis,
    determinant,
    integer_kernel_basis,
    integer_solve,
    inverse,
    kernel_basis,
    lattice_basis,
    rank,
    rational_pseudoinverse,
    rref,
    smith_normal_form,
    solve,
)


def random_int_matrix(rng, max_dim=6, lo=-9, hi=9):
    m = rng.randint(1, max_dim)
    n = rng.randint(1, max_dim)
    return Mat([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def snf_diagonal(d):
    return [d.rows[i][i] for i in range(min(d.nrows, d.ncols))]


class TestSmithNormalForm:
    def test_identity(self):
        u, d, v = smith_normal_form(Mat.identity(2))
        assert d == Mat.identity(2)

    def test_zero_matrix(self):
        u, d, v = smith_normal_form(Mat([[0]]))
        assert d == Mat([[0]])

    def test_2x2_example(self):
        # oracle: d1 = gcd of entries, d1*d2 = |det|
        m = Mat([[2, 4], [6, 8]])
        entries = [2, 4, 6, 8]
        d1 = 0
        for e in entries:
            d1 = gcd(d1, e)
        det = abs(2 * 8 - 4 * 6)
        u, d, v = smith_normal_form(m)
        assert snf_diagonal(d) == [d1, det // d1] == [2, 4]

    def test_randomized_invariants(self):
        rng = random.Random(7)
        for _ in range(60):
            m = random_int_matrix(rng)
            u, d, v = smith_normal_form(m)
            assert u @ m @ v == d
            assert abs(determinant(u)) == 1
            assert abs(determinant(v)) == 1
            diag = snf_diagonal(d)
            for i in range(d.nrows):
                for j in range(d.ncols):
                    if i != j:
                        assert d.rows[i][j] == 0
            nonzero = [x for x in diag if x != 0]
            assert all(x > 0 for x in nonzero)
            for a, b in zip(nonzero, nonzero[1:]):
                assert b % a == 0
            # zeros trail the nonzero invariants
            if 0 in diag:
                assert all(x == 0 for x in diag[diag.index(0):])


class TestCokernel:
    def test_single_torsion(self):
        assert cokernel(Mat([[2]])) == FgAbGroup(0, (2,))

    def test_zero_map_free(self):
        assert cokernel(Mat([[0], [0]])) == FgAbGroup(2)

    def test_matches_snf_diagonal(self):
        rng = random.Random(11)
        for _ in range(40):
            m = random_int_matrix(rng)
            _, d, _ = smith_normal_form(m)
            diag = snf_diagonal(d)
            torsion = tuple(x for x in diag if x >= 2)
            nonzero = sum(1 for x in diag if x != 0)
            assert cokernel(m) == FgAbGroup(m.nrows - nonzero, torsion)

    def test_presentation_orders(self):
        m = Mat([[2, 0], [0, 0], [0, 0]])
        group, basis, orders = cokernel_with_basis(m)
        assert group == FgAbGroup(2, (2,))
        assert orders == [2, 0, 0]
        assert basis.shape == (3, 3)


class TestIntegerKernel:
    def test_forced_example(self):
        k = integer_kernel_basis(Mat([[1, 1]]))
        assert k.ncols == 1
        v = k.column(0)
        assert v in ([1, -1], [-1, 1])

    def test_identity_empty(self):
        assert integer_kernel_basis(Mat.identity(3)).ncols == 0

    def test_dependent_rows(self):
        k = integer_kernel_basis(Mat([[2, 4], [1, 2]]))
        assert k.ncols == 1
        v = k.column(0)
        assert v in ([2, -1], [-2, 1])

    def test_randomized_saturation(self):
        rng = random.Random(13)
        for _ in range(40):
            m = random_int_matrix(rng)
            k = integer_kernel_basis(m)
            if k.ncols == 0:
                assert rank(m.to_fractions()) == m.ncols
                continue
            assert (m @ k).is_zero()
            _, d, _ = smith_normal_form(k)
            invariants = [d.rows[i][i] for i in range(min(d.nrows, d.ncols))]
            assert all(x == 1 for x in invariants)

    def test_integer_solve(self):
        rng = random.Random(17)
        for _ in range(40):
            m = random_int_matrix(rng)
            x = [rng.randint(-4, 4) for _ in range(m.ncols)]
            b = m.mul_vec(x)
            y = integer_solve(m, b)
            assert y is not None
            assert m.mul_vec(y) == b
        assert integer_solve(Mat([[2]]), [1]) is None


class TestRationalAlgebra:
    def test_pseudoinverse_trivial(self):
        eye = Mat.identity(3).to_fractions()
        assert rational_pseudoinverse(eye) == eye
        z = Mat.zeros(2, 3).to_fractions()
        assert rational_pseudoinverse(z) == Mat.zeros(3, 2)
        g = rational_pseudoinverse(Mat([[Fraction(2)]]))
        assert g == Mat([[Fraction(1, 2)]])

    def test_pseudoinverse_identities(self):
        rng = random.Random(19)
        for _ in range(40):
            m = random_int_matrix(rng, max_dim=5).to_fractions()
            g = rational_pseudoinverse(m)
            assert m @ g @ m == m
            assert g @ m @ g == g

    def test_solve_and_kernel(self):
        rng = random.Random(23)
        for _ in range(30):
            m = random_int_matrix(rng, max_dim=5).to_fractions()
            k = kernel_basis(m)
            if k.ncols:
                assert (m @ k).is_zero()
            assert rank(m) + k.ncols == m.ncols
            x = [Fraction(rng.randint(-3, 3)) for _ in range(m.ncols)]
            b = m.mul_vec(x)
            y = solve(m, b)
            assert y is not None
            assert m.mul_vec(y) == b

    def test_inverse(self):
        m = Mat([[1, 2], [3, 5]]).to_fractions()
        assert m @ inverse(m) == Mat.identity(2).to_fractions()

    def test_rref_shape(self):
        r, pivots = rref(Mat([[1, 2], [2, 4]]))
        assert pivots == [0]
        assert r.rows[1] == [0, 0]


class TestLatticeBasis:
    def test_full_rank_passthrough(self):
        gens = Mat([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1, 2)]])
        basis = lattice_basis(gens)
        assert basis.ncols == 2

    def test_dependent_generators(self):
        # columns (1,0), (2,0), (0,3) generate Z x 3Z
        gens = Mat([[1, 2, 0], [0, 0, 3]]).to_fractions()
        basis = lattice_basis(gens)
        assert basis.ncols == 2
        # every generator must be an integer combination of the basis
        from pforms.exactalg import solve as rsolve
        for j in range(gens.ncols):
            x = rsolve(basis, gens.column(j))
            assert x is not None
            assert all(Fraction(c).denominator == 1 for c in x)


class TestGroupHom:
    def test_torsion_respect(self):
        src = FgAbGroup(0, (2,))
        tgt = FgAbGroup(0, (4,))
        assert GroupHom(src, tgt, Mat([[2]])).check()
        assert not GroupHom(src, tgt, Mat([[1]])).check()

    def test_into_real_space_kills_torsion(self):
        src = FgAbGroup(1, (2,))
        hom = GroupHom(src, 1, Mat([[1, 0]]))
        assert hom.check()
        assert not GroupHom(src, 1, Mat([[0, 1]])).check()


def test_fgabgroup_validation():
    with pytest.raises(Exception):
        FgAbGroup(0, (3, 2))
    with pytest.raises(Exception):
        FgAbGroup(0, (1,))
    assert str(FgAbGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
