import random

import pytest

from gridlink.conway import check_row_identity, conway_data, fox_matrix, gamma, m_poly, total_weight
from gridlink.grid import disjoint_union
from gridlink.laurent import LaurentPoly, RationalFn, determinant

from conftest import random_grid


def P(text, nvars=1):
    return LaurentPoly.parse(text, nvars)


def as_text(f):
    return [[str(e) for e in row] for row in f.entries]


class TestFox:
    def test_unknot(self, unknot):
        assert as_text(fox_matrix(unknot)) == [["1", "t1^(-1)"]]

    def test_trefoil(self, trefoil):
        assert as_text(fox_matrix(trefoil)) == [
            ["1", "0", "0", "t1^(-1)", "0"],
            ["1", "0", "t1^(-1)", "1", "t1"],
            ["1", "t1^(-1)", "1", "0", "t1"],
            ["0", "1", "0", "0", "t1"],
        ]

    def test_hopf(self, hopf):
        assert as_text(fox_matrix(hopf)) == [
            ["1", "0", "t1^(-1)", "0"],
            ["1", "t1^(-1)", "t1^(-1)*t2^(-1)", "t2^(-1)"],
            ["0", "1", "0", "t2^(-1)"],
        ]

    def test_row_identity(self, unknot, trefoil):
        assert check_row_identity(fox_matrix(unknot), unknot)
        assert check_row_identity(fox_matrix(trefoil), trefoil)

    def test_perturbed_row_identity(self, trefoil):
        f = fox_matrix(trefoil)
        rows = [list(r) for r in f.entries]
        rows[1][0] = P("t1")
        broken = type(f)(tuple(tuple(r) for r in rows), f.nvars)
        assert not check_row_identity(broken, trefoil)

    @pytest.mark.parametrize("seed", range(15))
    def test_random_grids(self, seed):
        rng = random.Random(seed)
        g = random_grid(rng.randint(2, 7), rng)
        f = fox_matrix(g)
        assert check_row_identity(f, g)
        for row in f.entries:
            for e in row:
                assert e.is_zero() or (e.is_monomial() and list(e.terms.values()) == [1])


class TestConwayFunction:
    def test_unknot_m(self, unknot):
        assert m_poly(unknot, 0) == RationalFn(P("-t1^(-1)"), P("t1^(-1) - 1"))

    def test_column_independence(self, corpus_grid):
        _, g = corpus_grid
        ref = m_poly(g, 0)
        for j in range(1, g.n):
            assert m_poly(g, j) == ref

    def test_trefoil_columns(self, trefoil):
        assert m_poly(trefoil, 0) == m_poly(trefoil, 2)

    def test_hopf_determinant(self, hopf):
        det = determinant(fox_matrix(hopf).minor(0), nvars=2)
        assert det == P("-t1^(-1)*t2^(-1)", 2) * (P("t1^(-1)", 2) - 1)

    def test_weights(self, unknot, trefoil, hopf):
        assert total_weight(unknot) == P("t1^(-2)")
        assert total_weight(trefoil) == P("t1^(-1)")
        assert total_weight(hopf) == P("t1^(-3)*t2^(-3)", 2)

    def test_goldens(self, unknot, trefoil, hopf):
        t = P("t1")
        assert gamma(unknot) == RationalFn(P("1"), t - t ** -1)
        assert gamma(trefoil) == RationalFn(P("t1^2 - 1 + t1^(-2)"), t - t ** -1)
        assert gamma(hopf) == RationalFn(LaurentPoly.one(2))
        assert str(gamma(unknot)) == "1/(t1 - t1^(-1))"

    def test_normalization_data(self, unknot, trefoil):
        d = conway_data(unknot)
        assert (d.x0_sign, d.u, d.kappa) == (-1, 1, (1,))
        d = conway_data(trefoil)
        assert (d.x0_sign, d.u, d.kappa) == (1, 3, (0,))

    def test_symmetry(self, corpus_grid):
        _, g = corpus_grid
        gm = gamma(g)
        assert gm.invert_vars() == gm * (-1) ** g.mu

    def test_split_unions(self, unknot, hopf, trefoil):
        for g in (disjoint_union(unknot, unknot), disjoint_union(hopf, unknot), disjoint_union(trefoil, unknot)):
            assert gamma(g).is_zero()

