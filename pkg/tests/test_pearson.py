from fractions import Fraction as F

import pytest

from qappell.appell import AppellCase, case1_pearson_pair, solution_family
from qappell.functionals import MomentFunctional, moments_from_ttrr
from qappell.lattice import LatticeParam
from qappell.ops import alsc_ttrr
from qappell.pearson import Inadmissible, PearsonData, pearson_residual, ttrr_from_pearson

HALF = LatticeParam(F(1, 2))


def literal_pair(s, lp):
    """phi = (s/2)(v - 1/v)(z^2 - 1), psi = z."""
    a = F(s, 2) * (lp.v - 1 / lp.v)
    return PearsonData.of(a, 0, -a, 1, 0)


def q_family_c(q, n):
    return F(1, 4) * (1 - q ** n) * (1 + q ** (n - 1))


class TestSignConvention:
    """With phi = (s/2)(v - 1/v)(z^2 - 1) the induced family is the one in q^{-s}."""

    @pytest.mark.parametrize("s", [1, -1])
    def test_literal_pair_gives_opposite_family(self, s):
        t = ttrr_from_pearson(literal_pair(s, HALF), HALF, 15)
        q = HALF.q ** (-s)
        assert all(b == 0 for b in t.B)
        assert all(t.c(n) == q_family_c(q, n) for n in range(1, 16))

    def test_hand_value(self):
        # mu_2 = a / (alpha + a) for psi = z, phi = a(z^2 - 1); a = -3/4 at v = 1/2
        t = ttrr_from_pearson(literal_pair(1, HALF), HALF, 2)
        assert t.c(1) == F(-3, 4) / (F(5, 4) - F(3, 4)) == F(-3, 2)

    @pytest.mark.parametrize("v", [F(1, 2), F(2, 3), F(3, 2), F(2)])
    @pytest.mark.parametrize("s", [1, -1])
    def test_case1_pair_reproduces_family(self, v, s):
        lp = LatticeParam(v)
        t = ttrr_from_pearson(case1_pearson_pair(s, lp), lp, 15)
        assert t == solution_family(AppellCase(1, s), lp, 15)[0]

    @pytest.mark.parametrize("v", [F(1, 2), F(2, 3), F(3, 2)])
    def test_matches_al_salam_chihara(self, v):
        lp = LatticeParam(v)
        assert ttrr_from_pearson(case1_pearson_pair(1, lp), lp, 12) == alsc_ttrr(1, -1, lp, 12)


class TestClosedForm:
    def test_b_e_zero_gives_symmetric(self):
        pd = PearsonData.of(F(-1, 3), 0, F(1, 2), 1, 0)
        t = ttrr_from_pearson(pd, HALF, 8)
        assert all(b == 0 for b in t.B)

    @pytest.mark.parametrize("pd", [PearsonData.of(F(-1, 3), F(1, 5), F(1, 2), 1, F(1, 7)), PearsonData.of(F(1, 4), F(-1, 2), -2, 2, 1)])
    def test_induced_moments_satisfy_equation(self, pd):
        for v in (F(1, 2), F(3, 2)):
            lp = LatticeParam(v)
            u = moments_from_ttrr(ttrr_from_pearson(pd, lp, 20))
            assert all(r == 0 for r in pearson_residual(pd, u, lp))

    def test_inadmissible(self):
        with pytest.raises(Inadmissible):
            PearsonData.of(1, 0, 0, 0, 0)
        # d_0 = d alpha_0 = d, d_1 = a + d alpha; choose a = -d alpha
        pd = PearsonData.of(-HALF.alpha, 0, 1, 1, 0)
        with pytest.raises(Inadmissible):
            ttrr_from_pearson(pd, HALF, 3)


class TestResidual:
    def test_zero_for_matching_moments(self):
        pd = case1_pearson_pair(1, HALF)
        u = moments_from_ttrr(solution_family(AppellCase(1, 1), HALF, 20)[0])
        res = pearson_residual(pd, u, HALF)
        assert len(res) == 19 and all(r == 0 for r in res)

    def test_zero_horizon(self):
        assert pearson_residual(case1_pearson_pair(1, HALF), MomentFunctional((1,)), HALF) == []

    def test_perturbed_c_detected(self):
        pd = case1_pearson_pair(1, HALF)
        bumped = PearsonData.of(pd.a, pd.b, pd.c + 1, pd.d, pd.e)
        u = moments_from_ttrr(solution_family(AppellCase(1, 1), HALF, 20)[0])
        assert any(r != 0 for r in pearson_residual(bumped, u, HALF)[:5])
