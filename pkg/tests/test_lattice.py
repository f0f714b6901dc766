from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings

from qappell.algebra import ZPoly
from qappell.lattice import (
    BadIndex,
    LatticeParam,
    SeqKind,
    apply_Dq,
    apply_Sq,
    identity_residual,
    seq,
    structural_poly,
)

from conftest import lattices, zpolys

Z = ZPoly([0, 1])
w = sp.Symbol("w")


def sympy_operators(p: ZPoly, v: F):
    """Independent oracle: substitute, shift and divide with sympy."""
    vv = sp.Rational(v.numerator, v.denominator)
    ph = lambda t: sum(sp.Rational(c.numerator, c.denominator) * ((t + 1 / t) / 2) ** k for k, c in enumerate(p.coeffs))
    x = lambda t: (t + 1 / t) / 2
    d = sp.cancel((ph(vv * w) - ph(w / vv)) / (x(vv * w) - x(w / vv)))
    s = sp.cancel((ph(vv * w) + ph(w / vv)) / 2)
    return d, s


def to_sympy_in_w(p: ZPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * ((w + 1 / w) / 2) ** k for k, c in enumerate(p.coeffs))


class TestLatticeParam:
    @pytest.mark.parametrize("bad", [F(1), F(0), F(-1, 2)])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            LatticeParam(bad)

    def test_from_q(self):
        assert LatticeParam.from_q(F(1, 4)).v == F(1, 2)
        with pytest.raises(ValueError):
            LatticeParam.from_q(F(1, 2))

    def test_alpha(self, half):
        assert half.alpha == F(5, 4)
        assert half.q == F(1, 4)


class TestSequences:
    def test_trivial_values(self, half):
        assert seq(SeqKind.GammaN, 1, half) == 1
        assert seq(SeqKind.AlphaN, 0, half) == 1

    def test_minus_one_conventions(self, half):
        assert seq(SeqKind.GammaN, -1, half) == -1
        assert seq(SeqKind.AlphaN, -1, half) == half.alpha

    def test_values_at_half(self, half):
        assert seq(SeqKind.GammaN, 3, half) == F(21, 4)
        assert seq(SeqKind.UN, 3, half) == F(-9, 16)
        assert seq(SeqKind.AlphaN, 2, half) == F(17, 8)
        assert seq(SeqKind.UHatN, 2, half) == F(-9, 16)

    @pytest.mark.parametrize("kind,n", [(SeqKind.GammaN, -2), (SeqKind.AlphaN, -2), (SeqKind.UN, -1), (SeqKind.UHatN, -1)])
    def test_bad_index(self, half, kind, n):
        with pytest.raises(BadIndex):
            seq(kind, n, half)

    def test_structural(self, half):
        assert structural_poly("U1", half) == F(9, 16) * Z
        assert structural_poly("U2", half) == F(9, 16) * (Z * Z - 1)
        for v in (F(2, 3), F(7, 3)):
            U2 = structural_poly("U2", LatticeParam(v))
            assert U2(1) == 0 and U2(-1) == 0


class TestOperators:
    def test_examples(self, half):
        assert apply_Dq(ZPoly([7]), half) == 0
        assert apply_Dq(Z * Z, half) == F(5, 2) * Z
        assert apply_Dq(Z ** 3, half) == ZPoly([F(-9, 16), 0, F(21, 4)])
        assert apply_Sq(ZPoly([1]), half) == 1
        assert apply_Sq(Z, half) == half.alpha * Z
        assert apply_Sq(Z * Z, half) == ZPoly([F(-9, 16), 0, F(17, 8)])

    @pytest.mark.parametrize("v", [F(1, 2), F(3, 2), F(2, 5)])
    def test_against_sympy(self, v):
        lp = LatticeParam(v)
        p = ZPoly([F(1, 3), -2, 0, F(5, 2), 1, F(-7, 3)])
        d, s = sympy_operators(p, v)
        assert sp.simplify(d - to_sympy_in_w(apply_Dq(p, lp))) == 0
        assert sp.simplify(s - to_sympy_in_w(apply_Sq(p, lp))) == 0

    @pytest.mark.parametrize("v", [F(1, 2), F(3, 2)])
    def test_monomial_law(self, v):
        lp = LatticeParam(v)
        for n in range(16):
            d, s = apply_Dq(Z ** n, lp), apply_Sq(Z ** n, lp)
            assert d.degree == n - 1 if n else d == 0
            assert s.degree == n
            assert d.coeff(n - 1) == seq(SeqKind.GammaN, n, lp)
            assert d.coeff(n - 2) == 0
            assert d.coeff(n - 3) == seq(SeqKind.UN, n, lp)
            assert s.coeff(n) == seq(SeqKind.AlphaN, n, lp)
            assert s.coeff(n - 1) == 0
            assert s.coeff(n - 2) == seq(SeqKind.UHatN, n, lp)

    @settings(max_examples=40)
    @given(zpolys(8), zpolys(8), lattices)
    def test_linearity(self, f, g, lp):
        assert apply_Dq(f + 3 * g, lp) == apply_Dq(f, lp) + 3 * apply_Dq(g, lp)
        assert apply_Sq(f - g, lp) == apply_Sq(f, lp) - apply_Sq(g, lp)


class TestIdentities:
    def test_examples(self, half):
        assert identity_residual("ProductD", Z, Z, half) == 0
        for v in (F(1, 2), F(3, 2)):
            assert identity_residual("SqSquared", Z * Z, None, LatticeParam(v)) == 0
        assert identity_residual("DqnSq", Z ** 3, None, half, 1) == 0

    @settings(max_examples=40)
    @given(zpolys(8), zpolys(8), lattices)
    def test_random(self, f, g, lp):
        assert identity_residual("ProductD", f, g, lp) == 0
        assert identity_residual("ProductS", f, g, lp) == 0
        assert identity_residual("SqSquared", f, None, lp) == 0
        for n in range(5):
            assert identity_residual("DqnSq", f, None, lp, n) == 0

    def test_detects_a_wrong_operator(self, half):
        # the naive Leibniz rule fails, so the corrected product rule is not vacuous
        f, g = Z ** 2, Z ** 3
        lhs = apply_Dq(f * g, half)
        assert lhs != apply_Dq(f, half) * g + f * apply_Dq(g, half)
