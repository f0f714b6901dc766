"""Pearson-type distributional equation ``D(phi u) = S(psi u)``.

``phi = a z^2 + b z + c`` and ``psi = d z + e`` with ``d != 0``.  For such
pairs the recurrence coefficients of the monic OPS are available in closed
form, which :func:`ttrr_from_pearson` evaluates exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import ScalarLike, ZPoly, to_scalar
from .functionals import MomentFunctional, functional_Dq, functional_Sq, leftmul
from .lattice import LatticeParam, alpha_n, gamma_n
from .ops import TTRR, ZeroC

__all__ = ["Inadmissible", "PearsonData", "ttrr_from_pearson", "pearson_residual", "phi_bracket"]


class Inadmissible(ValueError):
    pass


@dataclass(frozen=True)
class PearsonData:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.d == 0:
            raise Inadmissible("psi must have degree one (d != 0)")

    @classmethod
    def of(cls, a: ScalarLike, b: ScalarLike, c: ScalarLike, d: ScalarLike, e: ScalarLike) -> "PearsonData":
        return cls(*(to_scalar(x) for x in (a, b, c, d, e)))

    @property
    def phi(self) -> ZPoly:
        return ZPoly([self.c, self.b, self.a])

    @property
    def psi(self) -> ZPoly:
        return ZPoly([self.e, self.d])

    def d_n(self, n: int, lp: LatticeParam) -> Fraction:
        return self.a * gamma_n(n, lp) + self.d * alpha_n(n, lp)

    def e_n(self, n: int, lp: LatticeParam) -> Fraction:
        return self.b * gamma_n(n, lp) + self.e * alpha_n(n, lp)

    def check_admissible(self, lp: LatticeParam, N: int) -> None:
        for k in range(-1, 2 * N + 2):
            if self.d_n(k, lp) == 0:
                raise Inadmissible(f"d_{k} = 0")


def phi_bracket(pd: PearsonData, n: int, lp: LatticeParam) -> ZPoly:
    """The quadratic ``phi^{[n]}`` entering the C_{n+1} formula."""
    al2 = lp.alpha ** 2 - 1
    lead = pd.d * al2 * gamma_n(2 * n, lp) + pd.a * alpha_n(2 * n, lp)
    lin = pd.b * alpha_n(n, lp) + pd.e * al2 * gamma_n(n, lp)
    return lead * ZPoly([Fraction(-1, 2), 0, 1]) + ZPoly([pd.c + pd.a / 2, lin])


def ttrr_from_pearson(pd: PearsonData, lp: LatticeParam, N: int) -> TTRR:
    """Recurrence coefficients B_0..B_N, C_1..C_N forced by the Pearson pair."""
    pd.check_admissible(lp, N)
    d, e = pd.d_n, pd.e_n
    B = []
    for n in range(N + 1):
        g = gamma_n(n, lp)
        # gamma_0 = 0 kills the first term at n = 0, where d_{-2} is not needed
        first = g * e(n - 1, lp) / d(2 * n - 2, lp) if g else Fraction(0)
        B.append(first - gamma_n(n + 1, lp) * e(n, lp) / d(2 * n, lp))
    C = []
    for n in range(N):
        x0 = -e(n, lp) / d(2 * n, lp)
        c = -gamma_n(n + 1, lp) * d(n - 1, lp) / (d(2 * n - 1, lp) * d(2 * n + 1, lp)) * phi_bracket(pd, n, lp)(x0)
        if c == 0:
            raise ZeroC(f"C_{n + 1} = 0: the Pearson pair does not give a regular functional")
        C.append(c)
    return TTRR(tuple(B), tuple(C))


def pearson_residual(pd: PearsonData, u: MomentFunctional, lp: LatticeParam) -> list:
    """``<D(phi u) - S(psi u), z^m>`` for ``m <= horizon - 2``."""
    if u.horizon < 2:
        return []
    lhs = functional_Dq(leftmul(pd.phi, u), lp)
    rhs = functional_Sq(leftmul(pd.psi, u), lp)
    return list((lhs - rhs).moments[: u.horizon - 1])
