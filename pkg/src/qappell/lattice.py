"""Askey-Wilson divided difference and averaging operators on the q-quadratic lattice.

The lattice is ``x(s) = (q^s + q^-s)/2``.  Writing ``w = q^s`` the half-step
shifts ``s -> s +- 1/2`` become ``w -> v^{+-1} w`` with ``v = q^{1/2}``, so both
operators act exactly on Laurent polynomials in ``w``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    LaurentPoly,
    ScalarLike,
    ZPoly,
    format_scalar,
    laurent_divide_exact,
    laurent_scale,
    laurent_to_z,
    to_scalar,
    z_to_laurent,
)

__all__ = [
    "BadIndex",
    "LatticeParam",
    "SeqKind",
    "seq",
    "alpha_n",
    "gamma_n",
    "structural_poly",
    "apply_Dq",
    "apply_Sq",
    "Dq_power",
    "identity_residual",
]


class BadIndex(IndexError):
    pass


@dataclass(frozen=True)
class LatticeParam:
    """Lattice base given through ``v = q^{1/2}`` (rational, positive, not 1)."""

    v: Fraction

    def __post_init__(self):
        v = to_scalar(self.v)
        if v <= 0 or v == 1:
            raise ValueError(f"v must be a positive rational different from 1, got {v}")
        object.__setattr__(self, "v", v)

    @classmethod
    def from_q(cls, q: ScalarLike) -> "LatticeParam":
        """Build from q when q is the square of a rational."""
        q = to_scalar(q)
        num, den = _isqrt_exact(q.numerator), _isqrt_exact(q.denominator)
        if num is None or den is None:
            raise ValueError(f"q = {q} has no rational square root")
        return cls(Fraction(num, den))

    @property
    def q(self) -> Fraction:
        return self.v * self.v

    @property
    def alpha(self) -> Fraction:
        return (self.v + 1 / self.v) / 2

    def inverted(self) -> "LatticeParam":
        """The same lattice read with base 1/q."""
        return LatticeParam(1 / self.v)

    def qpow(self, half_exponent: int) -> Fraction:
        """``q**(half_exponent/2)``, i.e. ``v**half_exponent``."""
        return self.v ** half_exponent

    def __str__(self):
        return format_scalar(self.v)


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


class SeqKind(enum.Enum):
    AlphaN = "alpha"
    GammaN = "gamma"
    UN = "u"
    UHatN = "uhat"


def alpha_n(n: int, lp: LatticeParam) -> Fraction:
    """``(q^{n/2} + q^{-n/2})/2``; valid for every integer n (alpha_{-1} = alpha)."""
    v = lp.v
    return (v ** n + v ** (-n)) / 2


def gamma_n(n: int, lp: LatticeParam) -> Fraction:
    """``(q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2})``; gamma_{-1} = -1 falls out."""
    v = lp.v
    return (v ** n - v ** (-n)) / (v - 1 / v)


def seq(kind: SeqKind, n: int, lp: LatticeParam) -> Fraction:
    if kind in (SeqKind.AlphaN, SeqKind.GammaN):
        if n < -1:
            raise BadIndex(f"{kind.name} defined for n >= -1, got {n}")
        return alpha_n(n, lp) if kind is SeqKind.AlphaN else gamma_n(n, lp)
    if n < 0:
        raise BadIndex(f"{kind.name} defined for n >= 0, got {n}")
    if kind is SeqKind.UN:
        return (n * gamma_n(n - 2, lp) - (n - 2) * gamma_n(n, lp)) / 4
    if kind is SeqKind.UHatN:
        return Fraction(n, 4) * (alpha_n(n - 2, lp) - alpha_n(n, lp))
    raise ValueError(kind)


def structural_poly(which: str, lp: LatticeParam) -> ZPoly:
    """``U1 = (alpha^2-1) z`` and ``U2 = (alpha^2-1)(z^2-1)``."""
    c = lp.alpha ** 2 - 1
    if which == "U1":
        return ZPoly([0, c])
    if which == "U2":
        return ZPoly([-c, 0, c])
    raise ValueError(f"unknown structural polynomial {which!r}")


def _shifts(p: ZPoly, lp: LatticeParam):
    hat = z_to_laurent(p)
    return laurent_scale(hat, lp.v), laurent_scale(hat, 1 / lp.v)


@lru_cache(maxsize=64)
def _lattice_step(v: Fraction) -> LaurentPoly:
    # x(s+1/2) - x(s-1/2) = (v - 1/v)(w - 1/w)/2
    h = (v - 1 / v) / 2
    return LaurentPoly(-1, [-h, 0, h])


def apply_Dq(p: ZPoly, lp: LatticeParam) -> ZPoly:
    """Askey-Wilson divided difference; lowers the degree by exactly one."""
    if p.degree < 1:
        return ZPoly()
    up, down = _shifts(p, lp)
    quotient = laurent_divide_exact(up - down, _lattice_step(lp.v))
    return laurent_to_z(quotient)


def apply_Sq(p: ZPoly, lp: LatticeParam) -> ZPoly:
    """Averaging operator; preserves the degree."""
    if p.degree < 1:
        return p
    up, down = _shifts(p, lp)
    return laurent_to_z((up + down) * Fraction(1, 2))


def Dq_power(p: ZPoly, n: int, lp: LatticeParam) -> ZPoly:
    for _ in range(n):
        p = apply_Dq(p, lp)
    return p


def identity_residual(which: str, f: ZPoly, g: ZPoly | None, lp: LatticeParam, n: int = 0) -> ZPoly:
    """LHS - RHS of one of the operator product/commutation identities.

    ``which`` is one of ``"ProductD"``, ``"ProductS"`` (both need ``g``),
    ``"SqSquared"`` or ``"DqnSq"`` (uses ``n``).  The result is always the zero
    polynomial; anything else is a bug in the operator kernels.
    """
    D = lambda h: apply_Dq(h, lp)  # noqa: E731
    S = lambda h: apply_Sq(h, lp)  # noqa: E731
    needs_g = which in ("ProductD", "ProductS")
    if needs_g != (g is not None):
        raise ValueError(f"{which}: g must be {'given' if needs_g else 'absent'}")
    U1 = structural_poly("U1", lp)
    U2 = structural_poly("U2", lp)
    if which == "ProductD":
        return D(f * g) - (D(f) * S(g) + S(f) * D(g))
    if which == "ProductS":
        return S(f * g) - (D(f) * D(g) * U2 + S(f) * S(g))
    if which == "SqSquared":
        return lp.alpha * S(S(f)) - (S(U1 * D(f)) + U2 * D(D(f)) + lp.alpha * f)
    if which == "DqnSq":
        if n < 0:
            raise BadIndex("n must be >= 0")
        lhs = Dq_power(S(f), n, lp)
        rhs = alpha_n(n, lp) * S(Dq_power(f, n, lp)) + gamma_n(n, lp) * U1 * Dq_power(f, n + 1, lp)
        return lhs - rhs
    raise ValueError(f"unknown identity {which!r}")
