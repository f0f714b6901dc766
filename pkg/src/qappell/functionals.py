"""Linear functionals on polynomials, represented by truncated moment vectors.

A functional ``u`` is known through ``mu_k = <u, z^k>`` for ``k <= horizon``.
Every operation states its output horizon; asking for a moment that is not
available raises HorizonExceeded instead of silently padding with zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import ScalarLike, ZPoly, format_scalar, to_scalar
from .lattice import BadIndex, LatticeParam, alpha_n, apply_Dq, apply_Sq, gamma_n, structural_poly
from .ops import TTRR, OpsFamily, expand_in_basis, generate_ops

__all__ = [
    "HorizonExceeded",
    "MomentFunctional",
    "moments_from_ttrr",
    "pair",
    "leftmul",
    "functional_Dq",
    "functional_Sq",
    "functional_Dq_power",
    "dual_basis_pairing",
    "functional_identity_residual",
]


class HorizonExceeded(ValueError):
    pass


@dataclass(frozen=True)
class MomentFunctional:
    moments: tuple

    def __post_init__(self):
        object.__setattr__(self, "moments", tuple(to_scalar(m) for m in self.moments))

    @property
    def horizon(self) -> int:
        return len(self.moments) - 1

    def truncate(self, horizon: int) -> "MomentFunctional":
        if horizon > self.horizon:
            raise HorizonExceeded(f"cannot extend horizon {self.horizon} to {horizon}")
        return MomentFunctional(self.moments[: horizon + 1])

    def __add__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        h = min(self.horizon, other.horizon)
        return MomentFunctional(a + b for a, b in zip(self.moments[: h + 1], other.moments[: h + 1]))

    def __neg__(self):
        return MomentFunctional(-m for m in self.moments)

    def __sub__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return MomentFunctional(m * c for m in self.moments)
        return NotImplemented

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"moments": [format_scalar(m) for m in self.moments]}

    @classmethod
    def from_json(cls, data: dict) -> "MomentFunctional":
        return cls(tuple(to_scalar(m) for m in data["moments"]))


def moments_from_ttrr(ttrr: TTRR) -> MomentFunctional:
    """Moments of the functional (normalized by mu_0 = 1) whose monic OPS obeys ``ttrr``.

    ``mu_n`` is the P_0 coefficient of z^n expanded in the OPS.
    """
    fam = generate_ops(ttrr)
    mus = []
    for n in range(ttrr.horizon + 1):
        mus.append(expand_in_basis(ZPoly.monomial(n), fam)[0])
    return MomentFunctional(tuple(mus))


def pair(u: MomentFunctional, p: ZPoly) -> Fraction:
    if p.degree > u.horizon:
        raise HorizonExceeded(f"degree {p.degree} > horizon {u.horizon}")
    return sum((c * m for c, m in zip(p.coeffs, u.moments)), Fraction(0))


def leftmul(f: ZPoly, u: MomentFunctional) -> MomentFunctional:
    """``<f u, p> = <u, f p>``; the horizon drops by deg f."""
    d = max(f.degree, 0)
    if d > u.horizon:
        raise HorizonExceeded(f"degree {d} > horizon {u.horizon}")
    mus = u.moments
    out = []
    for n in range(u.horizon - d + 1):
        out.append(sum((c * mus[n + k] for k, c in enumerate(f.coeffs)), Fraction(0)))
    return MomentFunctional(tuple(out))


@lru_cache(maxsize=4096)
def _Dq_monomial(n: int, lp: LatticeParam) -> ZPoly:
    return apply_Dq(ZPoly.monomial(n), lp)


@lru_cache(maxsize=4096)
def _Sq_monomial(n: int, lp: LatticeParam) -> ZPoly:
    return apply_Sq(ZPoly.monomial(n), lp)


def functional_Dq(u: MomentFunctional, lp: LatticeParam) -> MomentFunctional:
    """Adjoint action ``<D u, f> = -<u, D f>``; horizon preserved."""
    return MomentFunctional(tuple(-pair(u, _Dq_monomial(n, lp)) for n in range(u.horizon + 1)))


def functional_Sq(u: MomentFunctional, lp: LatticeParam) -> MomentFunctional:
    """Adjoint action ``<S u, f> = <u, S f>``; horizon preserved."""
    return MomentFunctional(tuple(pair(u, _Sq_monomial(n, lp)) for n in range(u.horizon + 1)))


def functional_Dq_power(u: MomentFunctional, n: int, lp: LatticeParam) -> MomentFunctional:
    for _ in range(n):
        u = functional_Dq(u, lp)
    return u


def dual_basis_pairing(fam: OpsFamily, u: MomentFunctional, n: int, j: int) -> Fraction:
    """``<e_n, P_j>`` with ``e_n = <u, P_n^2>^{-1} P_n u``."""
    if 2 * max(n, j) > u.horizon:
        raise HorizonExceeded(f"n, j = {n}, {j} need horizon {2 * max(n, j)}, have {u.horizon}")
    Pn = fam[n]
    return pair(u, Pn * fam[j]) / pair(u, Pn * Pn)


def functional_identity_residual(which: str, f: ZPoly | None, u: MomentFunctional, lp: LatticeParam, n: int = 0) -> list:
    """Moment-wise residual ``<LHS - RHS, z^m>`` of a functional identity.

    ``"FDqW"``: ``f D w = D((S f) w) - S((D f) w)``.
    ``"DqnSqW"``: ``alpha D^n S w = alpha_{n+1} S D^n w + gamma_n U1 D^{n+1} w``.
    """
    if which == "FDqW":
        if f is None:
            raise ValueError("FDqW needs f")
        lhs = leftmul(f, functional_Dq(u, lp))
        rhs = functional_Dq(leftmul(apply_Sq(f, lp), u), lp) - functional_Sq(leftmul(apply_Dq(f, lp), u), lp)
    elif which == "DqnSqW":
        if f is not None:
            raise ValueError("DqnSqW takes no polynomial")
        if n < 0:
            raise BadIndex("n must be >= 0")
        U1 = structural_poly("U1", lp)
        lhs = lp.alpha * functional_Dq_power(functional_Sq(u, lp), n, lp)
        rhs = alpha_n(n + 1, lp) * functional_Sq(functional_Dq_power(u, n, lp), lp) + gamma_n(n, lp) * leftmul(
            U1, functional_Dq_power(u, n + 1, lp)
        )
    else:
        raise ValueError(f"unknown functional identity {which!r}")
    return list((lhs - rhs).moments)


def from_moments(moments: Sequence[ScalarLike]) -> MomentFunctional:
    return MomentFunctional(tuple(moments))
