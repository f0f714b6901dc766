"""Appell-type OPS for the composite lowering operators ``S D`` and ``D S``.

Case 1 is ``S_q D_q P_n = k_n P_{n-1}`` with ``k_n = gamma_n alpha_{n-1}``;
case 2 is ``D_q S_q P_n = r_n P_{n-1}`` with ``r_n = gamma_{2n} / 2``.  The
module provides the solution families, residual checks for the structure
relations and difference systems they satisfy, and the functional equations
of the corresponding moment functionals.

Quantities at indices that do not exist (``P_{-2}``, ``C_0``, ``B_{-1}`` ...)
evaluate to :data:`MISSING`.  A missing value multiplied by an exact zero is
zero; anything else that touches it stays missing, and a missing residual
raises :class:`BadIndex`.  This is what fixes the validity range of each check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ZPoly, format_scalar
from .functionals import (
    HorizonExceeded,
    MomentFunctional,
    functional_Dq,
    functional_Sq,
    leftmul,
)
from .lattice import BadIndex, LatticeParam, alpha_n, apply_Dq, apply_Sq, gamma_n, structural_poly
from .ops import TTRR, OpsFamily, expand_in_basis
from .pearson import PearsonData

__all__ = [
    "MISSING",
    "PoleInFamily",
    "AppellCase",
    "AppellReport",
    "Residual",
    "solution_family",
    "appell_residual",
    "structure_coeffs",
    "structure_residual",
    "structure_crosscheck",
    "resolve_a3_factor",
    "system_residual",
    "functional_equation_residual",
    "falsify_family",
    "case1_pearson_pair",
    "STRUCTURE_RELATIONS",
    "SYSTEM_EQUATIONS",
]


class PoleInFamily(ZeroDivisionError):
    pass


class _Missing:
    __slots__ = ()

    def __repr__(self):
        return "MISSING"

    def __add__(self, other):
        return self

    __radd__ = __sub__ = __rsub__ = __truediv__ = __rtruediv__ = __pow__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if other is not self and other == 0:
            return 0
        return self

    __rmul__ = __mul__


MISSING = _Missing()


def _defined(x, what: str):
    if x is MISSING:
        raise BadIndex(f"{what} involves an undefined index with a nonzero multiplier")
    return x


@dataclass(frozen=True)
class AppellCase:
    case: int
    sign: int = 1

    def __post_init__(self):
        if self.case not in (1, 2):
            raise ValueError("case must be 1 or 2")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def lowering(self, n: int, lp: LatticeParam) -> Fraction:
        """Leading-coefficient lowering factor: gamma_n alpha_{n-1} or gamma_{2n}/2."""
        if n < 0:
            raise BadIndex(f"lowering coefficient undefined at n = {n}")
        if n == 0:
            return Fraction(0)
        if self.case == 1:
            return gamma_n(n, lp) * alpha_n(n - 1, lp)
        return gamma_n(2 * n, lp) / 2

    @property
    def sign_text(self) -> str:
        return "+1" if self.sign > 0 else "-1"


@dataclass(frozen=True)
class Residual:
    index: int
    value: object
    label: str = ""

    @property
    def is_zero(self) -> bool:
        v = self.value
        if isinstance(v, (list, tuple)):
            return all(x == 0 for x in v)
        return v == 0


def _encode(value) -> str:
    if isinstance(value, ZPoly):
        return str(value)
    if isinstance(value, (list, tuple)):
        nonzero = [f"{m}:{format_scalar(x)}" for m, x in enumerate(value) if x != 0]
        return "0" if not nonzero else "[" + ", ".join(nonzero) + "]"
    return format_scalar(Fraction(value))


@dataclass
class AppellReport:
    check: str
    residuals: list
    case: int | None = None
    sign: int | None = None
    v: Fraction | None = None
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.is_zero for r in self.residuals)

    def to_dict(self) -> dict:
        out = {"check": self.check}
        if self.case is not None:
            out["case"] = self.case
        if self.sign is not None:
            out["sign"] = "+1" if self.sign > 0 else "-1"
        if self.v is not None:
            out["v"] = format_scalar(self.v)
        out["residuals"] = []
        for r in self.residuals:
            item = {"index": r.index, "value": _encode(r.value)}
            if r.label:
                item["label"] = r.label
            out["residuals"].append(item)
        out["pass"] = self.passed
        if self.note:
            out["note"] = self.note
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def solution_family(ac: AppellCase, lp: LatticeParam, N: int) -> tuple:
    """Recurrence and lowering coefficients k_0..k_N of the case's solution.

    Case 1: ``B_n = 0``, ``C_{n+1} = (1 - q^{s(n+1)})(1 + q^{sn}) / 4``.
    Case 2: ``B_n = 0``, ``C_{n+1} = (1 - q^{2s(n+1)}) / 4``.
    """
    q, s = lp.q, ac.sign
    if ac.case == 1:
        C = lambda n: Fraction(1, 4) * (1 - q ** (s * n)) * (1 + q ** (s * (n - 1)))  # noqa: E731
    else:
        C = lambda n: Fraction(1, 4) * (1 - q ** (2 * s * n))  # noqa: E731
    ttrr = TTRR.from_functions(lambda n: 0, C, N)
    ks = [ac.lowering(n, lp) for n in range(N + 1)]
    return ttrr, ks


def case1_pearson_pair(sign: int, lp: LatticeParam) -> PearsonData:
    """Pearson pair satisfied by the case-1 solution functional of the given sign.

    ``phi = -(s/2)(q^{1/2} - q^{-1/2})(z^2 - 1)`` and ``psi = z``.
    """
    a = -Fraction(sign, 2) * (lp.v - 1 / lp.v)
    return PearsonData.of(a, 0, -a, 1, 0)


class _Ctx:
    """Index-safe access to the sequences used by the relations."""

    def __init__(self, ks, ttrr: TTRR, lp: LatticeParam, fam: OpsFamily | None = None):
        self.ks = list(ks)
        self.ttrr = ttrr
        self.lp = lp
        self.fam = fam
        self.alpha = lp.alpha
        self.A = 2 * lp.alpha ** 2 - 1

    def B(self, n):
        return self.ttrr.B[n] if 0 <= n <= self.ttrr.horizon else MISSING

    def C(self, n):
        return self.ttrr.C[n - 1] if 1 <= n <= self.ttrr.horizon else MISSING

    def k(self, n):
        return self.ks[n] if 0 <= n < len(self.ks) else MISSING

    def t(self, n):
        c = self.C(n)
        if c is MISSING:
            return MISSING
        return self.k(n) / c

    def P(self, n):
        if self.fam is None:
            raise ValueError("no family attached")
        if n == -1:
            return ZPoly()
        if 0 <= n <= self.fam.horizon:
            return self.fam[n]
        return MISSING


# -- structure relations -------------------------------------------------------

A3_FACTORS: dict = {
    "alpha^2": lambda lp: lp.alpha ** 2,
    "2alpha^2-1": lambda lp: 2 * lp.alpha ** 2 - 1,
    "1": lambda lp: Fraction(1),
}
PRINTED_A3_FACTOR = "alpha^2"


def _case1_coeffs(x: _Ctx, n: int, a3_factor: str = PRINTED_A3_FACTOR) -> dict:
    A, B, C, k = x.A, x.B, x.C, x.k
    a = lambda m: k(m + 1) - A * k(m) - 1  # noqa: E731
    b = lambda m: (B(m) - A * B(m - 1)) * k(m)  # noqa: E731
    c = lambda m: k(m - 1) * C(m) - A * k(m) * C(m - 1)  # noqa: E731
    f3 = A3_FACTORS[a3_factor](x.lp)
    return {
        "a": a(n),
        "b": b(n),
        "c": c(n),
        "a1": a(n + 1) - a(n),
        "a2": b(n + 1) - b(n),
        "a3": c(n + 1) - c(n) + (B(n) - B(n - 1)) * b(n) + (a(n - 1) - f3 * a(n)) * C(n),
        "a4": (B(n) - B(n - 2)) * c(n) + b(n - 1) * C(n) - b(n) * C(n - 1),
        "a5": c(n - 1) * C(n) - c(n) * C(n - 2),
        "s0": 2 * alpha_n(n, x.lp) ** 2,
        "s1": k(n) * (B(n) - B(n - 1)),
        "s2": k(n - 1) * C(n) - k(n) * C(n - 1),
    }


def _case2_coeffs(x: _Ctx, n: int) -> dict:
    A, B, C, r, al = x.A, x.B, x.C, x.k, x.alpha
    A4 = 4 * al ** 2 - 3
    a = lambda m: r(m + 1) - A4 * r(m) - al  # noqa: E731
    b = lambda m: (B(m) - A4 * B(m - 1)) * r(m)  # noqa: E731
    c = lambda m: r(m - 1) * C(m) - A4 * r(m) * C(m - 1)  # noqa: E731
    return {
        "a": a(n),
        "b": b(n),
        "c": c(n),
        "b1": a(n + 1) - A * a(n),
        "b2": b(n + 1) - A * b(n) - 2 * (al ** 2 - 1) * a(n) * B(n),
        "b3": c(n + 1) - A * c(n) + (B(n) - A * B(n - 1)) * b(n) + (a(n - 1) - A * a(n)) * C(n),
        "b4": (B(n) - A * B(n - 2)) * c(n) + b(n - 1) * C(n) - A * b(n) * C(n - 1),
        "b5": c(n - 1) * C(n) - A * c(n) * C(n - 2),
        "c1": r(n + 1) - A * r(n) + al,
        "c2": (B(n) - A * B(n - 1)) * r(n),
        "c3": r(n - 1) * C(n) - A * r(n) * C(n - 1),
    }


def _lhs_case1(which: str, p: ZPoly, lp: LatticeParam) -> ZPoly:
    al, U2 = lp.alpha, structural_poly("U2", lp)
    if which == "Dx2":
        return 2 * al * U2 * apply_Dq(apply_Dq(p, lp), lp)
    if which == "DxSx":
        return 4 * al * U2 * apply_Dq(apply_Sq(p, lp), lp)
    return 2 * apply_Sq(apply_Sq(p, lp), lp)


def _lhs_case2(which: str, p: ZPoly, lp: LatticeParam) -> ZPoly:
    al = lp.alpha
    w = ZPoly([-al ** 2, 0, 1]) * (al ** 2 - 1)
    if which == "Dx2":
        return 2 * w * apply_Dq(apply_Dq(p, lp), lp)
    if which == "DxSx":
        # the third case-2 relation carries S D on its left side
        return 4 * al * w * apply_Sq(apply_Dq(p, lp), lp)
    return 2 * al * apply_Sq(apply_Sq(p, lp), lp)


# (coefficient name, offset of P_{n+offset}) on each right-hand side
STRUCTURE_RELATIONS: dict = {
    (1, "Dx2"): (("a", 0), ("b", -1), ("c", -2)),
    (1, "DxSx"): (("a1", 1), ("a2", 0), ("a3", -1), ("a4", -2), ("a5", -3)),
    (1, "Sx2"): (("s0", 0), ("s1", -1), ("s2", -2)),
    (2, "Dx2"): (("a", 0), ("b", -1), ("c", -2)),
    (2, "DxSx"): (("b1", 1), ("b2", 0), ("b3", -1), ("b4", -2), ("b5", -3)),
    (2, "Sx2"): (("c1", 0), ("c2", -1), ("c3", -2)),
}


def structure_coeffs(
    ac: AppellCase,
    ks,
    ttrr: TTRR,
    lp: LatticeParam,
    n: int,
    names=None,
    a3_factor: str = PRINTED_A3_FACTOR,
) -> dict:
    """Right-hand-side coefficients of the structure relations at index n.

    Values are the formulas as printed.  ``names`` restricts the result; a
    requested coefficient that depends on an undefined index raises BadIndex.
    ``a3_factor`` selects the multiplier of ``a_n`` inside case-1 ``a3``.
    """
    if n < 0:
        raise BadIndex("n must be >= 0")
    x = _Ctx(ks, ttrr, lp)
    allc = _case1_coeffs(x, n, a3_factor) if ac.case == 1 else _case2_coeffs(x, n)
    if names is None:
        names = list(allc)
    out = {}
    for name in names:
        if name not in allc:
            raise KeyError(f"case {ac.case} has no coefficient {name!r}")
        out[name] = _defined(allc[name], f"coefficient {name} at n = {n}")
    return out


def _relation_parts(ac, which, fam, ks, ttrr, lp, n, a3_factor):
    if (ac.case, which) not in STRUCTURE_RELATIONS:
        raise ValueError(f"unknown structure relation {which!r}")
    if n < 0:
        raise BadIndex("n must be >= 0")
    x = _Ctx(ks, ttrr, lp, fam)
    coeffs = _case1_coeffs(x, n, a3_factor) if ac.case == 1 else _case2_coeffs(x, n)
    P = x.P(n)
    if P is MISSING:
        raise BadIndex(f"P_{n} beyond family horizon")
    lhs = _lhs_case1(which, P, lp) if ac.case == 1 else _lhs_case2(which, P, lp)
    return x, coeffs, lhs


def structure_residual(
    ac: AppellCase,
    which: str,
    fam: OpsFamily,
    ks,
    ttrr: TTRR,
    lp: LatticeParam,
    n: int,
    a3_factor: str = PRINTED_A3_FACTOR,
) -> ZPoly:
    """LHS - RHS of structure relation ``which`` ("Dx2", "DxSx" or "Sx2")."""
    x, coeffs, lhs = _relation_parts(ac, which, fam, ks, ttrr, lp, n, a3_factor)
    rhs = ZPoly()
    for name, off in STRUCTURE_RELATIONS[(ac.case, which)]:
        rhs = rhs + coeffs[name] * x.P(n + off)
    return _defined(lhs - rhs, f"structure relation {which} at n = {n}")


def structure_crosscheck(
    ac: AppellCase,
    which: str,
    fam: OpsFamily,
    ks,
    ttrr: TTRR,
    lp: LatticeParam,
    n: int,
    a3_factor: str = PRINTED_A3_FACTOR,
) -> list:
    """Compare the printed coefficients with an expansion of the LHS in the OPS.

    Returns a list of ``(name, printed, oracle)`` triples where they disagree,
    plus ``("P_j", 0, value)`` entries for basis components the printed RHS
    does not have at all.  An empty list means the printed relation is exact.
    """
    x, coeffs, lhs = _relation_parts(ac, which, fam, ks, ttrr, lp, n, a3_factor)
    oracle = expand_in_basis(lhs, fam)
    seen = set()
    out = []
    for name, off in STRUCTURE_RELATIONS[(ac.case, which)]:
        j = n + off
        seen.add(j)
        want = oracle[j] if 0 <= j < len(oracle) else Fraction(0)
        got = coeffs[name]
        if j < 0:
            # P_{-1} = 0 and lower indices carry no basis component
            continue
        got = _defined(got, f"coefficient {name} at n = {n}")
        if got != want:
            out.append((name, got, want))
    for j, val in enumerate(oracle):
        if j not in seen and val != 0:
            out.append((f"P_{j}", Fraction(0), val))
    return out


def resolve_a3_factor(ks, ttrr: TTRR, fam: OpsFamily, lp: LatticeParam, ns) -> list:
    """Names of the candidate a_n multipliers in case-1 ``a3`` that match the oracle at every n."""
    ac = AppellCase(1)
    supported = []
    for name in A3_FACTORS:
        ok = True
        for n in ns:
            try:
                bad = structure_crosscheck(ac, "DxSx", fam, ks, ttrr, lp, n, a3_factor=name)
            except BadIndex:
                continue
            if any(b[0] == "a3" for b in bad):
                ok = False
                break
        if ok:
            supported.append(name)
    return supported


# -- difference systems ----------------------------------------------------------

def _system_case1(x: _Ctx, eq: str, n: int):
    A, B, C, k, t = x.A, x.B, x.C, x.k, x.t
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if eq == "S1":
        return k(n + 2) - half - 2 * A * (k(n + 1) - half) + k(n) - half
    if eq == "S2":
        return t(n + 2) - 2 * A * t(n + 1) + t(n)
    if eq == "S3":
        return k(n + 1) * B(n + 1) + (k(n + 1) - k(n + 2) - 2 * A * k(n)) * B(n) + k(n) * B(n - 1)
    if eq == "S4":
        return t(n + 3) * B(n + 2) - (t(n + 2) + t(n + 1)) * B(n + 1) + t(n) * B(n)
    if eq == "S5":
        lhs = (
            (t(n + 1) + t(n + 2)) * (C(n + 1) - quarter)
            - 4 * x.alpha ** 2 * t(n) * (C(n) - quarter)
            + (t(n - 1) + t(n - 2)) * (C(n - 1) - quarter)
        )
        return lhs - t(n) * (B(n) ** 2 - 2 * A * B(n) * B(n - 1) + B(n - 1) ** 2)
    raise ValueError(f"unknown equation {eq!r}")


def _system_case2(x: _Ctx, eq: str, n: int):
    A, B, C, r, t = x.A, x.B, x.C, x.k, x.t
    quarter = Fraction(1, 4)
    if eq == "S1":
        return r(n + 2) - 2 * A * r(n + 1) + r(n)
    if eq == "S2":
        return t(n + 2) - 2 * A * t(n + 1) + t(n)
    if eq == "S3":
        return r(n + 1) * B(n + 1) - (4 * x.alpha ** 2 - 3) * (r(n) + r(n + 1)) * B(n) + r(n) * B(n - 1)
    if eq == "S4":
        return t(n + 3) * B(n + 2) - (t(n + 2) + t(n + 1)) * B(n + 1) + t(n) * B(n)
    if eq == "S5":
        lhs = t(n + 2) * (C(n + 1) - quarter) - 2 * t(n) * (C(n) - quarter) + t(n - 2) * (C(n - 1) - quarter)
        return lhs - t(n) * (B(n) ** 2 - 2 * A * B(n) * B(n - 1) + B(n - 1) ** 2)
    raise ValueError(f"unknown equation {eq!r}")


SYSTEM_EQUATIONS = ("S1", "S2", "S3", "S4", "S5")


def system_residual(ac: AppellCase, eq: str, ks, ttrr: TTRR, lp: LatticeParam, n: int) -> Fraction:
    """Left side of difference equation ``eq`` at index n (zero on solutions)."""
    if n < 0:
        raise BadIndex("n must be >= 0")
    x = _Ctx(ks, ttrr, lp)
    val = _system_case1(x, eq, n) if ac.case == 1 else _system_case2(x, eq, n)
    return Fraction(_defined(val, f"equation {eq} at n = {n}"))


def initial_condition_residual(ks, ttrr: TTRR, lp: LatticeParam, n: int) -> Fraction:
    """Residual of the case-1 relation expressing ``C_{n+1} - 1/4`` through earlier C_l (n >= 1)."""
    if n < 1:
        raise BadIndex("relation holds for n >= 1")
    x = _Ctx(ks, ttrr, lp)
    k, C = x.k, x.C
    quarter = Fraction(1, 4)
    tail = 0
    for l in range(1, n + 1):
        tail = tail + (C(l) - quarter)
    rhs = (k(n) - k(n + 2) + gamma_n(n + 2, lp) * alpha_n(n - 1, lp)) / (4 * k(n)) + (k(n + 2) - k(n)) / k(n) * tail
    return Fraction(_defined(C(n + 1) - quarter - rhs, f"initial condition at n = {n}"))


# -- Appell equation and functional equations -------------------------------------

def appell_residual(ac: AppellCase, fam: OpsFamily, ks, lp: LatticeParam, n: int) -> ZPoly:
    """``S D P_n - k_n P_{n-1}`` (case 1) or ``D S P_n - r_n P_{n-1}`` (case 2)."""
    if not 1 <= n <= fam.horizon or n >= len(ks):
        raise BadIndex(f"n = {n} outside 1..{min(fam.horizon, len(ks) - 1)}")
    p = fam[n]
    if ac.case == 1:
        lhs = apply_Sq(apply_Dq(p, lp), lp)
    else:
        lhs = apply_Dq(apply_Sq(p, lp), lp)
    return lhs - ks[n] * fam[n - 1]


def _functional_sides(ac: AppellCase, which: int, u: MomentFunctional, lp: LatticeParam):
    D = lambda w: functional_Dq(w, lp)  # noqa: E731
    S = lambda w: functional_Sq(w, lp)  # noqa: E731
    s, al = ac.sign, lp.alpha
    qs = lambda h: lp.v ** (h * s)  # q^{h s / 2}  # noqa: E731
    z = ZPoly([0, 1])
    z2 = ZPoly([0, 0, 1])
    if ac.case == 1:
        U2 = structural_poly("U2", lp)
        if which == 1:
            return (qs(2) - 1) * D(S(u)), leftmul(2 * z, u)
        if which == 2:
            return 2 * qs(3) * D(D(leftmul(U2, u))), leftmul(-(2 * z2 + (qs(2) - 1)), u)
        if which == 3:
            return 2 * qs(2) * S(S(u)), leftmul(-2 * z2 + (1 + qs(2)), u)
        if which == 4:
            return 8 * qs(5) * S(D(leftmul(U2, u))), leftmul((1 - qs(2)) * z * (-4 * z2 + (qs(4) + 3)), u)
    else:
        w = ZPoly([-al ** 2, 0, 1])
        if which == 1:
            return qs(1) * (qs(2) - 1) * S(D(u)), leftmul(2 * z, u)
        if which == 2:
            return 4 * (al ** 2 - 1) * qs(5) * D(D(leftmul(w, u))), leftmul(-4 * z2 + (1 - qs(4)), u)
        if which == 3:
            return 4 * qs(4) * S(S(u)), leftmul(-4 * z2 + (1 + 3 * qs(4)), u)
        if which == 4:
            return 2 * qs(6) * (1 - qs(2)) * D(S(leftmul(w, u))), leftmul(z * (-4 * z2 + (qs(8) + qs(4) + 2)), u)
    raise ValueError(f"functional equation index must be 1..4, got {which}")


def functional_equation_residual(ac: AppellCase, which: int, u: MomentFunctional, lp: LatticeParam, M: int) -> list:
    """``<LHS - RHS, z^m>`` for m = 0..M of functional equation ``which`` (1..4)."""
    if u.horizon < M + 3:
        raise HorizonExceeded(f"need horizon >= {M + 3}, have {u.horizon}")
    lhs, rhs = _functional_sides(ac, which, u, lp)
    diff = lhs - rhs
    return list(diff.moments[: M + 1])


# -- falsification ---------------------------------------------------------------

def perturbed_case1_ttrr(r: Fraction, lp: LatticeParam, N: int) -> TTRR:
    """B = 0 and ``C_n = (1 - q^n)(1 + q^{n-1}) / (4 (1 - r q^{2n}))``."""
    q = lp.q
    r = Fraction(r)
    for n in range(1, N + 1):
        if 1 - r * q ** (2 * n) == 0:
            raise PoleInFamily(f"1 - r q^{2 * n} = 0 at n = {n}")
    return TTRR.from_functions(
        lambda n: 0, lambda n: (1 - q ** n) * (1 + q ** (n - 1)) / (4 * (1 - r * q ** (2 * n))), N
    )


def falsify_family(r, lp: LatticeParam, N: int = 10) -> AppellReport:
    """Check the one-parameter family that the case-1 system must single out at r = 0.

    Evaluates equation S5 and the initial-condition relation for every n <= N
    where both are defined; the report passes iff all residuals vanish.
    """
    r = Fraction(r)
    ac = AppellCase(1)
    ttrr = perturbed_case1_ttrr(r, lp, N + 3)
    ks = [ac.lowering(n, lp) for n in range(N + 4)]
    residuals = []
    for n in range(0, N + 1):
        try:
            residuals.append(Residual(n, system_residual(ac, "S5", ks, ttrr, lp, n), "S5"))
        except BadIndex:
            pass
    for n in range(1, N + 1):
        residuals.append(Residual(n, initial_condition_residual(ks, ttrr, lp, n), "initial-conditions"))
    return AppellReport(
        check="falsify",
        residuals=residuals,
        case=1,
        sign=1,
        v=lp.v,
        extra={"r": format_scalar(r)},
    )

