"""Monic orthogonal polynomial sequences from three-term recurrences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import ScalarLike, ZPoly, format_scalar, to_scalar
from .lattice import BadIndex, LatticeParam

__all__ = [
    "ZeroC",
    "TTRR",
    "OpsFamily",
    "generate_ops",
    "alsc_ttrr",
    "expand_in_basis",
    "subleading",
    "DEFAULT_HORIZON",
]

DEFAULT_HORIZON = 20


class ZeroC(ArithmeticError):
    """A recurrence coefficient C_n vanished: the functional is not regular there."""


@dataclass(frozen=True)
class TTRR:
    """Recurrence data ``P_{n+1} = (z - B_n) P_n - C_n P_{n-1}``.

    ``B`` holds B_0..B_N and ``C`` holds C_1..C_N (C_0 is never used).
    """

    B: tuple
    C: tuple

    def __post_init__(self):
        B = tuple(to_scalar(b) for b in self.B)
        C = tuple(to_scalar(c) for c in self.C)
        if len(C) != len(B) - 1:
            raise ValueError("need len(C) == len(B) - 1 (B_0..B_N, C_1..C_N)")
        for n, c in enumerate(C, start=1):
            if c == 0:
                raise ZeroC(f"C_{n} = 0")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @classmethod
    def from_functions(cls, B: Callable[[int], ScalarLike], C: Callable[[int], ScalarLike], N: int) -> "TTRR":
        return cls(tuple(B(n) for n in range(N + 1)), tuple(C(n) for n in range(1, N + 1)))

    @property
    def horizon(self) -> int:
        return len(self.B) - 1

    def b(self, n: int) -> Fraction:
        if not 0 <= n <= self.horizon:
            raise BadIndex(f"B_{n} outside 0..{self.horizon}")
        return self.B[n]

    def c(self, n: int) -> Fraction:
        if not 1 <= n <= self.horizon:
            raise BadIndex(f"C_{n} outside 1..{self.horizon}")
        return self.C[n - 1]

    def to_json(self) -> dict:
        return {"B": [format_scalar(b) for b in self.B], "C": [format_scalar(c) for c in self.C]}

    @classmethod
    def from_json(cls, data: dict) -> "TTRR":
        return cls(tuple(to_scalar(b) for b in data["B"]), tuple(to_scalar(c) for c in data["C"]))


@dataclass(frozen=True)
class OpsFamily:
    polynomials: tuple
    source: TTRR

    @property
    def horizon(self) -> int:
        return len(self.polynomials) - 1

    def __getitem__(self, n: int) -> ZPoly:
        if n == -1:
            return ZPoly()
        if not 0 <= n <= self.horizon:
            raise BadIndex(f"P_{n} outside -1..{self.horizon}")
        return self.polynomials[n]

    def __len__(self):
        return len(self.polynomials)

    def to_json(self) -> dict:
        data = self.source.to_json()
        data["P"] = [p.to_json() for p in self.polynomials]
        return data


_Z = ZPoly([0, 1])


def generate_ops(ttrr: TTRR) -> OpsFamily:
    """P_0..P_N from the recurrence, starting from P_{-1} = 0 and P_0 = 1."""
    prev, cur = ZPoly(), ZPoly([1])
    polys = [cur]
    for n in range(ttrr.horizon):
        nxt = (_Z - ttrr.B[n]) * cur
        if n >= 1:
            nxt = nxt - ttrr.c(n) * prev
        prev, cur = cur, nxt
        polys.append(cur)
    return OpsFamily(tuple(polys), ttrr)


def alsc_ttrr(a: ScalarLike, b: ScalarLike, lp: LatticeParam, N: int = DEFAULT_HORIZON) -> TTRR:
    """Recurrence of the monic Al-Salam-Chihara polynomials Q_n(z; a, b | q)."""
    a, b, q = to_scalar(a), to_scalar(b), lp.q
    B = [(a + b) * q ** n / 2 for n in range(N + 1)]
    C = []
    for n in range(1, N + 1):
        c = (1 - a * b * q ** (n - 1)) * (1 - q ** n) / 4
        if c == 0:
            raise ZeroC(f"C_{n} = 0 for a = {a}, b = {b}, q = {q}")
        C.append(c)
    return TTRR(tuple(B), tuple(C))


def expand_in_basis(p: ZPoly, fam: OpsFamily) -> list:
    """Coefficients c_0..c_deg with ``p == sum(c_k * P_k)``."""
    if p.degree > fam.horizon:
        raise BadIndex(f"degree {p.degree} exceeds family horizon {fam.horizon}")
    rem = p
    out = [Fraction(0)] * (p.degree + 1)
    for k in range(p.degree, -1, -1):
        c = rem.coeff(k)
        if c:
            out[k] = c
            rem = rem - c * fam[k]
    return out


def combine(coeffs: Sequence[ScalarLike], fam: OpsFamily) -> ZPoly:
    """Inverse of :func:`expand_in_basis`."""
    acc = ZPoly()
    for k, c in enumerate(coeffs):
        acc = acc + to_scalar(c) * fam[k]
    return acc


def subleading(fam: OpsFamily, n: int) -> tuple:
    """``(f_n, g_n)`` in ``P_n = z^n + f_n z^{n-1} + g_n z^{n-2} + ...``."""
    if not 0 <= n <= fam.horizon:
        raise BadIndex(f"n = {n} outside 0..{fam.horizon}")
    p = fam[n]
    f = p.coeff(n - 1) if n >= 1 else Fraction(0)
    g = p.coeff(n - 2) if n >= 2 else Fraction(0)
    return f, g
