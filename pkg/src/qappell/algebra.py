"""Exact scalars, dense z-polynomials and Laurent polynomials in w.

The lattice variable is ``z = (w + 1/w) / 2``; symmetric Laurent polynomials in
``w`` are exactly the images of polynomials in ``z``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

__all__ = [
    "Scalar",
    "ZPoly",
    "LaurentPoly",
    "AlgebraError",
    "NotSymmetric",
    "NotDivisible",
    "ZeroScale",
    "to_scalar",
    "format_scalar",
    "z_to_laurent",
    "laurent_to_z",
    "laurent_scale",
    "laurent_divide_exact",
]


class AlgebraError(ArithmeticError):
    pass


class NotSymmetric(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class ZeroScale(AlgebraError):
    pass


def to_scalar(x: ScalarLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to an exact Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if text.startswith("+"):
            text = text[1:]
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_scalar(x: Fraction) -> str:
    return str(x)


def _trim(coeffs: Iterable[Fraction]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class ZPoly:
    """Dense polynomial in z with exact rational coefficients, ascending degree.

    Instances are immutable; the zero polynomial has an empty coefficient tuple
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        object.__setattr__(self, "coeffs", _trim(to_scalar(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ZPoly is immutable")

    @classmethod
    def monomial(cls, n: int, c: ScalarLike = 1) -> "ZPoly":
        if n < 0:
            raise ValueError("negative exponent")
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: ScalarLike) -> "ZPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: ScalarLike) -> Fraction:
        x = to_scalar(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _coerce(other) -> "ZPoly | None":
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ZPoly([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return ZPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return ZPoly()
            return ZPoly([c * other for c in self.coeffs])
        if not isinstance(other, ZPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = ZPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("ZPoly", self.coeffs))

    def __repr__(self):
        return f"ZPoly([{', '.join(format_scalar(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_scalar(abs(c)) + ("*" + mono if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list:
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str] | str) -> "ZPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(to_scalar(c) for c in data)


class LaurentPoly:
    """Finitely supported two-sided coefficient sequence in w.

    ``coeffs[i]`` is the coefficient of ``w**(lo + i)``. Both ends of the
    support are nonzero; the zero polynomial has ``lo == 0`` and no coefficients.
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs: Iterable[ScalarLike]):
        cs = [to_scalar(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = list(_trim(cs[start:]))
        object.__setattr__(self, "lo", lo + start if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return cls(0, ())
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_symmetric(self) -> bool:
        if not self.coeffs:
            return True
        return self.lo == -self.hi and self.coeffs == self.coeffs[::-1]

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return LaurentPoly(lo, [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)])

    def __neg__(self):
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly(self.lo, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly(0, ())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LaurentPoly", self.lo, self.coeffs))

    def __repr__(self):
        terms = ", ".join(
            f"{self.lo + i}: {format_scalar(c)}" for i, c in enumerate(self.coeffs) if c != 0
        )
        return f"LaurentPoly({{{terms}}})"


# Coefficients of z^n = ((w + 1/w)/2)^n, indexed by exponent; cached because
# both conversions hit the same rows over and over.
_CHEB_ROWS: list = [LaurentPoly(0, [1])]
_HALF_W = LaurentPoly(-1, [Fraction(1, 2), 0, Fraction(1, 2)])


def _power_of_z(n: int) -> LaurentPoly:
    while len(_CHEB_ROWS) <= n:
        _CHEB_ROWS.append(_CHEB_ROWS[-1] * _HALF_W)
    return _CHEB_ROWS[n]


def z_to_laurent(p: ZPoly) -> LaurentPoly:
    """Substitute ``z = (w + 1/w)/2``; the result is a symmetric Laurent polynomial."""
    n = p.degree
    if n < 0:
        return LaurentPoly(0, ())
    acc = [Fraction(0)] * (2 * n + 1)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        row = _power_of_z(k)
        for i, r in enumerate(row.coeffs):
            acc[row.lo + i + n] += c * r
    return LaurentPoly(-n, acc)


def laurent_to_z(L: LaurentPoly) -> ZPoly:
    """Invert :func:`z_to_laurent` by peeling the top exponent.

    Raises NotSymmetric if the input is not invariant under ``w -> 1/w``.
    """
    if not L.is_symmetric():
        raise NotSymmetric(f"coefficients differ under w -> 1/w: {L!r}")
    if L.is_zero():
        return ZPoly()
    n = L.hi
    rem = dict((L.lo + i, c) for i, c in enumerate(L.coeffs))
    out = [Fraction(0)] * (n + 1)
    for k in range(n, -1, -1):
        c = rem.get(k, 0)
        if c == 0:
            continue
        # leading coefficient of z^k in w is 2^-k
        a = c * (1 << k)
        out[k] = a
        row = _power_of_z(k)
        for i, r in enumerate(row.coeffs):
            e = row.lo + i
            rem[e] = rem.get(e, 0) - a * r
    return ZPoly(out)


def laurent_scale(L: LaurentPoly, c: ScalarLike) -> LaurentPoly:
    """Substitute ``w -> c*w``: the coefficient at exponent k picks up ``c**k``."""
    c = to_scalar(c)
    if c == 0:
        raise ZeroScale("scale factor must be nonzero")
    if L.is_zero():
        return L
    factor = c ** L.lo
    out = []
    for coef in L.coeffs:
        out.append(coef * factor)
        factor *= c
    return LaurentPoly(L.lo, out)


def laurent_divide_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return Q with ``Q * den == num``; raise NotDivisible if no such Q exists."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if num.is_zero():
        return num
    d = den.coeffs
    rem = list(num.coeffs)
    qlen = len(rem) - len(d) + 1
    if qlen <= 0:
        raise NotDivisible("numerator support narrower than denominator")
    lead = d[-1]
    quot = [Fraction(0)] * qlen
    for i in range(qlen - 1, -1, -1):
        c = rem[i + len(d) - 1] / lead
        quot[i] = c
        if c:
            for j, dj in enumerate(d):
                rem[i + j] -= c * dj
    if any(rem):
        raise NotDivisible("nonzero remainder in Laurent division")
    return LaurentPoly(num.lo - den.lo, quot)
