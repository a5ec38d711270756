"""Exact arithmetic in the cyclotomic field Q(zeta_24).

Elements are stored as an integer numerator vector of length 8 over a common
positive denominator, i.e. ``(c_0 + c_1 z + ... + c_7 z^7) / den`` with
``z = exp(2 pi i / 24)`` and the relation ``z^8 = z^4 - 1`` (the 24th
cyclotomic polynomial).  Values are immutable and kept in lowest terms.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

DEGREE = 8
ORDER = 24

Rat = Fraction
Scalar = Union["Cyc", Fraction, int]

_OMEGA = cmath.exp(2j * cmath.pi / ORDER)
_OMEGA_POWERS = tuple(_OMEGA**k for k in range(DEGREE))


def _reduce_poly(coeffs: list[int]) -> list[int]:
    # z^(8+j) = z^(4+j) - z^j
    for d in range(len(coeffs) - 1, DEGREE - 1, -1):
        c = coeffs[d]
        if c:
            coeffs[d - 4] += c
            coeffs[d - 8] -= c
            coeffs[d] = 0
    del coeffs[DEGREE:]
    return coeffs


def _zeta_power_vector(k: int) -> tuple[int, ...]:
    k %= ORDER
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    coeffs = _reduce_poly(coeffs)
    return tuple(coeffs + [0] * (DEGREE - len(coeffs)))


# conj(z^k) = z^(24-k)
_CONJ_TABLE = tuple(_zeta_power_vector(-k) for k in range(DEGREE))


class Cyc:
    """An element of Q(zeta_24)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coefficients: Iterable[Scalar] = (), den: int = 1):
        coeffs = list(coefficients)
        if len(coeffs) > DEGREE:
            raise ValueError("use Cyc.from_poly for unreduced coefficient lists")
        fracs = [Fraction(c) for c in coeffs] + [Fraction(0)] * (DEGREE - len(coeffs))
        common = 1
        for f in fracs:
            common = common * f.denominator // gcd(common, f.denominator)
        nums = [f.numerator * (common // f.denominator) for f in fracs]
        self._set(nums, common * den)

    def _set(self, nums: list[int], den: int) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = den
        for c in nums:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(nums):
            nums, den = [0] * DEGREE, 1
        elif g != 1:
            nums = [c // g for c in nums]
            den //= g
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, nums: list[int], den: int) -> Cyc:
        obj = cls.__new__(cls)
        obj._set(nums, den)
        return obj

    @classmethod
    def from_poly(cls, coefficients: Iterable[Scalar]) -> Cyc:
        """Reduce an arbitrary-degree polynomial in zeta modulo Phi_24."""
        out = cls(())
        for k, c in enumerate(coefficients):
            if c:
                out = out + cls.zeta(k) * c
        return out

    @classmethod
    def zeta(cls, k: int = 1) -> Cyc:
        return cls._raw(list(_zeta_power_vector(k)), 1)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(other: Scalar) -> Cyc:
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyc._raw([f.numerator] + [0] * (DEGREE - 1), f.denominator)
        return NotImplemented

    def __add__(self, other: Scalar) -> Cyc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return Cyc._raw([a + b for a, b in zip(self._num, other._num)], self._den)
        d1, d2 = self._den, other._den
        return Cyc._raw([a * d2 + b * d1 for a, b in zip(self._num, other._num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        obj = Cyc.__new__(Cyc)
        obj._num = tuple(-c for c in self._num)
        obj._den = self._den
        obj._hash = None
        return obj

    def __sub__(self, other: Scalar) -> Cyc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyc:
        return (-self) + other

    def __mul__(self, other: Scalar) -> Cyc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._num, other._num
        if not any(a[1:]):
            s = a[0]
            return Cyc._raw([s * c for c in b], self._den * other._den)
        if not any(b[1:]):
            s = b[0]
            return Cyc._raw([s * c for c in a], self._den * other._den)
        prod = [0] * (2 * DEGREE - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyc._raw(_reduce_poly(prod), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Cyc:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            r = other.rational()
            if r == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_24)")
            return Cyc._raw([c * r.denominator for c in self._num], self._den * r.numerator)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> Cyc:
        return self._coerce(other) / self

    def __pow__(self, k: int) -> Cyc:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _mul_matrix(self) -> list[list[Fraction]]:
        # column j holds the coordinates of self * z^j
        cols = []
        for j in range(DEGREE):
            cols.append((self * Cyc.zeta(j)).coefficients)
        return [[cols[j][i] for j in range(DEGREE)] for i in range(DEGREE)]

    def inverse(self) -> Cyc:
        """Solve ``self * x = 1`` as an 8x8 rational linear system."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        if self.is_rational():
            return Cyc._raw([self._den] + [0] * (DEGREE - 1), self._num[0])
        m = self._mul_matrix()
        rhs = [Fraction(1)] + [Fraction(0)] * (DEGREE - 1)
        aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
        n = DEGREE
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Cyc([aug[i][n] for i in range(n)])

    # -- conjugation and evaluation --------------------------------------

    def conj(self) -> Cyc:
        acc = [0] * DEGREE
        for k, c in enumerate(self._num):
            if c:
                for i, t in enumerate(_CONJ_TABLE[k]):
                    if t:
                        acc[i] += c * t
        return Cyc._raw(acc, self._den)

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> Cyc:
        return (self + self.conj()) / 2

    def __complex__(self) -> complex:
        return sum(c * w for c, w in zip(self._num, _OMEGA_POWERS)) / self._den

    def to_complex(self) -> complex:
        return complex(self)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __getstate__(self):
        return (self._num, self._den)

    def __setstate__(self, state) -> None:
        self._num, self._den = state
        self._hash = None

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({Fraction(self._num[0], self._den)})"
        terms = []
        for k, c in enumerate(self._num):
            if c:
                f = Fraction(c, self._den)
                terms.append(f"{f}" if k == 0 else f"{f}*z^{k}")
        return "Cyc(" + " + ".join(terms) + ")"

    def __str__(self) -> str:
        z = complex(self)
        if self.is_rational():
            return str(self.rational())
        return f"{z.real:.6g}{z.imag:+.6g}i"


ZERO = Cyc(())
ONE = Cyc((1,))
I = Cyc.zeta(6)
SQRT2 = Cyc.zeta(3) + Cyc.zeta(21)
SQRT3 = Cyc.zeta(2) + Cyc.zeta(22)


def cyc(x: Scalar) -> Cyc:
    """Coerce ints, Fractions and Cyc values to Cyc."""
    if isinstance(x, Cyc):
        return x
    return Cyc((Fraction(x),))


def cyc_mul(a: Cyc, b: Cyc) -> Cyc:
    return a * b


def cyc_inv(a: Cyc) -> Cyc:
    return a.inverse()


def cyc_conj(a: Cyc) -> Cyc:
    return a.conj()


def cyc_is_real(a: Cyc) -> bool:
    return a.is_real()


def cyc_to_float(a: Cyc) -> complex:
    return complex(a)


def _squarefree_split(m: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``m = s * r**2`` and ``s`` squarefree."""
    s, r, d = 1, 1, 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
            r *= d
        if m % d == 0:
            m //= d
            s *= d
        d += 1
    return s * m, r


_SQRT_SQUAREFREE = {1: ONE, 2: SQRT2, 3: SQRT3, 6: SQRT2 * SQRT3}


def sqrt_rational(x: Fraction | int) -> Cyc | None:
    """Exact square root of a non-negative rational inside Q(zeta_24), or None.

    Q(zeta_24) contains sqrt(s) exactly for squarefree s in {1, 2, 3, 6}.
    """
    x = Fraction(x)
    if x < 0:
        root = sqrt_rational(-x)
        return None if root is None else root * I
    if x == 0:
        return ZERO
    # sqrt(a/b) = sqrt(a*b) / b
    s, r = _squarefree_split(x.numerator * x.denominator)
    base = _SQRT_SQUAREFREE.get(s)
    if base is None:
        return None
    return base * Fraction(r, x.denominator)


def parse_rational(token: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` strictly; floats are rejected."""
    text = token.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {token!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {token!r}") from exc


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
