"""Irreducible representations V_n of SU(2) with exact matrices.

V_n is realized on homogeneous polynomials of degree n in (z1, z2) with the
monomial basis ``m_k = z1**(n-k) * z2**k``.  The group acts by right
substitution ``f(z) -> f(z g)``; its derivative gives the Lie algebra action.

Blocks that involve a scaled frame ``e = (p E1, p E2, q E3)`` are expressed in
the *balanced* basis ``f_k = p**(-k) m_k``.  In that basis the scaled
generators have entries in Q(i) even when ``p`` itself is irrational, and it
coincides with the monomial basis when ``p = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import matrices as mx
from .matrices import Matrix, Vector
from .scalars import I, ONE, ZERO, Cyc, Scalar, cyc, sqrt_rational


class LieElem(Enum):
    E1 = 1
    E2 = 2
    E3 = 3

    def matrix(self) -> Matrix:
        return [row[:] for row in _BASIS_2x2[self]]


_BASIS_2x2 = {
    LieElem.E1: mx.from_rows([[0, 1], [-1, 0]]),
    LieElem.E2: mx.from_rows([[ZERO, I], [I, ZERO]]),
    LieElem.E3: mx.from_rows([[I, ZERO], [ZERO, -I]]),
}


def lie_elem(i: int | LieElem) -> LieElem:
    return i if isinstance(i, LieElem) else LieElem(i)


@dataclass(frozen=True)
class SU2Elem:
    """The matrix ``((a, -conj(b)), (b, conj(a)))`` with ``|a|^2 + |b|^2 = 1``."""

    a: Cyc
    b: Cyc

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", cyc(self.a))
        object.__setattr__(self, "b", cyc(self.b))
        norm = self.a * self.a.conj() + self.b * self.b.conj()
        if norm != ONE:
            raise ValueError(f"not an element of SU(2): |a|^2 + |b|^2 = {norm!r}")

    @classmethod
    def from_matrix(cls, m: Matrix) -> SU2Elem:
        a, b = m[0][0], m[1][0]
        if m[0][1] != -b.conj() or m[1][1] != a.conj():
            raise ValueError("matrix is not of the form ((a, -conj b), (b, conj a))")
        return cls(a, b)

    @classmethod
    def identity(cls) -> SU2Elem:
        return cls(ONE, ZERO)

    def matrix(self) -> Matrix:
        a, b = self.a, self.b
        return [[a, -b.conj()], [b, a.conj()]]

    def __mul__(self, other: SU2Elem) -> SU2Elem:
        # first column of the product determines it
        a = self.a * other.a - self.b.conj() * other.b
        b = self.b * other.a + self.a.conj() * other.b
        return SU2Elem(a, b)

    def inverse(self) -> SU2Elem:
        return SU2Elem(self.a.conj(), -self.b)

    def is_diagonal(self) -> bool:
        return not self.b

    def to_complex(self) -> tuple[complex, complex]:
        return complex(self.a), complex(self.b)


# -- Lie algebra action ----------------------------------------------------


@lru_cache(maxsize=None)
def _drho_cached(n: int, x: int) -> tuple[tuple[Cyc, ...], ...]:
    m = mx.zeros(n + 1, n + 1)
    for k in range(n + 1):
        if x == 3:
            m[k][k] = I * (n - 2 * k)
        elif x == 1:
            if k < n:
                m[k + 1][k] = cyc(-(n - k))
            if k > 0:
                m[k - 1][k] = cyc(k)
        else:
            if k < n:
                m[k + 1][k] = I * (n - k)
            if k > 0:
                m[k - 1][k] = I * k
    return tuple(tuple(r) for r in m)


def drho(n: int, x: int | LieElem) -> Matrix:
    """Matrix of d(rho_n)(X) in the monomial basis (column k is the image of m_k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [list(r) for r in _drho_cached(n, lie_elem(x).value)]


@lru_cache(maxsize=None)
def _scaled_cached(n: int, x: int, p_sq: Fraction, q: Fraction) -> tuple[tuple[Cyc, ...], ...]:
    base = _drho_cached(n, x)
    if x == 3:
        return tuple(tuple(e * q if e else ZERO for e in row) for row in base)
    # p * p**(i-j) * entry: raising entries pick up p_sq, lowering entries 1
    out = []
    for i, row in enumerate(base):
        new = []
        for j, e in enumerate(row):
            if not e:
                new.append(ZERO)
            elif i == j + 1:
                new.append(e * p_sq)
            else:
                new.append(e)
        out.append(tuple(new))
    return tuple(out)


def scaled_generator(n: int, i: int | LieElem, p_sq: Scalar, q: Scalar) -> Matrix:
    """Frame vector ``e_i`` acting on V_n in the balanced basis."""
    return [list(r) for r in _scaled_cached(n, lie_elem(i).value, Fraction(p_sq), Fraction(q))]


def balance_factor(p_sq: Fraction) -> Cyc:
    """Exact ``p = sqrt(p_sq)``; needed only to move non-diagonal group actions."""
    root = sqrt_rational(p_sq)
    if root is None:
        raise ValueError(f"sqrt({p_sq}) is not in Q(zeta_24)")
    return root


# -- group action ----------------------------------------------------------


def _poly_pow(lin: tuple[Cyc, Cyc], e: int) -> list[Cyc]:
    """Coefficients of (x z1 + y z2)**e on z1**(e-j) z2**j."""
    x, y = lin
    out = []
    for j in range(e + 1):
        c = comb(e, j)
        out.append((x ** (e - j)) * (y**j) * c)
    return out


def rho(n: int, g: SU2Elem) -> Matrix:
    """Right-substitution action of g on V_n in the monomial basis."""
    if not isinstance(g, SU2Elem):
        g = SU2Elem.from_matrix(g)
    a, b = g.a, g.b
    # (z1, z2) g = (a z1 + b z2, -conj(b) z1 + conj(a) z2)
    first = (a, b)
    second = (-b.conj(), a.conj())
    m = mx.zeros(n + 1, n + 1)
    for k in range(n + 1):
        u = _poly_pow(first, n - k)
        v = _poly_pow(second, k)
        col = [ZERO] * (n + 1)
        for s, cu in enumerate(u):
            if not cu:
                continue
            for t, cv in enumerate(v):
                if cv:
                    col[s + t] = col[s + t] + cu * cv
        for j in range(n + 1):
            m[j][k] = col[j]
    return m


def rho_balanced(n: int, g: SU2Elem, p_sq: Scalar = 1) -> Matrix:
    """``rho(n, g)`` in the balanced basis for the frame with the given p**2."""
    m = rho(n, g)
    p_sq = Fraction(p_sq)
    if p_sq == 1 or g.is_diagonal():
        return m
    p = balance_factor(p_sq)
    pows = {0: ONE}
    for d in range(1, n + 1):
        pows[d] = pows[d - 1] * p
        pows[-d] = pows[-(d - 1)] / p
    return [[x * pows[i - j] if x else ZERO for j, x in enumerate(row)] for i, row in enumerate(m)]


def adjoint(g: SU2Elem) -> Matrix:
    """Matrix of Ad(g) on span{E1, E2, E3}; column i holds g E_i g^-1."""
    gm = g.matrix()
    ginv = g.inverse().matrix()
    basis = [LieElem.E1.matrix(), LieElem.E2.matrix(), LieElem.E3.matrix()]
    out = mx.zeros(3, 3)
    for i, e in enumerate(basis):
        conj = mx.matmul(mx.matmul(gm, e), ginv)
        for j, f in enumerate(basis):
            out[j][i] = mx.trace(mx.matmul(conj, f)) * Fraction(-1, 2)
    return out


# -- metric data -----------------------------------------------------------


def gram(n: int) -> Matrix:
    """Gram matrix of the monomial basis for the invariant inner product."""
    return mx.diag([factorial(k) * factorial(n - k) for k in range(n + 1)])


def star(n: int, u: Vector) -> Vector:
    """``u*_l = (-1)**(n-l) conj(u_{n-l})`` in unitary coordinates."""
    if len(u) != n + 1:
        raise ValueError("vector length must be n + 1")
    return [u[n - l].conj() * (-1) ** (n - l) for l in range(n + 1)]


def star_monomial(n: int, c: Vector) -> Vector:
    # the Gram weights are symmetric under k -> n - k, so the formula is unchanged
    return star(n, c)


def star_balanced(n: int, b: Vector, p_sq: Scalar = 1) -> Vector:
    """The star map in balanced coordinates, up to the positive factor p**(-n)."""
    p_sq = Fraction(p_sq)
    out = star(n, b)
    if p_sq == 1:
        return out
    return [x * p_sq**l if x else ZERO for l, x in enumerate(out)]
