"""Flat three-torus backend: characters f_gamma and their operator blocks.

On the character ``f_gamma(theta) = exp(i <gamma, theta>)`` each frame vector
acts by the scalar ``i c_j(gamma)``, so an operator reduces to a d x d matrix
per lattice point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from . import matrices as mx
from .matrices import Matrix
from .operators import OperatorSpec, StructureConstants
from .results import Block, Cutoff, SolutionSpace, UncertifiedError
from .scalars import I, ONE, SQRT2, ZERO, Cyc, cyc

Gamma = tuple[int, int, int]

# rows e_1, e_2, e_3 of the frame in the coordinates theta
FRAME_ROWS = (
    (SQRT2, ZERO, ZERO),
    (ZERO, SQRT2, -SQRT2),
    (cyc(-1), ONE, ONE),
)
GRAM_Q = ((3, -1, -1), (-1, 3, -1), (-1, -1, 3))
LAMBDA_MIN = 1  # smallest eigenvalue of GRAM_Q (spectrum 1, 4, 4)


@dataclass(frozen=True)
class TorusFrame:
    label: str = "A1"

    def structure_constants(self) -> StructureConstants:
        zero = tuple(tuple((ZERO,) * 3 for _ in range(3)) for _ in range(3))
        return zero


TORUS = TorusFrame()


def quadratic_form(gamma: Gamma) -> int:
    g1, g2, g3 = gamma
    return 3 * (g1 * g1 + g2 * g2 + g3 * g3) - 2 * (g1 * g2 + g1 * g3 + g2 * g3)


def derivative_data(gamma: Gamma) -> tuple[Cyc, Cyc, Cyc]:
    """c(gamma) with e_j f_gamma = i c_j(gamma) f_gamma."""
    return tuple(sum((row[k] * gamma[k] for k in range(3)), ZERO) for row in FRAME_ROWS)  # type: ignore[return-value]


def lattice_enumerate(lam: Fraction | int, radius_scale: int = 1) -> list[Gamma]:
    """All gamma in Z^3 with Q(gamma) = lam, certified by |gamma|^2 <= lam / LAMBDA_MIN.

    ``radius_scale`` multiplies the search radius; used to audit completeness.
    """
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    if lam.denominator != 1:
        return []
    bound = int(lam) * radius_scale // LAMBDA_MIN
    r = isqrt(bound)
    out = []
    for g in product(range(-r, r + 1), repeat=3):
        if g[0] ** 2 + g[1] ** 2 + g[2] ** 2 <= bound and quadratic_form(g) == lam:
            out.append(g)
    return sorted(out)


def lattice_ball(radius_sq: int) -> list[Gamma]:
    """All gamma with Q(gamma) <= radius_sq."""
    r = isqrt(radius_sq // LAMBDA_MIN)
    return sorted(g for g in product(range(-r, r + 1), repeat=3) if quadratic_form(g) <= radius_sq)


def character_block(op: OperatorSpec, gamma: Gamma) -> Matrix:
    c = derivative_data(gamma)
    out = mx.zeros(op.d_out, op.d_in)
    for coef, word in op.coefficient_words():
        s = ONE
        for w in word:
            s = s * I * c[w - 1]
        out = mx.add(out, mx.scale(coef, s))
    return out


def conjugate_character(gamma: Gamma) -> Gamma:
    return (-gamma[0], -gamma[1], -gamma[2])


def _torus_candidates(op: OperatorSpec, alpha: Fraction) -> tuple[list[Gamma], Cutoff]:
    if op.family == "laplacian":
        return lattice_enumerate(alpha), Cutoff(int(alpha) if alpha.denominator == 1 else 0, True, "torus-laplacian")
    if op.family == "rot" and alpha != 0:
        shell = alpha * alpha
        return lattice_enumerate(shell), Cutoff(int(shell) if shell.denominator == 1 else 0, True, "torus-rot")
    raise UncertifiedError(f"no certified lattice bound for {op.name}; supply a manual radius")


def torus_solve(op: OperatorSpec, alpha: Fraction | int, radius_sq: int | None = None) -> SolutionSpace:
    """Solve ``op psi = alpha psi`` over characters of the torus.

    Certified families enumerate the exact shell; other operators need a manual
    bound ``Q(gamma) <= radius_sq`` and the result is tagged uncertified.
    """
    if op.d_in != op.d_out:
        raise ValueError("operator must be square")
    for _, word in op.terms:
        if len(word) == 2 and word[0] != word[1]:
            raise ValueError("mixed second-order words are not supported on the torus")
    alpha = Fraction(alpha)
    if radius_sq is not None:
        points, cutoff = lattice_ball(radius_sq), Cutoff.manual(radius_sq)
    else:
        points, cutoff = _torus_candidates(op, alpha)
    shift = mx.scale(mx.identity(op.d_in), alpha)
    blocks = []
    for g in points:
        m = mx.sub(character_block(op, g), shift)
        basis = mx.nullspace(m)
        if basis or radius_sq is None:
            blocks.append(Block(g, len(basis), 1, basis))
    space = SolutionSpace(blocks, cutoff, op.is_real())
    space.conjugation_closed = torus_conjugation_check(space)
    return space


def torus_conjugation_check(space: SolutionSpace) -> bool:
    """conj(x f_gamma) = conj(x) f_{-gamma} must stay in the solution space."""
    by_key = {b.key: b.basis for b in space.blocks}
    for b in space.blocks:
        target = by_key.get(conjugate_character(b.key), [])
        for v in b.basis:
            if not mx.in_span(target, [x.conj() for x in v]):
                return False
    return True
