"""Per-irrep eigenproblems on SU(2)/Gamma and T^3.

An eigenfunction of an invariant operator is a finite sum of matrix
coefficients, so ``D psi = alpha psi`` splits into the block systems
``(block(D, n) - alpha) x = 0`` on the Gamma-fixed part of E0 (x) V_n.  Each
solution x contributes n + 1 complex dimensions through the spectator slot.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from . import matrices as mx
from .equivariance import FiberRep, FiniteSubgroup, equivariant_basis, subgroup, trivial_rep
from .matrices import Vector
from .operators import Frame, OperatorSpec, block_matrix
from .results import Block, Cutoff, SolutionSpace, UncertifiedError
from .su2 import star_balanced
from .torus import TorusFrame, torus_solve

log = logging.getLogger(__name__)

AnyFrame = Union[Frame, TorusFrame]


@dataclass(frozen=True)
class Problem:
    frame: AnyFrame
    operator: OperatorSpec
    alpha: Fraction
    gamma: FiniteSubgroup = field(default_factory=lambda: subgroup("trivial"))
    tau: FiberRep | None = None
    cutoff: Cutoff | None = None  # None requests a certified cutoff

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.operator.d_in != self.operator.d_out:
            raise ValueError("eigenproblems need a square operator")
        if self.tau is None:
            object.__setattr__(self, "tau", trivial_rep(self.operator.d_in))
        if self.tau.d != self.operator.d_in:
            raise ValueError(f"fiber rep has dimension {self.tau.d}, operator needs {self.operator.d_in}")

    @property
    def is_torus(self) -> bool:
        return isinstance(self.frame, TorusFrame)

    def with_cutoff(self, cutoff: Cutoff | None) -> Problem:
        return Problem(self.frame, self.operator, self.alpha, self.gamma, self.tau, cutoff)


# -- certified cutoffs -----------------------------------------------------


def _scan(condition: Callable[[int], list[int]], lower: Callable[[int], Fraction], target: Fraction) -> list[tuple[int, int]]:
    """Collect (n, k) passing ``condition`` until the convex lower bound exceeds target for good."""
    hits: list[tuple[int, int]] = []
    n = 0
    while True:
        if lower(n) > target and lower(n + 1) >= lower(n):
            return hits
        hits.extend((n, k) for k in condition(n))
        n += 1


def _laplacian_cutoff(frame: Frame, lam: Fraction) -> Cutoff:
    p2, q2 = frame.p_sq, frame.q * frame.q

    def value(n: int, j: int) -> Fraction:
        return (q2 - p2) * j * j + p2 * (n * n + 2 * n)

    hits = _scan(
        lambda n: [k for k in range(n + 1) if value(n, n - 2 * k) == lam],
        lambda n: p2 * (n * n + 2 * n) + min(Fraction(0), q2 - p2) * n * n,
        lam,
    )
    return Cutoff(max((n for n, _ in hits), default=0), True, "laplacian", tuple(hits))


def _rot_cutoff(frame: Frame, alpha: Fraction) -> Cutoff:
    if alpha == 0:
        raise UncertifiedError("rot with alpha = 0 has no certified cutoff")
    p2, q2 = frame.p_sq, frame.q * frame.q
    target = alpha * (alpha + 2 * p2 / frame.q)

    def value(n: int, j: int) -> Fraction:
        return (q2 - p2) * j * j + p2 * (n * n + 2 * n)

    def condition(n: int) -> list[int]:
        return [k for k in range(n + 1) if value(n, n - 2 * k) == target or value(n, n - 2 * k + 2) == target]

    hits = _scan(condition, lambda n: p2 * (n * n + 2 * n) + min(Fraction(0), q2 - p2) * (n + 2) ** 2, target)
    return Cutoff(max((n for n, _ in hits), default=0), True, "rot", tuple(hits))


def _dirac_A3_cutoff(frame: Frame, alpha: Fraction) -> Cutoff:
    if (frame.p_sq, frame.q) != (Fraction(1, 7), 1):
        raise UncertifiedError("the A3 cutoff rule applies only to the A3 frame")
    c = 24 + (7 * alpha + 1) * (alpha - 3)
    hits = []
    n = 0
    while n * n + 2 * n <= c:
        hits.extend((n, k) for k in range(n + 1) if -6 * (n - 2 * k + 2) ** 2 - n * n - 2 * n + c == 0)
        n += 1
    # sector where the (v, f)-coupling vanishes identically
    special = Fraction(-15, 7) - alpha
    if special >= 0 and special.denominator == 1:
        hits.extend((int(special), k) for k in range(int(special) + 1))
    return Cutoff(max((n for n, _ in hits), default=0), True, "dirac_A3", tuple(sorted(set(hits))))


def certified_cutoff(problem: Problem) -> Cutoff:
    """Largest n admitted by the family's necessary condition; raises for generic operators."""
    if problem.is_torus:
        raise UncertifiedError("torus problems certify by lattice shells (see torus_solve)")
    family = problem.operator.family
    if family == "laplacian":
        return _laplacian_cutoff(problem.frame, problem.alpha)
    if family == "rot":
        return _rot_cutoff(problem.frame, problem.alpha)
    if family == "dirac_A3":
        return _dirac_A3_cutoff(problem.frame, problem.alpha)
    raise UncertifiedError(f"no certified cutoff rule for operator {problem.operator.name!r}")


# -- solving -----------------------------------------------------------------


def solve_block(problem: Problem, n: int) -> Block:
    op, frame = problem.operator, problem.frame
    size = op.d_in * (n + 1)
    shifted = mx.sub(block_matrix(op, n, frame), mx.scale(mx.identity(size), problem.alpha))
    if problem.gamma.is_trivial():
        basis = mx.nullspace(shifted)
    else:
        eq = equivariant_basis(n, problem.gamma, problem.tau, frame)
        if not eq:
            return Block(n, 0, n + 1, [])
        q = mx.hstack(eq)
        coords = mx.nullspace(mx.matmul(shifted, q))
        basis = [mx.matvec(q, x) for x in coords]
    return Block(n, len(basis), n + 1, basis)


def _solve_block_star(args: tuple[Problem, int]) -> Block:
    return solve_block(*args)


def solve(problem: Problem, workers: int = 1, allow_uncertified: bool = True) -> SolutionSpace:
    if problem.is_torus:
        radius = problem.cutoff.n_max if problem.cutoff is not None else None
        return torus_solve(problem.operator, problem.alpha, radius)
    cutoff = problem.cutoff if problem.cutoff is not None else certified_cutoff(problem)
    if not cutoff.certified and not allow_uncertified:
        raise UncertifiedError("uncertified cutoff")
    ns = range(cutoff.n_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_solve_block_star, [(problem, n) for n in ns]))
    else:
        blocks = [solve_block(problem, n) for n in ns]
    for b in blocks:
        log.debug("n=%d nullity=%d", b.key, b.nullity)
    space = SolutionSpace(blocks, cutoff, problem.operator.is_real())
    space.conjugation_closed = conjugation_closure_check(space, problem.frame, problem.operator.d_in)
    return space


def conjugate_vector(v: Vector, n: int, d: int, p_sq: Fraction) -> Vector:
    """Star on each V_n slot combined with entrywise fiber conjugation."""
    out: Vector = []
    for a in range(d):
        out.extend(star_balanced(n, v[a * (n + 1) : (a + 1) * (n + 1)], p_sq))
    return out


def conjugation_closure_check(space: SolutionSpace, frame: AnyFrame | None = None, d: int | None = None) -> bool:
    if not space.blocks:
        return True
    p_sq = frame.p_sq if isinstance(frame, Frame) else Fraction(1)
    for b in space.blocks:
        if not b.basis:
            continue
        n = b.key
        dim = d if d is not None else len(b.basis[0]) // (n + 1)
        for v in b.basis:
            if not mx.in_span(b.basis, conjugate_vector(v, n, dim, p_sq)):
                return False
    return True
