"""Finite subgroups of SU(2) and fixed spaces of tau (x) rho_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import matrices as mx
from .matrices import Matrix, Vector
from .operators import Frame
from .scalars import I, ONE, SQRT2, ZERO, Cyc
from .su2 import SU2Elem, adjoint, rho, rho_balanced

SAFETY_BOUND = 240


@dataclass(frozen=True)
class FiniteSubgroup:
    label: str
    generators: tuple[SU2Elem, ...]
    elements: tuple[SU2Elem, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1


def closure(generators: Sequence[SU2Elem], label: str = "", bound: int = SAFETY_BOUND) -> FiniteSubgroup:
    """Multiplicative closure with exact deduplication."""
    ident = SU2Elem.identity()
    seen = {ident}
    order = [ident]
    frontier = [ident]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > bound:
                        raise ValueError(f"closure of {label or 'generators'} exceeds {bound} elements")
        frontier = nxt
    return FiniteSubgroup(label, tuple(gens), tuple(order))


_E_PI_4 = Cyc.zeta(3)
_E_PI_3 = Cyc.zeta(4)
_OMEGA = Cyc.zeta(8)  # primitive cube root of unity

K1 = SU2Elem(I, ZERO)
K2 = SU2Elem(ZERO, ONE)
K3 = SU2Elem(_E_PI_4 / SQRT2, _E_PI_4 / SQRT2)
K4 = SU2Elem(ZERO, ONE)
K5 = SU2Elem(_E_PI_3, ZERO)
MINUS_ONE = SU2Elem(-ONE, ZERO)
Z3_GENERATOR = SU2Elem(_OMEGA, ZERO)

_GENERATORS: dict[str, tuple[SU2Elem, ...]] = {
    "trivial": (),
    "Z2": (MINUS_ONE,),
    "Z3": (Z3_GENERATOR,),
    "A4star": (K1, K2, K3),
    "D3star": (K4, K5),
}

_CACHE: dict[str, FiniteSubgroup] = {}


def subgroup(label: str) -> FiniteSubgroup:
    if label not in _GENERATORS:
        raise KeyError(f"unknown subgroup {label!r}; expected one of {sorted(_GENERATORS)}")
    if label not in _CACHE:
        _CACHE[label] = closure(_GENERATORS[label], label)
    return _CACHE[label]


SUBGROUP_LABELS = tuple(_GENERATORS)


@dataclass(frozen=True)
class FiberRep:
    """A representation of the isotropy group on the fiber E0.

    ``kind`` is one of ``trivial``, ``adjoint-in-frame`` (Ad written in the
    frame coordinates), ``sum`` (block diagonal of ``parts``) or ``explicit``
    (a lookup table keyed by group element).
    """

    d: int
    kind: str
    frame: Frame | None = None
    parts: tuple[FiberRep, ...] = ()
    table: tuple[tuple[SU2Elem, tuple[tuple[Cyc, ...], ...]], ...] = ()
    label: str = ""

    def __call__(self, g: SU2Elem) -> Matrix:
        if self.kind == "trivial":
            return mx.identity(self.d)
        if self.kind == "adjoint-in-frame":
            return _adjoint_in_frame(self.frame, g)
        if self.kind == "sum":
            return _block_diagonal([r(g) for r in self.parts])
        if self.kind == "explicit":
            for h, m in self.table:
                if h == g:
                    return [list(r) for r in m]
            raise KeyError(f"{self.label}: no matrix for {g!r}")
        raise ValueError(f"unknown fiber kind {self.kind!r}")


def _adjoint_in_frame(frame: Frame, g: SU2Elem) -> Matrix:
    scales = (frame.p_sq, frame.p_sq, frame.q * frame.q)
    a = adjoint(g)
    for i in range(3):
        for j in range(3):
            if a[i][j] and scales[i] != scales[j]:
                raise ValueError(f"Ad does not commute with the scaling of frame {frame.label!r}")
    return a


def _block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    d = sum(len(b) for b in blocks)
    out = mx.zeros(d, d)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def trivial_rep(d: int = 1) -> FiberRep:
    return FiberRep(d, "trivial", label=f"trivial{d}")


def adjoint_in_frame(frame: Frame) -> FiberRep:
    return FiberRep(3, "adjoint-in-frame", frame=frame, label=f"Ad[{frame.label}]")


def direct_sum(*reps: FiberRep) -> FiberRep:
    return FiberRep(sum(r.d for r in reps), "sum", parts=tuple(reps), label="+".join(r.label for r in reps))


def explicit_rep(d: int, table: dict[SU2Elem, Matrix], label: str = "explicit") -> FiberRep:
    frozen = tuple((g, tuple(tuple(r) for r in m)) for g, m in table.items())
    return FiberRep(d, "explicit", table=frozen, label=label)


def check_fiber_rep(gamma: FiniteSubgroup, tau: FiberRep) -> None:
    """Verify multiplicativity of tau on gamma."""
    for g in gamma.elements:
        for h in gamma.elements:
            if not mx.equal(tau(g * h), mx.matmul(tau(g), tau(h))):
                raise ValueError(f"{tau.label} is not a representation of {gamma.label}")


def joint_action(n: int, g: SU2Elem, tau: FiberRep, p_sq: Fraction | int = 1) -> Matrix:
    return mx.kron(tau(g), rho_balanced(n, g, p_sq))


def averaging_projector(n: int, gamma: FiniteSubgroup, tau: FiberRep, p_sq: Fraction | int = 1) -> Matrix:
    size = tau.d * (n + 1)
    total = mx.zeros(size, size)
    for g in gamma.elements:
        total = mx.add(total, joint_action(n, g, tau, p_sq))
    return mx.scale(total, Fraction(1, gamma.order))


def equivariant_basis(
    n: int, gamma: FiniteSubgroup, tau: FiberRep, frame: Frame | None = None, check: bool = True
) -> list[Vector]:
    """Basis of the fixed space of ``tau(k) (x) rho_n(k)``, in balanced coordinates."""
    p_sq = frame.p_sq if frame is not None else Fraction(1)
    size = tau.d * (n + 1)
    if gamma.is_trivial():
        eye = mx.identity(size)
        return [list(row) for row in eye]
    proj = averaging_projector(n, gamma, tau, p_sq)
    if check and not mx.equal(mx.matmul(proj, proj), proj):
        raise ArithmeticError("averaging projector is not idempotent")
    cols = mx.column_space(proj)
    return [list(col) for col in zip(*cols)] if cols else []


def basis_matrix(vectors: Sequence[Vector], size: int) -> Matrix:
    if not vectors:
        return [[] for _ in range(size)]
    return mx.hstack(list(vectors))


def character_dimension(n: int, gamma: FiniteSubgroup, tau: FiberRep) -> int:
    acc = ZERO
    for g in gamma.elements:
        acc = acc + mx.trace(tau(g)) * mx.trace(rho(n, g))
    val = acc / gamma.order
    if not val.is_rational() or val.rational().denominator != 1 or val.rational() < 0:
        raise ArithmeticError(f"character inner product is not a non-negative integer: {val!r}")
    return int(val.rational())


def hom_dimension_table(
    gamma: FiniteSubgroup, tau: FiberRep, n_max: int, frame: Frame | None = None
) -> dict[int, int]:
    return {n: len(equivariant_basis(n, gamma, tau, frame)) for n in range(n_max + 1)}
