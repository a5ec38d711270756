"""Result containers shared by the SU(2) and torus solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .matrices import Vector


class UncertifiedError(ValueError):
    """Raised when no certified cutoff rule applies to a problem."""


class RealityError(ValueError):
    """Raised when the operator is not real, so real_dim is undefined."""


@dataclass(frozen=True)
class Cutoff:
    n_max: int
    certified: bool
    rule: str = ""
    candidates: tuple = ()  # (n, k) pairs or lattice points passing the necessary condition

    @classmethod
    def manual(cls, n_max: int) -> Cutoff:
        if n_max < 0:
            raise ValueError("manual cutoff must be non-negative")
        return cls(n_max, False, "manual")


@dataclass
class Block:
    key: Hashable  # irrep index n, or a lattice point for the torus
    nullity: int
    multiplicity: int
    basis: list[Vector] = field(default_factory=list, repr=False)

    @property
    def contribution(self) -> int:
        return self.nullity * self.multiplicity


@dataclass
class SolutionSpace:
    blocks: list[Block]
    cutoff: Cutoff
    operator_real: bool
    conjugation_closed: bool | None = None

    @property
    def complex_dim(self) -> int:
        return sum(b.contribution for b in self.blocks)

    @property
    def real_dim(self) -> int:
        if not self.operator_real:
            raise RealityError("operator is not real; only complex_dim is defined")
        return self.complex_dim

    @property
    def certified(self) -> bool:
        return self.cutoff.certified

    def nonzero_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.nullity]

    def nullities(self) -> dict:
        return {b.key: b.nullity for b in self.blocks}
