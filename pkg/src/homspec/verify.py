"""Exact per-block identity checks for the operator library."""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices as mx
from .catalog import CASES, build_fiber, build_problem
from .equivariance import subgroup
from .operators import (
    ROUND,
    Frame,
    block_matrix,
    op_dirac_SE_squared_rhs,
    op_dirac_SE,
    op_dirac_sine,
    op_div,
    op_grad,
    op_laplacian,
    op_rot,
)
from .results import Cutoff
from .solver import Problem, solve
from .torus import TORUS, character_block, lattice_ball


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def catalog_frames() -> list[Frame]:
    frames = [c.frame for c in CASES.values() if c.backend == "su2"]
    return list({(f.p_sq, f.q): f for f in frames}.values())


def _weitzenbock_holds(d_se, rhs) -> bool:
    size = len(d_se)
    eye = mx.identity(size)
    lhs = mx.matmul(mx.sub(d_se, mx.scale(eye, 3)), mx.add(d_se, eye))
    # (D - 3)(D + 1) = D^2 - 2D - 3
    return mx.equal(lhs, mx.sub(mx.sub(rhs, mx.scale(d_se, 2)), mx.scale(eye, 3)))


def check_vector_calculus(n_max: int = 8) -> list[CheckResult]:
    out = []
    for frame in catalog_frames():
        rot, grad, div = op_rot(frame), op_grad(frame), op_div(frame)
        bad_rg, bad_dr = [], []
        for n in range(n_max + 1):
            r = block_matrix(rot, n, frame)
            if not mx.is_zero(mx.matmul(r, block_matrix(grad, n, frame))):
                bad_rg.append(n)
            if not mx.is_zero(mx.matmul(block_matrix(div, n, frame), r)):
                bad_dr.append(n)
        out.append(CheckResult(f"rot grad = 0 [{frame.label}]", not bad_rg, f"failing n: {bad_rg}" if bad_rg else ""))
        out.append(CheckResult(f"div rot = 0 [{frame.label}]", not bad_dr, f"failing n: {bad_dr}" if bad_dr else ""))
    return out


def check_weitzenbock(n_max: int = 6, torus_radius: int = 12) -> list[CheckResult]:
    out = []
    frame = CASES["A2"].frame
    d_se, rhs = op_dirac_SE(frame), op_dirac_SE_squared_rhs(frame)
    bad = [n for n in range(n_max + 1) if not _weitzenbock_holds(block_matrix(d_se, n, frame), block_matrix(rhs, n, frame))]
    out.append(CheckResult("(D-3)(D+1) identity [A2]", not bad, f"failing n: {bad}" if bad else ""))
    d_se, rhs = op_dirac_SE(TORUS), op_dirac_SE_squared_rhs(TORUS)
    bad_g = [g for g in lattice_ball(torus_radius) if not _weitzenbock_holds(character_block(d_se, g), character_block(rhs, g))]
    out.append(CheckResult("(D-3)(D+1) identity [A1]", not bad_g, f"failing characters: {bad_g}" if bad_g else ""))
    return out


def _decomposition(case_id: str, margin: int = 4) -> CheckResult:
    case = CASES[case_id]
    parts = [solve(build_problem(case, case.problem(k))) for k in ("laplacian", "rot")]
    frame = case.frame
    if case.backend == "torus":
        radius = max(p.cutoff.n_max for p in parts) + margin
        prob = Problem(frame, op_dirac_SE(frame), -1, cutoff=Cutoff.manual(radius))
    else:
        n_max = max(p.cutoff.n_max for p in parts) + margin
        fiber = build_fiber("adjoint", 4, frame)
        prob = Problem(frame, op_dirac_SE(frame), -1, subgroup(case.gamma), fiber, Cutoff.manual(n_max))
    total = solve(prob).complex_dim
    expect = sum(p.real_dim for p in parts)
    return CheckResult(f"D_SE = -1 splits as lap = 8 plus rot = -2 [{case_id}]", total == expect, f"{total} vs {parts[0].real_dim} + {parts[1].real_dim}")


def check_decomposition_laws() -> list[CheckResult]:
    out = [_decomposition("A1"), _decomposition("A2")]
    lap = solve(Problem(ROUND, op_laplacian(ROUND), 3))
    rot = solve(Problem(ROUND, op_rot(ROUND), 3))
    n_max = max(lap.cutoff.n_max, rot.cutoff.n_max) + 4
    sine = solve(Problem(ROUND, op_dirac_sine(ROUND), -1, cutoff=Cutoff.manual(n_max)))
    ok = sine.complex_dim == lap.real_dim + rot.real_dim
    out.append(CheckResult("D_sine = -1 splits as lap = 3 plus rot = 3 [S3]", ok, f"{sine.complex_dim} vs {lap.real_dim} + {rot.real_dim}"))
    return out


def run_identity_suite() -> list[CheckResult]:
    return check_vector_calculus() + check_weitzenbock() + check_decomposition_laws()

