from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from homspec import matrices as mx
from homspec.catalog import CASES, build_problem, oracle_agrees
from homspec.equivariance import subgroup
from homspec.operators import A3_FRAME, ROUND, Frame, block_matrix, op_dirac_A3, op_dirac_SE, op_laplacian, op_rot
from homspec.oracle import (
    MAX_N,
    IndeterminateRankError,
    certified_nullity,
    float_block,
    float_closure,
    float_nullity,
    float_rho,
    haar_samples,
    ladder_generators,
    oracle_nullities,
    schur_orthogonality_check,
    torus_oracle_nullities,
    transport_block,
)
from homspec.solver import solve
from homspec.su2 import rho
from homspec.torus import TORUS, lattice_ball, torus_solve


@pytest.mark.parametrize(
    "op, frame",
    [
        (op_laplacian(), Frame(Fraction(1, 3), Fraction(1, 3))),
        (op_rot(Frame(Fraction(1, 16), Fraction(1, 4))), Frame(Fraction(1, 16), Fraction(1, 4))),
        (op_dirac_SE(ROUND), ROUND),
        (op_dirac_A3(), A3_FRAME),
    ],
    ids=["laplacian", "rot", "dirac_SE", "dirac_A3"],
)
def test_transported_exact_blocks_match_float_blocks(op, frame):
    for n in range(8):
        exact = mx.to_complex(block_matrix(op, n, frame))
        assert np.allclose(transport_block(exact, n, op.d_out, op.d_in, frame.p_sq), float_block(op, n, frame), atol=1e-9)


@pytest.mark.parametrize("label, order", [("trivial", 1), ("Z2", 2), ("Z3", 3), ("A4star", 24), ("D3star", 12)])
def test_float_closure_orders(label, order):
    assert len(float_closure(label)) == order
    assert len(subgroup(label).elements) == order


def test_float_rho_is_unitary_and_agrees_with_exact():
    n = 5
    t = np.diag(np.sqrt([float(factorial(k) * factorial(n - k)) for k in range(n + 1)]))
    for g in subgroup("A4star").elements:
        f = float_rho(n, np.array(mx.to_complex(g.matrix())))
        assert np.allclose(f @ f.conj().T, np.eye(n + 1), atol=1e-12)
        assert np.allclose(f, t @ mx.to_complex(rho(n, g)) @ np.linalg.inv(t), atol=1e-12)


@pytest.mark.parametrize("case_id", ["A2", "A3", "S3", "L1", "L2", "L3", "L4"])
def test_oracle_agrees_with_exact_blocks(case_id):
    case = CASES[case_id]
    for spec in case.problems:
        prob = build_problem(case, spec)
        space = solve(prob)
        assert oracle_nullities(prob, space.cutoff.n_max) == space.nullities()
        assert oracle_agrees(prob, space)


def test_torus_oracle_agrees():
    for op, alpha in ((op_laplacian(TORUS), 8), (op_rot(TORUS), -2), (op_dirac_SE(TORUS), -1)):
        space = torus_solve(op, alpha, radius_sq=12)
        floats = torus_oracle_nullities(op, alpha, lattice_ball(12))
        assert {k: v for k, v in floats.items() if v} == {b.key: b.nullity for b in space.blocks}


def test_certified_nullity_examples():
    assert certified_nullity(np.diag([1.0, 2.0, 0.0])) == 1
    assert certified_nullity(np.zeros((2, 3))) == 3
    assert certified_nullity(np.zeros((0, 2))) == 2
    assert certified_nullity(np.ones((2, 0))) == 0


def test_certified_nullity_refuses_without_gap():
    with pytest.raises(IndeterminateRankError):
        certified_nullity(np.diag([1.0, 1e-7, 1e-12]))


def test_conditioning_guard():
    with pytest.raises(ValueError, match="conditioning"):
        ladder_generators(MAX_N + 1)


def test_haar_samples_are_unit_quaternions():
    s = haar_samples(1000, seed=1)
    assert np.allclose(np.abs(s[:, 0]) ** 2 + np.abs(s[:, 1]) ** 2, 1)


@pytest.mark.parametrize("n, m", [(0, 1), (1, 1), (2, 2), (1, 3)])
def test_schur_orthogonality(n, m):
    # Monte Carlo error is of order 1/sqrt(samples)
    assert schur_orthogonality_check(n, m, samples=100_000, seed=n + m) < 0.02


def test_round_laplacian_is_casimir():
    for n in range(11):
        assert np.allclose(float_block(op_laplacian(), n, ROUND), n * (n + 2) * np.eye(n + 1), atol=1e-10)


@pytest.mark.parametrize("case_id", ["A2", "A3", "L1", "L2", "L3", "L4"])
def test_transport_agreement_for_catalog_operators(case_id):
    case = CASES[case_id]
    for spec in case.problems:
        prob = build_problem(case, spec)
        op, frame = prob.operator, prob.frame
        for n in range(11):
            exact = mx.to_complex(block_matrix(op, n, frame))
            moved = transport_block(exact, n, op.d_out, op.d_in, frame.p_sq)
            assert np.abs(moved - float_block(op, n, frame)).max() < 1e-9


def test_identity_has_full_nullity_at_one():
    assert float_nullity(np.eye(4), 1) == 4


def test_constant_dirac_block_is_invertible_after_shift():
    assert float_nullity(float_block(op_dirac_A3(), 0, A3_FRAME), -1) == 0


def test_dirac_A3_top_block_nullity():
    assert float_nullity(float_block(op_dirac_A3(), 6, A3_FRAME), -1) == 2


def test_perturbation_destroys_nullity():
    b = float_block(op_laplacian(), 6, Frame(Fraction(1, 3), Fraction(1, 3)))
    assert float_nullity(b, 8) == 2
    rng = np.random.default_rng(0)
    noisy = b + 1e-3 * rng.normal(size=b.shape)
    assert float_nullity(noisy, 8) < 2
