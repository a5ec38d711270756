from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from homspec import matrices as mx
from homspec.operators import make_operator, op_dirac_SE, op_laplacian, op_rot
from homspec.results import UncertifiedError
from homspec.scalars import ZERO
from homspec.torus import (
    GRAM_Q,
    TORUS,
    character_block,
    derivative_data,
    lattice_ball,
    lattice_enumerate,
    quadratic_form,
    torus_solve,
)


def test_gram_spectrum():
    assert np.allclose(sorted(np.linalg.eigvalsh(np.array(GRAM_Q, dtype=float))), [1, 4, 4])


def test_quadratic_form_equals_squared_frame_data():
    for g in product(range(-10, 11), repeat=3):
        c = derivative_data(g)
        assert sum((x * x for x in c), ZERO) == quadratic_form(g)


@pytest.mark.parametrize(
    "lam, size", [(0, 1), (1, 0), (2, 0), (3, 8), (4, 6), (8, 12)]
)
def test_shell_sizes(lam, size):
    assert len(lattice_enumerate(lam)) == size


def test_shell_examples():
    assert lattice_enumerate(0) == [(0, 0, 0)]
    assert lattice_enumerate(4) == [(-1, -1, 0), (-1, 0, -1), (0, -1, -1), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert (1, 1, 2) in lattice_enumerate(8) and (1, -1, 0) in lattice_enumerate(8)


@pytest.mark.parametrize("lam", [3, 4, 8, 11, 12, 20])
def test_doubled_search_radius_finds_nothing_new(lam):
    assert lattice_enumerate(lam) == lattice_enumerate(lam, radius_scale=2)


def test_non_integer_shell_is_empty():
    assert lattice_enumerate(Fraction(7, 2)) == []
    with pytest.raises(ValueError):
        lattice_enumerate(-1)


def test_laplacian_character_block():
    for g in lattice_ball(12):
        assert character_block(op_laplacian(TORUS), g) == [[quadratic_form(g)]]


def test_laplacian_solution_count():
    space = torus_solve(op_laplacian(TORUS), 8)
    assert space.complex_dim == 12 and space.real_dim == 12
    assert space.certified and space.conjugation_closed


def test_rot_solution_count():
    space = torus_solve(op_rot(TORUS), -2)
    assert space.real_dim == 6
    assert all(b.nullity == 1 for b in space.blocks)
    assert space.conjugation_closed


def test_rot_eigenvalues_pair_up_on_each_character():
    # on gamma != 0 the spectrum of rot is {0, |c|, -|c|}
    rot = op_rot(TORUS)
    for g in lattice_enumerate(4):
        block = character_block(rot, g)
        plus = len(mx.nullspace(mx.sub(block, mx.scale(mx.identity(3), 2))))
        minus = len(mx.nullspace(mx.add(block, mx.scale(mx.identity(3), 2))))
        kernel = len(mx.nullspace(block))
        assert (plus, minus, kernel) == (1, 1, 1)


def test_zero_eigenvalue_of_rot_is_not_certified():
    with pytest.raises(UncertifiedError):
        torus_solve(op_rot(TORUS), 0)


def test_dirac_needs_manual_radius():
    with pytest.raises(UncertifiedError):
        torus_solve(op_dirac_SE(TORUS), -1)
    space = torus_solve(op_dirac_SE(TORUS), -1, radius_sq=12)
    assert not space.certified
    assert space.complex_dim == 18
    assert all(b.nullity for b in space.blocks)


def test_mixed_second_order_words_rejected():
    op = make_operator(1, 1, [([[1]], (1, 2))])
    with pytest.raises(ValueError, match="mixed"):
        torus_solve(op, 0, radius_sq=4)
    with pytest.raises(ValueError, match="square"):
        torus_solve(make_operator(1, 3, [([[1, 0, 0]], (1,))]), 0, radius_sq=4)
