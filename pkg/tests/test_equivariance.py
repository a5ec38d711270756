from __future__ import annotations

from fractions import Fraction

import pytest

from homspec import matrices as mx
from homspec.catalog import CASES
from homspec.equivariance import (
    K2,
    SU2Elem,
    adjoint_in_frame,
    averaging_projector,
    character_dimension,
    check_fiber_rep,
    closure,
    direct_sum,
    equivariant_basis,
    explicit_rep,
    hom_dimension_table,
    joint_action,
    subgroup,
    trivial_rep,
)
from homspec.operators import ROUND, Frame
from homspec.scalars import I, ONE, ZERO, Cyc

A2 = CASES["A2"].frame


def _series(numerator: dict[int, int], denominator_degrees: tuple[int, ...], n_max: int) -> list[int]:
    """Power series coefficients of numerator / prod(1 - t^d)."""
    coeffs = [0] * (n_max + 1)
    for e, c in numerator.items():
        if e <= n_max:
            coeffs[e] += c
    for d in denominator_degrees:
        for n in range(d, n_max + 1):
            coeffs[n] += coeffs[n - d]
    return coeffs


@pytest.mark.parametrize("label, order", [("trivial", 1), ("Z2", 2), ("Z3", 3), ("A4star", 24), ("D3star", 12)])
def test_subgroup_orders(label, order):
    g = subgroup(label)
    assert g.order == order
    assert len(set(g.elements)) == order
    for x in g.elements:
        for y in g.elements:
            assert x * y in g.elements


def test_unknown_subgroup():
    with pytest.raises(KeyError):
        subgroup("E8")


def test_closure_safety_bound():
    # (3 + 4i)/5 has infinite order
    a = Cyc([Fraction(3, 5), 0, 0, 0, 0, 0, Fraction(4, 5), 0])
    with pytest.raises(ValueError, match="exceeds"):
        closure([SU2Elem(a, ZERO)], "irrational rotation")


def test_cyclic_tables():
    z3 = hom_dimension_table(subgroup("Z3"), trivial_rep(), 12)
    assert z3 == {n: sum(1 for k in range(n + 1) if (n - 2 * k) % 3 == 0) for n in range(13)}
    z2 = hom_dimension_table(subgroup("Z2"), trivial_rep(), 9)
    assert z2 == {n: (n + 1 if n % 2 == 0 else 0) for n in range(10)}


def test_binary_tetrahedral_invariants_follow_molien_series():
    expected = _series({0: 1, 12: 1}, (6, 8), 14)
    assert list(hom_dimension_table(subgroup("A4star"), trivial_rep(), 14).values()) == expected


def test_binary_dihedral_invariants_follow_molien_series():
    expected = _series({0: 1, 8: 1}, (4, 6), 14)
    assert list(hom_dimension_table(subgroup("D3star"), trivial_rep(), 14).values()) == expected


def test_binary_tetrahedral_sextic_invariant():
    (v,) = equivariant_basis(6, subgroup("A4star"), trivial_rep())
    expected = [ZERO] * 7
    expected[1], expected[5] = ONE, -ONE
    assert mx.rank(mx.hstack([v, expected])) == 1


def test_binary_dihedral_invariants_in_low_degree():
    (v,) = equivariant_basis(6, subgroup("D3star"), trivial_rep())
    assert mx.rank(mx.hstack([v, [ONE, ZERO, ZERO, ZERO, ZERO, ZERO, ONE]])) == 1
    (w,) = equivariant_basis(4, subgroup("D3star"), trivial_rep())
    assert mx.rank(mx.hstack([w, [ZERO, ZERO, ONE, ZERO, ZERO]])) == 1


def _frame_vector(n: int, slot: int, l: int) -> list[Cyc]:
    # e3, e1 - i e2, e1 + i e2 placed on m_l
    v = [ZERO] * (3 * (n + 1))
    if slot == 0:
        v[2 * (n + 1) + l] = ONE
    else:
        v[l] = ONE
        v[(n + 1) + l] = -I if slot == 1 else I
    return v


@pytest.mark.parametrize("n", range(8))
def test_cyclic_adjoint_fixed_vectors(n):
    basis = equivariant_basis(n, subgroup("Z3"), adjoint_in_frame(A2), A2)
    expected = [_frame_vector(n, (n - 2 * l) % 3, l) for l in range(n + 1)]
    assert len(basis) == n + 1
    for v in expected:
        assert mx.in_span(basis, v)


@pytest.mark.parametrize("label", ["Z2", "Z3", "A4star", "D3star"])
@pytest.mark.parametrize("n", [0, 3, 4, 6])
def test_basis_vectors_are_fixed(label, n):
    gamma = subgroup(label)
    tau = adjoint_in_frame(ROUND) if label in ("A4star", "D3star") else trivial_rep(2)
    for v in equivariant_basis(n, gamma, tau):
        for g in gamma.generators:
            assert mx.matvec(joint_action(n, g, tau), v) == v


def test_projector_is_idempotent_with_scaled_frame():
    frame = Frame(Fraction(1, 2), Fraction(1, 2))
    tau = direct_sum(adjoint_in_frame(frame), trivial_rep())
    p = averaging_projector(4, subgroup("Z2"), tau, frame.p_sq)
    assert mx.equal(mx.matmul(p, p), p)


@pytest.mark.parametrize("label", ["Z3", "A4star", "D3star"])
def test_dimension_matches_character_inner_product(label):
    gamma = subgroup(label)
    for tau in (trivial_rep(), adjoint_in_frame(ROUND), direct_sum(adjoint_in_frame(ROUND), trivial_rep())):
        for n in range(9):
            assert len(equivariant_basis(n, gamma, tau)) == character_dimension(n, gamma, tau)


def test_adjoint_incompatible_with_frame_scaling():
    with pytest.raises(ValueError, match="scaling"):
        equivariant_basis(2, subgroup("A4star"), adjoint_in_frame(A2), A2)


def test_explicit_fiber_representation():
    gamma = subgroup("Z2")
    sign = explicit_rep(1, {g: [[Cyc([1 if g == SU2Elem.identity() else -1])]] for g in gamma.elements}, "sign")
    check_fiber_rep(gamma, sign)
    # the sign character of -1 pairs with odd n
    assert [len(equivariant_basis(n, gamma, sign)) for n in range(4)] == [0, 2, 0, 4]
    bad = explicit_rep(1, {g: [[Cyc([-1])]] for g in gamma.elements}, "bad")
    with pytest.raises(ValueError, match="not a representation"):
        check_fiber_rep(gamma, bad)
    with pytest.raises(KeyError):
        sign(K2)


def test_trivial_group_gives_full_space():
    assert len(equivariant_basis(5, subgroup("trivial"), trivial_rep(4))) == 24
