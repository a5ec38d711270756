"""Invariant differential operators as End(E0)-valued words in a frame.

An ``OperatorSpec`` is a sum of terms ``coefficient (x) e_{w1} ... e_{wk}``
with words of length at most two.  Evaluating it on V_n replaces each frame
vector by its block (see ``su2.scaled_generator``) and tensors with the fiber
coefficient, fiber index major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol, Sequence

from . import matrices as mx
from .matrices import Matrix
from .scalars import ZERO, Cyc, Scalar, cyc
from .su2 import scaled_generator

Word = tuple[int, ...]
StructureConstants = tuple[tuple[tuple[Cyc, ...], ...], ...]


class HasStructure(Protocol):
    label: str

    def structure_constants(self) -> StructureConstants: ...


@dataclass(frozen=True)
class Frame:
    """Left-invariant orthonormal frame ``(p E1, p E2, q E3)`` on SU(2)."""

    p_sq: Fraction
    q: Fraction
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_sq", Fraction(self.p_sq))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.p_sq <= 0:
            raise ValueError("p_sq must be positive")
        if self.q == 0:
            raise ValueError("q must be nonzero")

    def structure_constants(self) -> StructureConstants:
        """``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k`` (0-based)."""
        c = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
        a = cyc(2 * self.p_sq / self.q)
        b = cyc(2 * self.q)
        for i, j, k, v in ((0, 1, 2, a), (1, 2, 0, b), (2, 0, 1, b)):
            c[i][j][k] = v
            c[j][i][k] = -v
        return tuple(tuple(tuple(r) for r in m) for m in c)

    def generator(self, n: int, i: int) -> Matrix:
        return scaled_generator(n, i, self.p_sq, self.q)


ROUND = Frame(1, 1, "round")


@dataclass(frozen=True)
class OperatorSpec:
    d_out: int
    d_in: int
    terms: tuple[tuple[tuple[tuple[Cyc, ...], ...], Word], ...]
    name: str = "generic"
    family: str = "generic"
    params: tuple = field(default=())

    def __post_init__(self) -> None:
        for coef, word in self.terms:
            if len(coef) != self.d_out or any(len(r) != self.d_in for r in coef):
                raise ValueError(f"coefficient shape mismatch in {self.name}")
            if len(word) > 2 or any(w not in (1, 2, 3) for w in word):
                raise ValueError(f"invalid word {word!r} in {self.name}")

    @property
    def order(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def is_real(self) -> bool:
        """True when every coefficient is real (frame vectors are real fields)."""
        return all(x.is_real() for coef, _ in self.terms for row in coef for x in row)

    def coefficient_words(self) -> list[tuple[Matrix, Word]]:
        return [([list(r) for r in coef], word) for coef, word in self.terms]

    def rename(self, name: str, family: str, params: tuple = ()) -> OperatorSpec:
        return OperatorSpec(self.d_out, self.d_in, self.terms, name, family, params)


def _freeze(m: Matrix) -> tuple[tuple[Cyc, ...], ...]:
    return tuple(tuple(cyc(x) for x in row) for row in m)


def make_operator(
    d_out: int, d_in: int, terms: Sequence[tuple[Matrix, Word]], name: str = "generic"
) -> OperatorSpec:
    """Collect terms by word, dropping zero coefficients."""
    merged: dict[Word, Matrix] = {}
    for coef, word in terms:
        word = tuple(word)
        coef = [[cyc(x) for x in row] for row in coef]
        merged[word] = mx.add(merged[word], coef) if word in merged else coef
    ordered = sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0]))
    frozen = tuple((_freeze(c), w) for w, c in ordered if not mx.is_zero(c))
    return OperatorSpec(d_out, d_in, frozen, name)


def unit(d_out: int, d_in: int, i: int, j: int, s: Scalar = 1) -> Matrix:
    m = mx.zeros(d_out, d_in)
    m[i][j] = cyc(s)
    return m


def place(op: OperatorSpec, d_out: int, d_in: int, row: int, col: int) -> list[tuple[Matrix, Word]]:
    """Embed op's terms into a larger fiber at offset (row, col)."""
    out = []
    for coef, word in op.coefficient_words():
        big = mx.zeros(d_out, d_in)
        for i, r in enumerate(coef):
            for j, x in enumerate(r):
                big[row + i][col + j] = x
        out.append((big, word))
    return out


def scaled_terms(op: OperatorSpec, s: Scalar) -> list[tuple[Matrix, Word]]:
    return [(mx.scale(c, s), w) for c, w in op.coefficient_words()]


# -- the basic operators ---------------------------------------------------


def _cross_terms() -> list[tuple[Matrix, Word]]:
    # ((0, -e3, e2), (e3, 0, -e1), (-e2, e1, 0))
    pattern = {(0, 1): (3, -1), (0, 2): (2, 1), (1, 0): (3, 1), (1, 2): (1, -1), (2, 0): (2, -1), (2, 1): (1, 1)}
    return [(unit(3, 3, i, j, s), (w,)) for (i, j), (w, s) in pattern.items()]


def rot_constant(frame: HasStructure) -> Matrix:
    """Rows are the structure-constant vectors c_23, c_31, c_12."""
    c = frame.structure_constants()
    return [list(c[1][2]), list(c[2][0]), list(c[0][1])]


def op_rot(frame: HasStructure) -> OperatorSpec:
    terms = _cross_terms() + [(mx.scale(rot_constant(frame), -1), ())]
    return make_operator(3, 3, terms).rename("rot", "rot")


def op_laplacian(frame: HasStructure | None = None) -> OperatorSpec:
    terms = [([[cyc(-1)]], (i, i)) for i in (1, 2, 3)]
    return make_operator(1, 1, terms).rename("laplacian", "laplacian")


def op_grad(frame: HasStructure | None = None) -> OperatorSpec:
    return make_operator(3, 1, [(unit(3, 1, i, 0), (i + 1,)) for i in range(3)]).rename("grad", "generic")


def check_divergence_precondition(frame: HasStructure) -> None:
    c = frame.structure_constants()
    for i in range(3):
        for k in range(3):
            if c[i][k][i]:
                raise ValueError(f"frame {frame.label!r}: [e_{i+1}, e_{k+1}] has an e_{i+1} component")


def op_div(frame: HasStructure) -> OperatorSpec:
    check_divergence_precondition(frame)
    return make_operator(1, 3, [(unit(1, 3, 0, i), (i + 1,)) for i in range(3)]).rename("div", "generic")


def op_dirac_SE(frame: HasStructure) -> OperatorSpec:
    """D(v, f) = (-grad f + rot v + v, div v + 3 f)."""
    terms = place(op_rot(frame), 4, 4, 0, 0)
    terms += [(mx.scale(c, -1), w) for c, w in place(op_grad(frame), 4, 4, 0, 3)]
    terms += place(op_div(frame), 4, 4, 3, 0)
    terms.append((mx.diag([1, 1, 1, 3]), ()))
    return make_operator(4, 4, terms).rename("dirac_SE", "generic")


def op_dirac_sine(frame: HasStructure) -> OperatorSpec:
    """D(v, f) = (-grad f - rot v + 2 v, div v)."""
    terms = [(mx.scale(c, -1), w) for c, w in place(op_rot(frame), 4, 4, 0, 0)]
    terms += [(mx.scale(c, -1), w) for c, w in place(op_grad(frame), 4, 4, 0, 3)]
    terms += place(op_div(frame), 4, 4, 3, 0)
    terms.append((mx.diag([2, 2, 2, 0]), ()))
    return make_operator(4, 4, terms).rename("dirac_sine", "generic")


A3_FRAME = Frame(Fraction(1, 7), 1, "A3")

_A3_FIRST_ORDER = (
    (0, (3, -1), (2, 1), (1, -1)),
    ((3, 1), 0, (1, -1), (2, -1)),
    ((2, -1), (1, 1), 0, (3, -1)),
    ((1, 1), (2, 1), (3, 1), 0),
)


def op_dirac_A3() -> OperatorSpec:
    """Twisted Dirac operator of the A3 orbit in its trivialized normal frame."""
    terms: list[tuple[Matrix, Word]] = []
    for i, row in enumerate(_A3_FIRST_ORDER):
        for j, entry in enumerate(row):
            if entry:
                w, s = entry
                terms.append((unit(4, 4, i, j, s), (w,)))
    terms.append((mx.diag([Fraction(-15, 7), Fraction(-15, 7), 3, 3]), ()))
    return make_operator(4, 4, terms).rename("dirac_A3", "dirac_A3")


# -- Levi-Civita data and second-order operators ---------------------------


def christoffel(frame: HasStructure) -> list[Matrix]:
    """``A[i]`` with ``(A[i])[k][j] = Gamma_ij^k``, i.e. nabla_{e_i} e_j = sum_k Gamma_ij^k e_k."""
    c = frame.structure_constants()
    half = Fraction(1, 2)
    out = []
    for i in range(3):
        a = mx.zeros(3, 3)
        for j in range(3):
            for k in range(3):
                a[k][j] = (c[i][j][k] - c[j][k][i] + c[k][i][j]) * half
        out.append(a)
    return out


def op_rough_laplacian(frame: HasStructure) -> OperatorSpec:
    """Connection Laplacian on vector fields expressed in the frame."""
    a = christoffel(frame)
    terms: list[tuple[Matrix, Word]] = []
    eye = mx.identity(3)
    for i in range(3):
        # -(e_i + A_i)^2
        terms.append((mx.scale(eye, -1), (i + 1, i + 1)))
        terms.append((mx.scale(a[i], -2), (i + 1,)))
        terms.append((mx.scale(mx.matmul(a[i], a[i]), -1), ()))
        # + nabla_{nabla_{e_i} e_i}
        for k in range(3):
            g = a[i][k][i]
            if g:
                terms.append((mx.scale(eye, g), (k + 1,)))
                terms.append((mx.scale(a[k], g), ()))
    return make_operator(3, 3, terms).rename("rough_laplacian", "generic")


def curvature(frame: HasStructure, a_idx: int, b_idx: int) -> Matrix:
    """R(e_a, e_b) = [A_a, A_b] - sum_c c_ab^c A_c."""
    a = christoffel(frame)
    c = frame.structure_constants()
    out = mx.commutator(a[a_idx], a[b_idx])
    for k in range(3):
        if c[a_idx][b_idx][k]:
            out = mx.sub(out, mx.scale(a[k], c[a_idx][b_idx][k]))
    return out


def ricci_matrix(frame: HasStructure) -> Matrix:
    """Matrix of v -> sum_i R(v, e_i) e_i."""
    out = mx.zeros(3, 3)
    for a_idx in range(3):
        for i in range(3):
            r = curvature(frame, a_idx, i)
            for k in range(3):
                out[k][a_idx] = out[k][a_idx] + r[k][i]
    return out


def op_ricci(frame: HasStructure) -> OperatorSpec:
    return make_operator(3, 3, [(ricci_matrix(frame), ())]).rename("ricci", "generic")


def op_dirac_SE_squared_rhs(frame: HasStructure) -> OperatorSpec:
    """(-4 grad f + v + 2 rot v + rough(v) + Ric(v), lap f + 4 div v + 9 f)."""
    terms = [(mx.scale(c, -4), w) for c, w in place(op_grad(frame), 4, 4, 0, 3)]
    terms += scaled_terms(_placed(op_rot(frame)), 2)
    terms += place(op_rough_laplacian(frame), 4, 4, 0, 0)
    terms += place(op_ricci(frame), 4, 4, 0, 0)
    terms += place(op_laplacian(frame), 4, 4, 3, 3)
    terms += [(mx.scale(c, 4), w) for c, w in place(op_div(frame), 4, 4, 3, 0)]
    terms.append((mx.diag([1, 1, 1, 9]), ()))
    return make_operator(4, 4, terms).rename("dirac_SE_squared_rhs", "generic")


def _placed(op: OperatorSpec) -> OperatorSpec:
    return make_operator(4, 4, place(op, 4, 4, 0, 0))


def direct_sum_constant(d: int, s: Scalar) -> OperatorSpec:
    return make_operator(d, d, [(mx.scale(mx.identity(d), s), ())])


# -- block assembly ----------------------------------------------------------


def word_block(word: Word, n: int, frame: Frame) -> Matrix:
    if not word:
        return mx.identity(n + 1)
    out = frame.generator(n, word[0])
    for w in word[1:]:
        out = mx.matmul(out, frame.generator(n, w))
    return out


def block_matrix(op: OperatorSpec, n: int, frame: Frame) -> Matrix:
    """Block of ``op`` on (fiber) (x) V_n in the balanced basis, fiber index major."""
    size_out, size_in = op.d_out * (n + 1), op.d_in * (n + 1)
    out = mx.zeros(size_out, size_in)
    for coef, word in op.coefficient_words():
        out = mx.add(out, mx.kron(coef, word_block(word, n, frame)))
    return out
