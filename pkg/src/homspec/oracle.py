"""Independent floating-point cross-check.

Everything here is rebuilt in double precision from the unitary ladder
coefficients and from float copies of the subgroup generators; no exact block
matrix is used to construct anything.  Ranks are read off singular values and
are only trusted when the spectrum shows a clear gap.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt

import numpy as np

ZERO_TOL = 1e-8
GAP_RATIO = 1e6
MAX_N = 40


class IndeterminateRankError(ArithmeticError):
    """The singular values do not separate into zero and nonzero clusters."""


# -- unitary generators ------------------------------------------------------


@lru_cache(maxsize=None)
def ladder_generators(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(E1, E2, E3) on V_n in the orthonormal basis v_k."""
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the conditioning guard {MAX_N}")
    d = n + 1
    raise_ = np.zeros((d, d), dtype=complex)  # -i E1 + E2
    lower = np.zeros((d, d), dtype=complex)  # i E1 + E2
    for k in range(d):
        if k < n:
            raise_[k + 1, k] = 2j * sqrt((k + 1) * (n - k))
        if k > 0:
            lower[k - 1, k] = 2j * sqrt(k * (n - k + 1))
    e1 = 0.5j * (raise_ - lower)
    e2 = 0.5 * (raise_ + lower)
    e3 = np.diag([1j * (n - 2 * k) for k in range(d)])
    for m in (e1, e2, e3):
        m.setflags(write=False)
    return e1, e2, e3


def frame_scales(frame) -> tuple[float, float, float]:
    p = sqrt(float(frame.p_sq))
    q = float(frame.q)
    return p, p, q


def float_generators(n: int, frame) -> list[np.ndarray]:
    s = frame_scales(frame)
    return [s[i] * g for i, g in enumerate(ladder_generators(n))]


def _coef_array(coef) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in coef], dtype=complex)


def float_block(op, n: int, frame) -> np.ndarray:
    """Block of ``op`` on E0 (x) V_n in the orthonormal basis, fiber index major."""
    gens = float_generators(n, frame)
    d = n + 1
    out = np.zeros((op.d_out * d, op.d_in * d), dtype=complex)
    for coef, word in op.coefficient_words():
        w = np.eye(d, dtype=complex)
        for i in word:
            w = w @ gens[i - 1]
        out += np.kron(_coef_array(coef), w)
    return out


# -- group data --------------------------------------------------------------

_S2 = 1 / sqrt(2)
_FLOAT_GENERATORS = {
    "trivial": [],
    "Z2": [(-1 + 0j, 0j)],
    "Z3": [(cmath.exp(2j * math.pi / 3), 0j)],
    "A4star": [(1j, 0j), (0j, 1 + 0j), (_S2 * cmath.exp(1j * math.pi / 4), _S2 * cmath.exp(1j * math.pi / 4))],
    "D3star": [(0j, 1 + 0j), (cmath.exp(1j * math.pi / 3), 0j)],
}


def su2_matrix(a: complex, b: complex) -> np.ndarray:
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def float_closure(label: str, tol: float = 1e-9, bound: int = 240) -> list[np.ndarray]:
    gens = [su2_matrix(a, b) for a, b in _FLOAT_GENERATORS[label]]
    elems = [np.eye(2, dtype=complex)]
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if all(np.abs(y - e).max() > tol for e in elems):
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > bound:
                        raise ValueError("float closure exceeded its bound")
        frontier = nxt
    return elems


def float_rho(n: int, g: np.ndarray) -> np.ndarray:
    """rho_n(g) in the orthonormal basis, by polynomial expansion."""
    a, b = g[0, 0], g[1, 0]
    first = np.array([a, b])
    second = np.array([-np.conj(b), np.conj(a)])

    def power(lin: np.ndarray, e: int) -> np.ndarray:
        return np.array([comb(e, j) * lin[0] ** (e - j) * lin[1] ** j for j in range(e + 1)], dtype=complex)

    mono = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        mono[:, k] = np.convolve(power(first, n - k), power(second, k))
    g_half = np.sqrt([float(factorial(k) * factorial(n - k)) for k in range(n + 1)])
    return (g_half[:, None] * mono) / g_half[None, :]


_E = [
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]], dtype=complex),
    np.array([[1j, 0], [0, -1j]], dtype=complex),
]


def float_adjoint(g: np.ndarray, frame=None) -> np.ndarray:
    ginv = np.linalg.inv(g)
    ad = np.zeros((3, 3))
    for i, e in enumerate(_E):
        m = g @ e @ ginv
        for j, f in enumerate(_E):
            ad[j, i] = (-0.5 * np.trace(m @ f)).real
    if frame is None:
        return ad
    s = np.diag(frame_scales(frame))
    return np.linalg.inv(s) @ ad @ s


def float_fiber(tau, g: np.ndarray) -> np.ndarray:
    if tau.kind == "trivial":
        return np.eye(tau.d)
    if tau.kind == "adjoint-in-frame":
        return float_adjoint(g, tau.frame)
    if tau.kind == "sum":
        blocks = [float_fiber(r, g) for r in tau.parts]
        out = np.zeros((tau.d, tau.d), dtype=complex)
        off = 0
        for b in blocks:
            out[off : off + len(b), off : off + len(b)] = b
            off += len(b)
        return out
    raise ValueError(f"oracle has no float model for fiber kind {tau.kind!r}")


def float_equivariant_basis(n: int, label: str, tau) -> np.ndarray:
    """Orthonormal basis (columns) of the fixed space of tau (x) rho_n."""
    size = tau.d * (n + 1)
    elems = float_closure(label)
    if len(elems) == 1:
        return np.eye(size, dtype=complex)
    proj = sum(np.kron(float_fiber(tau, g), float_rho(n, g)) for g in elems) / len(elems)
    u, s, _ = np.linalg.svd(proj)
    return u[:, s > 0.5]


# -- rank ----------------------------------------------------------------------


def certified_nullity(m: np.ndarray) -> int:
    """Column nullity from singular values, refusing to guess without a gap."""
    rows, cols = m.shape
    if cols == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False) if rows else np.zeros(0)
    sv = np.concatenate([sv, np.zeros(max(0, cols - len(sv)))])
    smax = sv.max() if sv.size else 0.0
    zero = sv[sv < ZERO_TOL]
    nonzero = sv[sv >= ZERO_TOL]
    if nonzero.size:
        floor = max(zero.max() if zero.size else 0.0, 1e-15 * smax)
        if floor > 0 and nonzero.min() / floor < GAP_RATIO:
            raise IndeterminateRankError(
                f"singular value gap {nonzero.min():.3e} / {floor:.3e} is below {GAP_RATIO:.0e}"
            )
    return int(zero.size)


def float_nullity(matrix: np.ndarray, alpha: float | Fraction = 0) -> int:
    m = np.asarray(matrix, dtype=complex)
    return certified_nullity(m - float(alpha) * np.eye(m.shape[0], m.shape[1]))


def oracle_block_nullity(problem, n: int) -> int:
    b = float_block(problem.operator, n, problem.frame)
    b = b - float(problem.alpha) * np.eye(b.shape[0])
    q = float_equivariant_basis(n, problem.gamma.label, problem.tau)
    return certified_nullity(b @ q)


def oracle_nullities(problem, n_max: int) -> dict[int, int]:
    return {n: oracle_block_nullity(problem, n) for n in range(n_max + 1)}


# -- torus -------------------------------------------------------------------

_TORUS_ROWS = np.array([[sqrt(2), 0, 0], [0, sqrt(2), -sqrt(2)], [-1, 1, 1]])


def torus_float_block(op, gamma) -> np.ndarray:
    c = _TORUS_ROWS @ np.asarray(gamma, dtype=float)
    out = np.zeros((op.d_out, op.d_in), dtype=complex)
    for coef, word in op.coefficient_words():
        s = 1 + 0j
        for w in word:
            s *= 1j * c[w - 1]
        out += s * _coef_array(coef)
    return out


def torus_oracle_nullities(op, alpha, points) -> dict:
    return {tuple(g): float_nullity(torus_float_block(op, g), alpha) for g in points}


# -- transport and orthogonality checks ----------------------------------------


def unitary_transport(n: int, d: int, p_sq) -> np.ndarray:
    """T with unitary coordinates = T @ balanced coordinates."""
    p = sqrt(float(Fraction(p_sq)))
    t = np.array([sqrt(factorial(k) * factorial(n - k)) * p ** (-k) for k in range(n + 1)])
    return np.diag(np.tile(t, d))


def transport_block(exact_block: np.ndarray, n: int, d_out: int, d_in: int, p_sq) -> np.ndarray:
    t_out = unitary_transport(n, d_out, p_sq)
    t_in = unitary_transport(n, d_in, p_sq)
    return t_out @ exact_block @ np.linalg.inv(t_in)


def haar_samples(count: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(count, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return np.stack([x[:, 0] + 1j * x[:, 1], x[:, 2] + 1j * x[:, 3]], axis=1)


def batch_rho(n: int, samples: np.ndarray) -> np.ndarray:
    """rho_n(g) for a batch of (a, b) pairs, shape (count, n + 1, n + 1)."""
    a, b = samples[:, 0], samples[:, 1]
    first = (a, b)
    second = (-np.conj(b), np.conj(a))

    def power(lin, e: int) -> np.ndarray:
        return np.stack([comb(e, j) * lin[0] ** (e - j) * lin[1] ** j for j in range(e + 1)], axis=1)

    count = len(samples)
    mono = np.zeros((count, n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        u, v = power(first, n - k), power(second, k)
        for s_idx in range(n - k + 1):
            mono[:, s_idx : s_idx + k + 1, k] += u[:, s_idx : s_idx + 1] * v
    g_half = np.sqrt([float(factorial(k) * factorial(n - k)) for k in range(n + 1)])
    return mono * g_half[None, :, None] / g_half[None, None, :]


def _coefficients(n: int, samples: np.ndarray, v: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.einsum("b,sba,a->s", np.conj(u), batch_rho(n, samples), v)


def schur_inner_product(n, m, v, u, v2, u2, samples: int = 100_000, seed: int = 0) -> complex:
    """Monte Carlo estimate of the L2 product of two matrix coefficients over SU(2)."""
    pts = haar_samples(samples, seed)
    f = _coefficients(n, pts, np.asarray(v, dtype=complex), np.asarray(u, dtype=complex))
    g = _coefficients(m, pts, np.asarray(v2, dtype=complex), np.asarray(u2, dtype=complex))
    return complex(np.mean(f * np.conj(g)))


def schur_orthogonality_check(n: int, m: int, samples: int = 100_000, seed: int = 0) -> float:
    """Largest deviation from the orthogonality relations over basis coefficients.

    The product of <rho_n v_a, v_b> with <rho_m v_c, v_e> should be
    delta_nm delta_ac delta_be / (n + 1).
    """
    pts = haar_samples(samples, seed)
    rn = batch_rho(n, pts)
    rm = rn if m == n else batch_rho(m, pts)
    # gram[b, a, e, c] = E[ rn[b, a] * conj(rm[e, c]) ]
    gram = np.einsum("sba,sec->baec", rn, np.conj(rm)) / samples
    expected = np.zeros_like(gram)
    if n == m:
        for a in range(n + 1):
            for b in range(n + 1):
                expected[b, a, b, a] = 1 / (n + 1)
    return float(np.abs(gram - expected).max())
