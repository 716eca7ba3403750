"""Fixed-size complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` complex128 arrays. Two-qubit operators use the
basis order |00>, |01>, |10>, |11> with qubit A as the left (most significant)
tensor factor.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotAProduct, NotUnitary

UNITARY_TOL = 1e-10
EXACT_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# control A, target B: swaps |10> and |11>
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=complex)

SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)


def pauli(axis: str) -> np.ndarray:
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def rot(axis: str, theta: float) -> np.ndarray:
    """Return exp(-i theta sigma_axis) = cos(theta) I - i sin(theta) sigma_axis."""
    return math.cos(theta) * I2 - 1j * math.sin(theta) * pauli(axis)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a (x) b)[2i+k, 2j+l] = a[i, j] b[k, l]; same as np.kron for matrices, without its overhead."""
    a, b = np.asarray(a), np.asarray(b)
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def unitarity_residual(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(dagger(m) @ m - np.eye(m.shape[0]))))


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return False
    return unitarity_residual(m) < tol


def is_special_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return is_unitary(m, tol) and abs(np.linalg.det(m) - 1) < tol


def su4_normalize(u: np.ndarray, tol: float = UNITARY_TOL) -> tuple[np.ndarray, float]:
    """Split a unitary into ``(special_unitary, phase)`` with ``exp(i*phase) * su == u``.

    The phase is a fourth root of det(u), taking the principal branch so that
    it lies in (-pi/4, pi/4].
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or not is_unitary(u, tol):
        raise NotUnitary("input is not a 4x4 unitary within tolerance")
    alpha = cmath.phase(np.linalg.det(u))
    if alpha <= -math.pi:
        alpha += 2 * math.pi
    phase = alpha / 4
    return u * cmath.exp(-1j * phase), phase


def bell(m: int, n: int) -> np.ndarray:
    """Bell state gamma_mn: m selects the relative sign, n the parity."""
    if m not in (0, 1) or n not in (0, 1):
        raise ValueError("Bell indices must be bits")
    v = np.zeros(4, dtype=complex)
    s = 1 / math.sqrt(2)
    sign = -1 if m else 1
    if n == 0:
        v[0], v[3] = s, sign * s
    else:
        v[1], v[2] = s, sign * s
    return v


def magic_basis() -> np.ndarray:
    """Columns gamma00, -i gamma10, gamma11, -i gamma01.

    Conjugating by this matrix sends SU(2) x SU(2) onto SO(4) and makes every
    canonical interaction exp(-iH) diagonal.
    """
    return np.column_stack([bell(0, 0), -1j * bell(1, 0), bell(1, 1), -1j * bell(0, 1)])


MAGIC = magic_basis()
MAGIC_DAG = dagger(MAGIC)


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - |tr(a^dagger b)| / d; zero iff a and b agree up to a global phase."""
    d = a.shape[0]
    overlap = float(abs(np.trace(dagger(a) @ b))) / d
    return max(0.0, 1.0 - overlap)


def _to_su2(m: np.ndarray) -> tuple[np.ndarray, float]:
    det = np.linalg.det(m)
    if abs(det) < 1e-300:
        raise NotAProduct("singular factor")
    half = cmath.phase(det) / 2
    scale = cmath.exp(1j * half) * math.sqrt(abs(det))
    return m / scale, half


def factor_local(g: np.ndarray, tol: float = UNITARY_TOL) -> tuple[np.ndarray, np.ndarray, float]:
    """Factor ``g = exp(i*phase) * kron(a, b)`` with a, b in SU(2).

    Raises NotAProduct when no such factorization reproduces ``g`` to ``tol``
    (max-abs entry residual).
    """
    g = np.asarray(g, dtype=complex)
    blocks = g.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3)  # blocks[i, j] = a[i, j] * b
    norms = np.linalg.norm(blocks, axis=(2, 3))
    i, j = np.unravel_index(int(np.argmax(norms)), norms.shape)
    b, _ = _to_su2(blocks[i, j])
    a = np.einsum("kl,ijkl->ij", b.conj(), blocks) / 2  # tr(b^dagger block) / 2
    try:
        a, _ = _to_su2(a)
    except NotAProduct:
        raise NotAProduct("operator is entangling") from None
    prod = kron(a, b)
    phase = cmath.phase(np.trace(dagger(prod) @ g))
    residual = np.max(np.abs(cmath.exp(1j * phase) * prod - g))
    if not residual <= tol:
        raise NotAProduct(f"no product factorization (residual {residual:.3g})")
    return a, b, phase


@dataclass(frozen=True)
class EulerAngles:
    """u = exp(i phase) R_outer(a) R_inner(theta) R_outer(c), with R_s(t) = exp(-i t sigma_s)."""

    a: float
    theta: float
    c: float
    phase: float
    convention: str = "ZXZ"

    def matrix(self) -> np.ndarray:
        outer, inner = self.convention[0].lower(), self.convention[1].lower()
        return cmath.exp(1j * self.phase) * (rot(outer, self.a) @ rot(inner, self.theta) @ rot(outer, self.c))


_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _wrap(angle: float) -> float:
    return math.remainder(angle, 2 * math.pi)


def euler_decompose(u: np.ndarray, convention: str = "ZXZ", tol: float = EXACT_TOL) -> EulerAngles:
    if convention not in ("ZXZ", "XZX"):
        raise ValueError(f"unsupported Euler convention {convention!r}")
    u = np.asarray(u, dtype=complex)
    work = u
    if convention == "XZX":
        # Hadamard conjugation swaps the roles of X and Z
        work = _HADAMARD @ u @ _HADAMARD
    v, _ = _to_su2(work)
    cos_t, sin_t = abs(v[0, 0]), abs(v[1, 0])
    theta = math.atan2(sin_t, cos_t)
    # v = [[e^{-i(a+c)} cos, -i e^{-i(a-c)} sin], [-i e^{i(a-c)} sin, e^{i(a+c)} cos]]
    if sin_t < tol:
        a, c = -cmath.phase(v[0, 0]), 0.0
    elif cos_t < tol:
        a, c = cmath.phase(1j * v[1, 0]), 0.0
    else:
        s = -cmath.phase(v[0, 0])
        d = cmath.phase(1j * v[1, 0])
        a, c = (s + d) / 2, (s - d) / 2
    angles = EulerAngles(_wrap(a), theta, _wrap(c), 0.0, convention)
    phase = cmath.phase(np.trace(dagger(angles.matrix()) @ u))
    return EulerAngles(angles.a, theta, angles.c, phase, convention)


def haar_su4(seed: int) -> np.ndarray:
    """Haar-random SU(4) matrix, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    su, _ = su4_normalize(q)
    return su
