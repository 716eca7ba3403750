"""Canonical (KAK) decomposition of two-qubit gates.

Every U in U(4) factors as

    U = exp(i phase) (post_a x post_b) exp(-iH) (pre_a x pre_b),
    H = hx XX + hy YY + hz ZZ,

and the interaction coefficients can always be brought into the Weyl chamber
pi/4 >= hx >= hy >= |hz|. The coefficients fix the minimal number of CNOTs
needed to build U from single-qubit gates.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailure
from .linalg import (
    MAGIC,
    MAGIC_DAG,
    bell,
    dagger,
    factor_local,
    is_special_unitary,
    kron,
    pauli,
    rot,
    su4_normalize,
)

QUARTER_PI = math.pi / 4
CLASSIFY_TOL = 1e-8
CHAMBER_SLACK = 1e-9
RECONSTRUCTION_TOL = 1e-9


@dataclass(frozen=True)
class CanonicalParams:
    hx: float
    hy: float
    hz: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.hx, self.hy, self.hz)

    def in_weyl_chamber(self, slack: float = CHAMBER_SLACK) -> bool:
        return (
            QUARTER_PI + slack >= self.hx
            and self.hx + slack >= self.hy
            and self.hy + slack >= abs(self.hz)
        )


@dataclass(frozen=True)
class LambdaPhases:
    """Eigenphases of H on the Bell states: exp(-iH) gamma_mn = exp(-i l_mn) gamma_mn."""

    l00: float
    l01: float
    l10: float
    l11: float

    def __getitem__(self, mn: tuple[int, int]) -> float:
        m, n = mn
        return (self.l00, self.l01, self.l10, self.l11)[2 * m + n]


class GateClass(enum.Enum):
    LOCAL = 0
    ONE_CNOT = 1
    TWO_CNOT = 2
    THREE_CNOT = 3

    @property
    def cnot_count(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return "local" if self is GateClass.LOCAL else f"{self.value}-cnot"


@dataclass(frozen=True, eq=False)
class KakDecomposition:
    pre_a: np.ndarray
    pre_b: np.ndarray
    params: CanonicalParams
    post_a: np.ndarray
    post_b: np.ndarray
    global_phase: float = field(default=0.0)

    def matrix(self) -> np.ndarray:
        return (
            cmath.exp(1j * self.global_phase)
            * kron(self.post_a, self.post_b)
            @ canonical_unitary(self.params)
            @ kron(self.pre_a, self.pre_b)
        )


def lambdas(p: CanonicalParams) -> LambdaPhases:
    hx, hy, hz = p.hx, p.hy, p.hz
    return LambdaPhases(
        l00=hx - hy + hz,
        l01=hx + hy - hz,
        l10=-hx + hy + hz,
        l11=-hx - hy - hz,
    )


def canonical_unitary(p: CanonicalParams) -> np.ndarray:
    """exp(-i(hx XX + hy YY + hz ZZ)) assembled from its Bell-basis spectrum."""
    lam = lambdas(p)
    out = np.zeros((4, 4), dtype=complex)
    for m in (0, 1):
        for n in (0, 1):
            g = bell(m, n)
            out += cmath.exp(-1j * lam[m, n]) * np.outer(g, g.conj())
    return out


def classify(p: CanonicalParams, tol: float = CLASSIFY_TOL) -> GateClass:
    hx, hy, hz = p.hx, p.hy, p.hz
    if max(abs(hx), abs(hy), abs(hz)) < tol:
        return GateClass.LOCAL
    if abs(hx - QUARTER_PI) < tol and abs(hy) < tol and abs(hz) < tol:
        return GateClass.ONE_CNOT
    if abs(hz) < tol:
        return GateClass.TWO_CNOT
    return GateClass.THREE_CNOT


# --- canonicalization -------------------------------------------------------

_AXES = "xyz"

# r (x) r conjugation exchanging two interaction axes: r P_j r^dagger = +-P_k
_SWAPPERS = {
    frozenset("xy"): rot("z", QUARTER_PI),
    frozenset("yz"): rot("x", QUARTER_PI),
    frozenset("xz"): rot("y", QUARTER_PI),
}


class _Canonicalizer:
    """Mutable bookkeeping for U = e^{i phase} (post) C(h) (pre)."""

    def __init__(self, h, pre_a, pre_b, post_a, post_b, phase):
        self.h = [float(v) for v in h]
        self.pre_a, self.pre_b = pre_a, pre_b
        self.post_a, self.post_b = post_a, post_b
        self.phase = phase

    def _conjugate(self, la: np.ndarray, lb: np.ndarray) -> None:
        # C(h) = L^dagger C(h') L  with  L = la (x) lb
        self.pre_a, self.pre_b = la @ self.pre_a, lb @ self.pre_b
        self.post_a, self.post_b = self.post_a @ dagger(la), self.post_b @ dagger(lb)

    def shift(self, k: int, steps: int) -> None:
        """h_k -> h_k - steps*pi/2, using exp(-i pi/2 PP) = i (iP) (x) (iP)."""
        if steps == 0:
            return
        self.h[k] -= steps * math.pi / 2
        ip = np.linalg.matrix_power(1j * pauli(_AXES[k]), steps % 4)
        self.pre_a, self.pre_b = ip @ self.pre_a, ip @ self.pre_b
        self.phase += steps * math.pi / 2

    def swap(self, j: int, k: int) -> None:
        r = _SWAPPERS[frozenset(_AXES[j] + _AXES[k])]
        self._conjugate(r, r)
        self.h[j], self.h[k] = self.h[k], self.h[j]

    def flip(self, j: int, k: int) -> None:
        """Negate h_j and h_k by conjugating qubit A with the third Pauli."""
        (l,) = {0, 1, 2} - {j, k}
        self._conjugate(1j * pauli(_AXES[l]), np.eye(2, dtype=complex))
        self.h[j], self.h[k] = -self.h[j], -self.h[k]

    def reduce(self) -> None:
        for k in range(3):
            # largest step count leaving h_k in (-pi/4, pi/4]
            self.shift(k, math.ceil((self.h[k] - QUARTER_PI) / (math.pi / 2)))

    def sort(self) -> None:
        for j, k in ((0, 1), (1, 2), (0, 1)):
            if abs(self.h[k]) > abs(self.h[j]):
                self.swap(j, k)

    def fix_signs(self, tol: float) -> None:
        hx, hy, _ = self.h
        if hx < 0 and hy < 0:
            self.flip(0, 1)
        elif hx < 0:
            self.flip(0, 2)
        elif hy < 0:
            self.flip(1, 2)
        # on the face hx = pi/4 the mirror (hx, hy, -hz) is equivalent; keep hz >= 0
        if abs(self.h[0] - QUARTER_PI) <= tol and self.h[2] < 0:
            self.flip(0, 2)
            self.shift(0, -1)


def canonicalize(
    raw: tuple[float, float, float],
    locals_: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
    global_phase: float = 0.0,
    tol: float = CHAMBER_SLACK,
) -> KakDecomposition:
    """Move raw interaction coefficients into the Weyl chamber.

    ``locals_`` is ``(pre_a, pre_b, post_a, post_b)``. Every symmetry move is
    compensated in the local gates and the phase, so the represented operator
    is unchanged.
    """
    pre_a, pre_b, post_a, post_b = (np.asarray(m, dtype=complex) for m in locals_)
    c = _Canonicalizer(raw, pre_a, pre_b, post_a, post_b, global_phase)
    c.reduce()
    c.sort()
    c.fix_signs(tol)
    return KakDecomposition(
        pre_a=c.pre_a,
        pre_b=c.pre_b,
        params=CanonicalParams(*c.h),
        post_a=c.post_a,
        post_b=c.post_b,
        global_phase=math.remainder(c.phase, 2 * math.pi),
    )


# --- extraction ---------------------------------------------------------------

# fixed mixing weights for the real/imaginary parts; a second one is only needed
# when the first accidentally merges distinct eigenvalues
_MIX_WEIGHTS = (0.5772156649015329, 1.618033988749895, -2.718281828459045, 0.3183098861837907)


def _real_eigenbasis(s: np.ndarray, tol: float) -> np.ndarray:
    """Real orthogonal P with P^T s P diagonal, for a symmetric unitary ``s``."""
    a, b = s.real, s.imag
    a, b = (a + a.T) / 2, (b + b.T) / 2
    for weight in _MIX_WEIGHTS:
        _, p = np.linalg.eigh(a + weight * b)
        d = p.T @ s @ p
        if np.max(np.abs(d - np.diag(np.diagonal(d)))) < tol:
            # deterministic column signs: largest-magnitude entry positive
            idx = np.argmax(np.abs(p), axis=0)
            p = p * np.sign(p[idx, np.arange(4)])
            return p
    raise NumericalFailure("could not diagonalize M^T M with a real orthogonal basis")


def _raw_decompose(u: np.ndarray, tol: float):
    su, phase = su4_normalize(u)
    m = MAGIC_DAG @ su @ MAGIC
    s = m.T @ m
    p = _real_eigenbasis(s, tol)
    theta = np.angle(np.diagonal(p.T @ s @ p)) / 2
    order = np.argsort(-theta, kind="stable")
    p, theta = p[:, order], theta[order]
    if np.linalg.det(p) < 0:
        p[:, 0] = -p[:, 0]
    # det(m) = 1 forces sum(theta) to a multiple of pi; make it even
    if math.cos(float(np.sum(theta))) < 0:
        theta[0] -= math.pi
    o1 = m @ p @ np.diag(np.exp(-1j * theta))
    if np.max(np.abs(o1.imag)) > 1e3 * tol:
        raise NumericalFailure("left factor is not real orthogonal")
    o1 = o1.real

    left = MAGIC @ o1 @ MAGIC_DAG
    right = MAGIC @ p.T @ MAGIC_DAG
    post_a, post_b, ph_left = factor_local(left, 1e3 * tol)
    pre_a, pre_b, ph_right = factor_local(right, 1e3 * tol)

    # magic columns are gamma00, gamma10, gamma11, gamma01 (up to phase)
    lam00, lam10, lam11, lam01 = -theta
    trace = (lam00 + lam01 + lam10 + lam11) / 4
    lam00, lam01, lam10, lam11 = lam00 - trace, lam01 - trace, lam10 - trace, lam11 - trace
    hx = (lam00 + lam01 - lam10 - lam11) / 4
    hy = (-lam00 + lam01 + lam10 - lam11) / 4
    hz = (lam00 - lam01 + lam10 - lam11) / 4
    return (hx, hy, hz), (pre_a, pre_b, post_a, post_b), phase + ph_left + ph_right - trace


def kak_decompose(u: np.ndarray, tol: float = RECONSTRUCTION_TOL) -> KakDecomposition:
    """Canonical decomposition of a two-qubit unitary.

    Accepts any element of U(4); the determinant phase is carried in
    ``global_phase``. The result reproduces ``u`` exactly (not just up to
    phase) within ``tol`` max-abs entry error, else NumericalFailure.
    """
    u = np.asarray(u, dtype=complex)
    raw, locals_, phase = _raw_decompose(u, 1e-10)
    out = canonicalize(raw, locals_, phase)
    err = float(np.max(np.abs(out.matrix() - u)))
    if not err < tol:
        raise NumericalFailure(f"reconstruction error {err:.3g} exceeds {tol:.3g}")
    for g in (out.pre_a, out.pre_b, out.post_a, out.post_b):
        if not is_special_unitary(g):
            raise NumericalFailure("extracted local gate is not special unitary")
    return out
