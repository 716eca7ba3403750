"""Minimal-CNOT synthesis of two-qubit gates.

A gate is decomposed as (post) exp(-iH) (pre); the interaction exp(-iH) is
replaced by the cheapest CNOT circuit for its class and the surrounding
single-qubit gates are fused into it.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Cnot, Local, cnot_count, evaluate, fuse_locals
from .errors import HzNotZero, NotUnitary, VerificationFailed, WrongClass
from .kak import (
    CLASSIFY_TOL,
    QUARTER_PI,
    CanonicalParams,
    GateClass,
    KakDecomposition,
    canonical_unitary,
    classify,
    kak_decompose,
)
from .linalg import CNOT, dagger, is_unitary, pauli, phase_distance, rot

VERIFY_TOL = 1e-9

W = rot("x", QUARTER_PI)  # (I - i X) / sqrt(2)
W_DAG = dagger(W)
_XZ = (pauli("x") + pauli("z")) / math.sqrt(2)


@dataclass(frozen=True)
class SynthesisResult:
    circuit: Circuit
    class_used: GateClass
    verification_distance: float


def _with_matched_phase(gates: list, target: np.ndarray) -> Circuit:
    c = Circuit(tuple(gates))
    return Circuit(c.gates, cmath.phase(np.trace(dagger(evaluate(c)) @ target)))


def three_cnot_locals(p: CanonicalParams) -> dict[str, np.ndarray]:
    """Single-qubit gates of the universal three-CNOT circuit for exp(-iH).

    u2 rotates about X by hx - pi/4; with that offset the circuit equals
    exp(-iH) up to a global phase for every (hx, hy, hz).
    """
    return {
        "u2": 1j * _XZ @ rot("x", p.hx - QUARTER_PI),
        "v2": rot("z", p.hz),
        "u3": -1j * _XZ,
        "v3": rot("z", -p.hy),
        "u4": W,
        "v4": W_DAG,
    }


def synth_canonical_3cnot(p: CanonicalParams) -> Circuit:
    g = three_cnot_locals(p)
    gates = [
        Cnot(),
        Local("A", g["u2"]), Local("B", g["v2"]),
        Cnot(),
        Local("A", g["u3"]), Local("B", g["v3"]),
        Cnot(),
        Local("A", g["u4"]), Local("B", g["v4"]),
    ]
    return _with_matched_phase(gates, canonical_unitary(p))


def synth_canonical_2cnot(p: CanonicalParams, tol: float = CLASSIFY_TOL) -> Circuit:
    """Two-CNOT circuit for exp(-i(hx XX + hy YY)); requires hz = 0."""
    if not abs(p.hz) < tol:
        raise HzNotZero(f"hz = {p.hz!r} is not zero within {tol}")
    gates = [
        Local("A", W_DAG), Local("B", W),
        Cnot(),
        Local("A", rot("x", p.hx)), Local("B", rot("z", -p.hy)),
        Cnot(),
        Local("A", W), Local("B", W_DAG),
    ]
    return _with_matched_phase(gates, canonical_unitary(CanonicalParams(p.hx, p.hy, 0.0)))


# computed once at import, so every caller sees the same finished value
CNOT_KAK = kak_decompose(CNOT)


def _wrap_locals(k: KakDecomposition, core: Circuit) -> Circuit:
    pre = Circuit((Local("A", k.pre_a), Local("B", k.pre_b)))
    post = Circuit((Local("A", k.post_a), Local("B", k.post_b)))
    return pre + core + post + Circuit((), k.global_phase)


def class1_synthesize(k: KakDecomposition, tol: float = CLASSIFY_TOL) -> Circuit:
    """One-CNOT circuit for a gate locally equivalent to CNOT.

    Splices the stored decomposition of CNOT itself:
    exp(-iH) = e^{-i phase} (a x b)^dagger CNOT (c x d)^dagger.
    """
    if classify(k.params, tol) is not GateClass.ONE_CNOT:
        raise WrongClass(f"{k.params} is not in the CNOT class")
    ref = CNOT_KAK
    core = Circuit(
        (
            Local("A", dagger(ref.pre_a)), Local("B", dagger(ref.pre_b)),
            Cnot(),
            Local("A", dagger(ref.post_a)), Local("B", dagger(ref.post_b)),
        ),
        -ref.global_phase,
    )
    return fuse_locals(_wrap_locals(k, core))


def _core_for(k: KakDecomposition, cls: GateClass, tol: float) -> Circuit:
    p = k.params
    if cls is GateClass.LOCAL:
        if classify(p, tol) is not GateClass.LOCAL:
            raise WrongClass(f"{p} is not a local gate")
        return Circuit()
    if cls is GateClass.TWO_CNOT:
        return synth_canonical_2cnot(p, tol)
    return synth_canonical_3cnot(p)


def synth(
    u: np.ndarray,
    tol: float = VERIFY_TOL,
    class_tol: float = CLASSIFY_TOL,
    force_class: int | None = None,
) -> SynthesisResult:
    """Synthesize ``u`` with the minimal number of CNOTs (A control, B target).

    ``force_class`` picks a specific construction (0-3) instead of the minimal
    one; asking for fewer CNOTs than the gate needs raises WrongClass or
    HzNotZero.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or not is_unitary(u):
        raise NotUnitary("input is not a 4x4 unitary within tolerance")
    k = kak_decompose(u)
    cls = classify(k.params, class_tol) if force_class is None else GateClass(force_class)
    if cls is GateClass.ONE_CNOT:
        circuit = class1_synthesize(k, class_tol)
    else:
        circuit = fuse_locals(_wrap_locals(k, _core_for(k, cls, class_tol)))
    dist = phase_distance(evaluate(circuit), u)
    if not dist < tol:
        raise VerificationFailed(f"synthesized circuit is off by {dist:.3g}")
    if cnot_count(circuit) != cls.cnot_count:
        raise VerificationFailed("CNOT count does not match the gate class")
    return SynthesisResult(circuit, cls, dist)


def optimize(c: Circuit, tol: float = VERIFY_TOL, class_tol: float = CLASSIFY_TOL) -> SynthesisResult:
    """Resynthesize a circuit; the result never uses more CNOTs than ``c``."""
    res = synth(evaluate(c), tol, class_tol)
    if cnot_count(res.circuit) > cnot_count(c):
        # only reachable when roundoff pushes a <=2-CNOT circuit across the hz = 0 boundary
        fused = fuse_locals(c)
        return SynthesisResult(fused, GateClass(cnot_count(c)), phase_distance(evaluate(fused), evaluate(c)))
    return res
