"""Minimal-CNOT synthesis of two-qubit gates via the canonical decomposition."""
from .circuit import (
    Circuit,
    Cnot,
    Local,
    VerificationReport,
    cnot_count,
    evaluate,
    named_gate,
    parse_circuit,
    parse_matrix,
    serialize_circuit,
    serialize_matrix,
    verify,
)
from .kak import (
    CanonicalParams,
    GateClass,
    KakDecomposition,
    LambdaPhases,
    canonical_unitary,
    canonicalize,
    classify,
    kak_decompose,
    lambdas,
)
from .synth import SynthesisResult, optimize, synth

__version__ = "0.1.0"
