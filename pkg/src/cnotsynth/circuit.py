"""Two-qubit circuit representation, evaluation, named gates and JSON formats.

Gates are stored in application order: ``gates[0]`` acts first. Qubit A is
the left tensor factor (most significant bit) in every matrix and format.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BadArity, ParseError, UnknownGate
from .kak import CanonicalParams, canonical_unitary
from .linalg import CNOT, I2, I4, SWAP, dagger, euler_decompose, is_unitary, kron, phase_distance

QUBITS = ("A", "B")

# control B, target A: swaps |01> and |11>
CNOT_BA = np.array(
    [[1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0],
     [0, 1, 0, 0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class Local:
    qubit: str
    u: np.ndarray

    def __post_init__(self):
        if self.qubit not in QUBITS:
            raise ValueError(f"qubit must be 'A' or 'B', got {self.qubit!r}")
        if not is_unitary(self.u) or np.shape(self.u) != (2, 2):
            raise ValueError("single-qubit gate must be a 2x2 unitary")

    def matrix(self) -> np.ndarray:
        return kron(self.u, I2) if self.qubit == "A" else kron(I2, self.u)

    def __eq__(self, other):
        return (
            isinstance(other, Local)
            and self.qubit == other.qubit
            and np.array_equal(self.u, other.u)
        )


@dataclass(frozen=True)
class Cnot:
    control: str = "A"
    target: str = "B"

    def __post_init__(self):
        if {self.control, self.target} != set(QUBITS):
            raise ValueError("CNOT needs distinct control and target among A, B")

    def matrix(self) -> np.ndarray:
        return CNOT if self.control == "A" else CNOT_BA


Gate = Union[Local, Cnot]


@dataclass(frozen=True)
class Circuit:
    gates: tuple = ()
    global_phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __add__(self, other: "Circuit") -> "Circuit":
        return Circuit(self.gates + other.gates, self.global_phase + other.global_phase)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class VerificationReport:
    distance: float
    relative_phase: float
    passed: bool
    tolerance: float


def evaluate(c: Circuit) -> np.ndarray:
    out = I4.copy()
    for g in c.gates:
        out = g.matrix() @ out
    return cmath.exp(1j * c.global_phase) * out


def cnot_count(c: Circuit) -> int:
    return sum(isinstance(g, Cnot) for g in c.gates)


def verify(c: Circuit, target: np.ndarray, tol: float = 1e-9) -> VerificationReport:
    got = evaluate(c)
    dist = phase_distance(got, target)
    rel = cmath.phase(np.trace(dagger(got) @ target))
    return VerificationReport(distance=dist, relative_phase=rel, passed=bool(dist <= tol), tolerance=float(tol))


def fuse_locals(c: Circuit, drop_tol: float = 1e-14) -> Circuit:
    """Merge runs of single-qubit gates on each wire between CNOTs.

    Runs that collapse to +-identity are dropped, with a -1 folded into the
    global phase.
    """
    pending: dict[str, np.ndarray | None] = {"A": None, "B": None}
    out: list[Gate] = []
    phase = c.global_phase

    def flush(q: str) -> None:
        nonlocal phase
        u = pending[q]
        pending[q] = None
        if u is None:
            return
        for sign, shift in ((1, 0.0), (-1, math.pi)):
            if np.max(np.abs(u - sign * I2)) < drop_tol:
                phase += shift
                return
        out.append(Local(q, u))

    for g in c.gates:
        if isinstance(g, Local):
            prev = pending[g.qubit]
            pending[g.qubit] = g.u if prev is None else g.u @ prev
        else:
            flush("A")
            flush("B")
            out.append(g)
    flush("A")
    flush("B")
    return Circuit(tuple(out), phase)


# --- named gates ----------------------------------------------------------------

def _cphase(phi: float) -> np.ndarray:
    return np.diag([1, 1, 1, cmath.exp(-1j * phi)])


_NAMED = {
    "ID": (0, lambda: I4.copy()),
    "CNOT": (0, lambda: CNOT.copy()),
    "CZ": (0, lambda: np.diag([1, 1, 1, -1]).astype(complex)),
    "SWAP": (0, lambda: SWAP.copy()),
    "ISWAP": (0, lambda: np.array(
        [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex)),
    "CPHASE": (1, _cphase),
    "CAN": (3, lambda hx, hy, hz: canonical_unitary(CanonicalParams(hx, hy, hz))),
}

NAMED_GATES = tuple(_NAMED)


def named_gate(name: str, args=()) -> np.ndarray:
    """Matrix of a named two-qubit gate. CPHASE(phi) = diag(1, 1, 1, e^{-i phi})."""
    key = name.upper()
    if key not in _NAMED:
        raise UnknownGate(name)
    arity, build = _NAMED[key]
    args = [float(a) for a in args]
    if len(args) != arity:
        raise BadArity(f"{key} takes {arity} argument(s), got {len(args)}")
    return build(*args)


# --- serialization -----------------------------------------------------------

def _num(x: float) -> float:
    # json renders floats with repr(), the shortest round-trip decimal
    return float(x)


def _mat_to_json(m: np.ndarray) -> list:
    return [[[_num(z.real), _num(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _mat_from_json(obj, shape: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != shape:
        raise ParseError(f"expected {shape} rows", where)
    out = np.zeros((shape, shape), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != shape:
            raise ParseError(f"expected {shape} entries", f"{where}[{i}]")
        for j, pair in enumerate(row):
            loc = f"{where}[{i}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError("expected [re, im] pair", loc)
            re, im = (_real(v, loc) for v in pair)
            out[i, j] = complex(re, im)
    return out


def _real(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"expected a number, got {type(v).__name__}", where)
    try:
        v = float(v)
    except OverflowError:
        raise ParseError("number out of range", where) from None
    if not math.isfinite(v):
        raise ParseError("non-finite number", where)
    return v


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    except RecursionError:
        raise ParseError("document nested too deeply") from None


def _check_keys(obj, required: set[str], optional: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", where or "document")
    for key in obj:
        if key not in required | optional:
            raise ParseError("unknown field", f"{where}.{key}" if where else key)
    for key in required:
        if key not in obj:
            raise ParseError("missing field", f"{where}.{key}" if where else key)


def serialize_matrix(m: np.ndarray) -> str:
    return json.dumps({"unitary": _mat_to_json(m)})


def parse_matrix(text: str) -> np.ndarray:
    obj = _load(text)
    _check_keys(obj, {"unitary"}, set(), "")
    return _mat_from_json(obj["unitary"], 4, "unitary")


def _gate_to_json(g: Gate) -> dict:
    if isinstance(g, Local):
        return {"kind": "local", "qubit": g.qubit, "u": _mat_to_json(g.u)}
    return {"kind": "cnot", "control": g.control, "target": g.target}


def serialize_circuit(c: Circuit) -> str:
    return json.dumps({
        "qubits": list(QUBITS),
        "global_phase": _num(c.global_phase),
        "gates": [_gate_to_json(g) for g in c.gates],
    })


def _gate_from_json(obj, where: str) -> Gate:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", where)
    kind = obj.get("kind")
    if kind == "local":
        _check_keys(obj, {"kind", "qubit", "u"}, set(), where)
        if obj["qubit"] not in QUBITS:
            raise ParseError("qubit must be 'A' or 'B'", f"{where}.qubit")
        u = _mat_from_json(obj["u"], 2, f"{where}.u")
        if not is_unitary(u):
            raise ParseError("matrix is not unitary", f"{where}.u")
        return Local(obj["qubit"], u)
    if kind == "cnot":
        _check_keys(obj, {"kind", "control", "target"}, set(), where)
        control, target = obj["control"], obj["target"]
        if control not in QUBITS:
            raise ParseError("control must be 'A' or 'B'", f"{where}.control")
        if target not in QUBITS or target == control:
            raise ParseError("target must be the other qubit", f"{where}.target")
        return Cnot(control, target)
    raise ParseError(f"unknown gate kind {kind!r}", f"{where}.kind")


def parse_circuit(text: str) -> Circuit:
    obj = _load(text)
    _check_keys(obj, {"gates"}, {"qubits", "global_phase"}, "")
    if "qubits" in obj and obj["qubits"] != list(QUBITS):
        raise ParseError('expected ["A", "B"]', "qubits")
    phase = _real(obj.get("global_phase", 0.0), "global_phase")
    gates = obj["gates"]
    if not isinstance(gates, list):
        raise ParseError("expected a list", "gates")
    return Circuit(tuple(_gate_from_json(g, f"gates[{i}]") for i, g in enumerate(gates)), phase)


def render_text(c: Circuit) -> str:
    """Human-readable listing, one gate per line.

    Locals are shown as ZXZ angles (a, theta, c) with
    u = e^{i phase} exp(-i a Z) exp(-i theta X) exp(-i c Z).
    """
    lines = [f"global_phase {c.global_phase!r}"]
    for g in c.gates:
        if isinstance(g, Cnot):
            lines.append(f"CNOT {g.control}->{g.target}")
        else:
            e = euler_decompose(g.u, "ZXZ")
            lines.append(f"U {g.qubit} zxz a={e.a!r} theta={e.theta!r} c={e.c!r} phase={e.phase!r}")
    return "\n".join(lines)
