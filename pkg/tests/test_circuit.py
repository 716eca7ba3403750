import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnotsynth.circuit import (
    NAMED_GATES,
    Circuit,
    Cnot,
    Local,
    cnot_count,
    evaluate,
    fuse_locals,
    named_gate,
    parse_circuit,
    parse_matrix,
    render_text,
    serialize_circuit,
    serialize_matrix,
    verify,
)
from cnotsynth.errors import BadArity, ParseError, UnknownGate
from cnotsynth.kak import CanonicalParams, canonical_unitary
from cnotsynth.linalg import CNOT, I2, I4, SWAP, haar_su4, kron, pauli, phase_distance, unitarity_residual
from cnotsynth.synth import synth, synth_canonical_3cnot

from .conftest import random_u2, su2s


def random_circuit(rng, n_gates):
    gates = []
    for _ in range(n_gates):
        r = rng.integers(4)
        if r == 0:
            gates.append(Cnot())
        elif r == 1:
            gates.append(Cnot("B", "A"))
        else:
            gates.append(Local("AB"[r - 2], random_u2(rng)))
    return Circuit(tuple(gates), rng.uniform(-3, 3))


def test_evaluate_examples():
    np.testing.assert_array_equal(evaluate(Circuit()), I4)
    perm = np.eye(4)[[0, 1, 3, 2]]
    np.testing.assert_array_equal(evaluate(Circuit((Cnot(),))), perm)
    x_then_cnot = Circuit((Local("B", pauli("x")), Cnot()))
    cnot_then_x = Circuit((Cnot(), Local("B", pauli("x"))))
    assert phase_distance(evaluate(x_then_cnot), evaluate(cnot_then_x)) < 1e-15  # X on target commutes
    z_then_cnot = Circuit((Local("B", pauli("z")), Cnot()))
    cnot_then_z = Circuit((Cnot(), Local("B", pauli("z"))))
    assert phase_distance(evaluate(z_then_cnot), evaluate(cnot_then_z)) > 0.1


def test_evaluate_order_sensitivity():
    a = Circuit((Local("A", pauli("x")), Cnot()))
    b = Circuit((Cnot(), Local("A", pauli("x"))))
    assert phase_distance(evaluate(a), evaluate(b)) > 0.1


def test_evaluate_cnot_directions():
    # CNOT with control B equals SWAP . CNOT(A->B) . SWAP
    np.testing.assert_array_equal(evaluate(Circuit((Cnot("B", "A"),))), SWAP @ CNOT @ SWAP)
    with pytest.raises(ValueError):
        Cnot("A", "A")


def test_evaluate_is_multiplicative(rng):
    for _ in range(50):
        c1, c2 = random_circuit(rng, 10), random_circuit(rng, 10)
        np.testing.assert_allclose(evaluate(c1 + c2), evaluate(c2) @ evaluate(c1), atol=1e-12)


def test_evaluate_stays_unitary(rng):
    for _ in range(20):
        assert unitarity_residual(evaluate(random_circuit(rng, 100))) < 1e-10


def test_verify_examples():
    rep = verify(synth(CNOT).circuit, CNOT)
    assert rep.passed and rep.distance < 1e-9

    rep = verify(Circuit(), CNOT)
    assert not rep.passed
    assert rep.distance == pytest.approx(0.5, abs=1e-15)

    c = synth_canonical_3cnot(CanonicalParams(0.3, 0.2, 0.1))
    rep = verify(c, cmath.exp(0.8j) * evaluate(c))
    assert rep.passed
    assert rep.relative_phase == pytest.approx(0.8, abs=1e-12)
    assert rep.tolerance == 1e-9


def test_named_gates():
    np.testing.assert_array_equal(named_gate("CPHASE", [0.0]), I4)
    assert named_gate("CPHASE", [0.7])[3, 3] == cmath.exp(-0.7j)
    np.testing.assert_array_equal(named_gate("CPHASE", [math.pi]).round(15), np.diag([1, 1, 1, -1]))
    assert phase_distance(named_gate("CAN", [math.pi / 4] * 3), SWAP) < 1e-12
    np.testing.assert_array_equal(named_gate("ID"), I4)
    np.testing.assert_array_equal(named_gate("cnot"), CNOT)
    for name in NAMED_GATES:
        arity = {"CPHASE": 1, "CAN": 3}.get(name, 0)
        assert unitarity_residual(named_gate(name, [0.3] * arity)) < 1e-14
    with pytest.raises(UnknownGate):
        named_gate("TOFFOLI")
    with pytest.raises(BadArity):
        named_gate("CPHASE")
    with pytest.raises(BadArity):
        named_gate("SWAP", [1.0])


def test_cphase_matches_controlled_phase_definition():
    phi = 1.1
    u = named_gate("CPHASE", [phi])
    for m in (0, 1):
        for n in (0, 1):
            e = np.zeros(4)
            e[2 * m + n] = 1
            np.testing.assert_allclose(u @ e, cmath.exp(-1j * m * n * phi) * e)


def test_cnot_count():
    assert cnot_count(Circuit()) == 0
    assert cnot_count(synth_canonical_3cnot(CanonicalParams(0.3, 0.2, 0.1))) == 3
    assert cnot_count(Circuit((Cnot(), Cnot()))) == 2


def test_fuse_locals(rng):
    for _ in range(50):
        c = random_circuit(rng, 30)
        f = fuse_locals(c)
        np.testing.assert_allclose(evaluate(f), evaluate(c), atol=1e-12)
        assert cnot_count(f) == cnot_count(c)
        for g, h in zip(f.gates, f.gates[1:]):
            assert not (isinstance(g, Local) and isinstance(h, Local) and g.qubit == h.qubit)


def test_fuse_drops_identity_runs():
    x = pauli("x")
    f = fuse_locals(Circuit((Local("A", 1j * x), Local("A", 1j * x), Cnot())))
    assert f.gates == (Cnot(),)
    np.testing.assert_allclose(evaluate(f), -CNOT, atol=1e-15)


def test_matrix_json_layout():
    doc = json.loads(serialize_matrix(I4))
    assert list(doc) == ["unitary"]
    assert doc["unitary"][0] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
    assert np.array(doc["unitary"]).shape == (4, 4, 2)


def test_matrix_round_trip_bit_exact():
    for seed in range(50):
        u = haar_su4(seed)
        np.testing.assert_array_equal(parse_matrix(serialize_matrix(u)), u)


def test_circuit_round_trip_bit_exact():
    for u in (SWAP, CNOT, haar_su4(5), named_gate("CPHASE", [0.3])):
        c = synth(u).circuit
        back = parse_circuit(serialize_circuit(c))
        assert back == c
        assert back.global_phase == c.global_phase
        assert serialize_circuit(back) == serialize_circuit(c)


@settings(max_examples=100)
@given(st.lists(st.one_of(
    st.builds(Local, st.sampled_from("AB"), su2s()),
    st.sampled_from([Cnot(), Cnot("B", "A")]),
), max_size=12), st.floats(-10, 10))
def test_circuit_round_trip_property(gates, phase):
    c = Circuit(tuple(gates), phase)
    assert parse_circuit(serialize_circuit(c)) == c


def test_circuit_json_layout():
    c = Circuit((Local("A", I2), Cnot()), 0.25)
    doc = json.loads(serialize_circuit(c))
    assert doc == {
        "qubits": ["A", "B"],
        "global_phase": 0.25,
        "gates": [
            {"kind": "local", "qubit": "A", "u": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]},
            {"kind": "cnot", "control": "A", "target": "B"},
        ],
    }


@pytest.mark.parametrize("text, where", [
    ('{"gates": [], "globl_phase": 0}', "globl_phase"),
    ('{"gates": [{"kind": "cnot", "control": "A", "targt": "B"}]}', "gates[0].targt"),
    ('{"gates": [{"kind": "cnot", "control": "A", "target": "A"}]}', "gates[0].target"),
    ('{"gates": [{"kind": "local", "qubit": "C", "u": []}]}', "gates[0].qubit"),
    ('{"gates": [{"kind": "local", "qubit": "A", "u": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]]}]}', "gates[0].u"),
    ('{"gates": [{"kind": "swap"}]}', "gates[0].kind"),
    ('{"gates": 3}', "gates"),
    ('{"gates": [], "global_phase": "x"}', "global_phase"),
    ('{"gates": [], "global_phase": NaN}', "global_phase"),
    ('{"qubits": ["A"], "gates": []}', "qubits"),
    ('{}', "gates"),
    ("[]", "document"),
    ('{"gates": [', "line 1"),
])
def test_parse_circuit_errors_name_the_field(text, where):
    with pytest.raises(ParseError) as exc:
        parse_circuit(text)
    assert exc.value.where.startswith(where)


@pytest.mark.parametrize("text, where", [
    ('{"matrix": []}', "matrix"),
    ('{"unitary": [[1]]}', "unitary"),
    ('{"unitary": [[[1, 0]] * 4] * 4}', "line 1"),
    ('{"unitary": ' + json.dumps([[[1, 0, 0]] * 4] * 4) + "}", "unitary[0][0]"),
    ('{"unitary": ' + json.dumps([[[1, True]] * 4] * 4) + "}", "unitary[0][0]"),
    ('{"unitary": ' + json.dumps([[[1e400, 0]] * 4] * 4) + "}", "unitary[0][0]"),
])
def test_parse_matrix_errors(text, where):
    with pytest.raises(ParseError) as exc:
        parse_matrix(text)
    assert exc.value.where.startswith(where)


@settings(max_examples=300)
@given(st.text(max_size=200))
def test_parsers_only_raise_parse_error(text):
    for parse in (parse_circuit, parse_matrix):
        try:
            parse(text)
        except ParseError:
            pass


def test_render_text():
    c = synth(CNOT @ kron(pauli("x"), I2) @ SWAP).circuit
    lines = render_text(c).splitlines()
    assert lines[0].startswith("global_phase")
    assert sum(line.startswith("CNOT A->B") for line in lines) == cnot_count(c)
