"""Gate registry: validation, builtin matrices, basis action, JSON loading."""

import json

import numpy as np
import pytest

from qlam.gates import (
    ArityMismatch,
    GateRegistry,
    NotPowerOfTwo,
    NotUnitary,
    Redefinition,
    UnknownGate,
    apply_gate,
    builtins,
    declare_gate,
    literal_bits,
    load_gate_json,
    parse_matrix_json,
    tuple_term,
    unitarity_deviation,
)
from qlam.parser import parse
from qlam.superpose import linearize, super_eq

S = 2 ** -0.5

# Independently written matrix constants the registry must reproduce.
EXPECTED = {
    "H": np.array([[S, S], [S, -S]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}


class TestBuiltins:
    def test_matrices_match_constants(self):
        reg = builtins()
        for name, want in EXPECTED.items():
            np.testing.assert_allclose(reg[name].matrix, want, atol=1e-15)

    def test_arities(self):
        reg = builtins()
        assert [reg[n].arity for n in ["H", "X", "Y", "Z", "CNOT"]] == [1, 1, 1, 1, 2]

    def test_unitary_within_tolerance(self):
        reg = builtins()
        for name in EXPECTED:
            assert unitarity_deviation(reg[name].matrix) <= 1e-12

    def test_registries_independent(self):
        a, b = builtins(), builtins()
        declare_gate("T", [[1, 0], [0, np.exp(1j * np.pi / 4)]], a)
        assert "T" in a and "T" not in b

    def test_unknown_gate(self):
        reg = builtins()
        with pytest.raises(UnknownGate):
            reg["SWAP"]


class TestUnitarityDeviation:
    def test_exact_identity_is_zero(self):
        assert unitarity_deviation(np.eye(4)) == 0.0

    def test_scaling_deviation_value(self):
        # U = diag(1, 2): U†U - I = diag(0, 3), max-entry norm 3.
        assert unitarity_deviation(np.array([[1, 0], [0, 2]])) == pytest.approx(3.0)

    def test_nonunitary_rotation_like(self):
        m = np.array([[1, 1], [0, 1]], dtype=complex)
        assert unitarity_deviation(m) > 0.5


class TestDeclare:
    def test_declares_and_returns_def(self):
        reg = GateRegistry()
        g = declare_gate("ID", np.eye(2), reg)
        assert g.name == "ID" and g.arity == 1
        assert reg["ID"] is g

    def test_two_qubit_arity(self):
        reg = GateRegistry()
        assert declare_gate("SWAP", np.eye(4)[[0, 2, 1, 3]], reg).arity == 2

    def test_rejects_non_square(self):
        with pytest.raises(NotPowerOfTwo):
            declare_gate("BAD", np.zeros((2, 3)), GateRegistry())

    def test_rejects_three_by_three(self):
        with pytest.raises(NotPowerOfTwo):
            declare_gate("BAD", np.eye(3), GateRegistry())

    def test_rejects_one_by_one(self):
        with pytest.raises(NotPowerOfTwo):
            declare_gate("BAD", np.eye(1), GateRegistry())

    def test_rejects_non_unitary_with_deviation(self):
        with pytest.raises(NotUnitary) as exc:
            declare_gate("BAD", [[1, 0], [0, 2]], GateRegistry())
        assert exc.value.max_deviation == pytest.approx(3.0)

    def test_accepts_within_tolerance(self):
        m = np.eye(2) * (1 + 1e-10)
        declare_gate("NEARLY", m, GateRegistry())

    def test_rejects_just_outside_tolerance(self):
        m = np.eye(2) * (1 + 1e-8)
        with pytest.raises(NotUnitary):
            declare_gate("BAD", m, GateRegistry())

    def test_rejects_redefinition(self):
        reg = builtins()
        with pytest.raises(Redefinition):
            declare_gate("H", EXPECTED["H"], reg)

    def test_redefinition_checked_after_validity(self):
        reg = builtins()
        with pytest.raises(NotUnitary):
            declare_gate("H", [[1, 0], [0, 2]], reg)


class TestApplyGate:
    def test_x_flips(self):
        reg = builtins()
        out = apply_gate(reg["X"], (0,))
        assert super_eq(out, linearize(parse("|1>")))

    def test_h_column_zero(self):
        reg = builtins()
        out = apply_gate(reg["H"], (0,))
        assert super_eq(out, linearize(parse("(1/sqrt(2)) * |0> + (1/sqrt(2)) * |1>")))

    def test_h_column_one(self):
        reg = builtins()
        out = apply_gate(reg["H"], (1,))
        assert super_eq(out, linearize(parse("(1/sqrt(2)) * |0> + (-1/sqrt(2)) * |1>")))

    def test_y_phases(self):
        reg = builtins()
        out = apply_gate(reg["Y"], (0,))
        assert super_eq(out, linearize(parse("(1i) * |1>")))
        out = apply_gate(reg["Y"], (1,))
        assert super_eq(out, linearize(parse("(-1i) * |0>")))

    def test_cnot_truth_table(self):
        reg = builtins()
        table = {(0, 0): (0, 0), (0, 1): (0, 1), (1, 0): (1, 1), (1, 1): (1, 0)}
        for inp, want in table.items():
            out = apply_gate(reg["CNOT"], inp)
            assert super_eq(out, linearize(tuple_term(want)))

    def test_every_builtin_column_matches_matrix(self):
        reg = builtins()
        for name, want in EXPECTED.items():
            g = reg[name]
            for col in range(2**g.arity):
                bits = tuple((col >> (g.arity - 1 - k)) & 1 for k in range(g.arity))
                out = apply_gate(g, bits)
                vec = np.zeros(2**g.arity, dtype=complex)
                for term, amp in out.items():
                    row_bits = literal_bits(term.term)
                    row = 0
                    for b in row_bits:
                        row = (row << 1) | b
                    vec[row] = amp
                np.testing.assert_allclose(vec, want[:, col], atol=1e-12)

    def test_arity_mismatch(self):
        reg = builtins()
        with pytest.raises(ArityMismatch):
            apply_gate(reg["H"], (0, 1))
        with pytest.raises(ArityMismatch):
            apply_gate(reg["CNOT"], (0,))

    def test_bad_bit_value(self):
        reg = builtins()
        with pytest.raises(ValueError):
            apply_gate(reg["H"], (2,))


class TestLiteralBits:
    def test_single(self):
        assert literal_bits(parse("|1>")) == (1,)

    def test_tuple_order(self):
        # Gate arguments are right-nested, matching the right-associated
        # tensor type of a multi-qubit gate domain.
        assert literal_bits(parse("|1> (x) (|0> (x) |1>)")) == (1, 0, 1)

    def test_left_nested_tuple_rejected(self):
        # Term-level (x) associates left, producing a shape that can never
        # have a gate-domain type; it is not a literal tuple.
        assert literal_bits(parse("|1> (x) |0> (x) |1>")) is None

    def test_non_literal_is_none(self):
        assert literal_bits(parse("x")) is None
        assert literal_bits(parse("|0> (x) x")) is None
        assert literal_bits(parse("#H |0>")) is None

    def test_round_trip_with_tuple_term(self):
        for bits in [(0,), (1, 0), (0, 1, 1)]:
            assert literal_bits(tuple_term(bits)) == bits


class TestJsonLoading:
    def test_single_object(self):
        reg = builtins()
        text = json.dumps({"name": "SWAP",
                           "matrix": [[1, 0, 0, 0], [0, 0, 1, 0],
                                      [0, 1, 0, 0], [0, 0, 0, 1]]})
        (g,) = load_gate_json(text, reg)
        assert g.name == "SWAP" and g.arity == 2

    def test_list_of_objects(self):
        reg = builtins()
        text = json.dumps([
            {"name": "S", "matrix": [[1, 0], [0, [0, 1]]]},
            {"name": "T", "matrix": [[1, 0], [0, [S, S]]]},
        ])
        gs = load_gate_json(text, reg)
        assert [g.name for g in gs] == ["S", "T"]
        assert reg["S"].matrix[1, 1] == 1j

    def test_complex_entries_as_pairs(self):
        m = parse_matrix_json([[[0, 0], [0, -1]], [[0, 1], [0, 0]]])
        np.testing.assert_allclose(m, EXPECTED["Y"], atol=1e-15)

    def test_rejects_bad_entry(self):
        with pytest.raises(ValueError):
            parse_matrix_json([["x", 0], [0, 1]])
        with pytest.raises(ValueError):
            parse_matrix_json([[[1, 2, 3], 0], [0, 1]])

    def test_load_rejects_non_unitary(self):
        text = json.dumps({"name": "BAD", "matrix": [[1, 0], [0, 2]]})
        with pytest.raises(NotUnitary):
            load_gate_json(text, builtins())

    def test_load_rejects_builtin_name(self):
        text = json.dumps({"name": "H", "matrix": [[1, 0], [0, 1]]})
        with pytest.raises(Redefinition):
            load_gate_json(text, builtins())
