"""Matrix semantics: ranks, carriers, currying adjunction, denotations."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlam.denote import (
    DIM_CAP,
    DimensionCapError,
    EmptyBundle,
    SemMorphism,
    apply_carrier,
    carrier_dim,
    curry_carrier,
    denote,
    permutation_matrix,
    rank_of,
    soundness_check,
)
from qlam.parser import parse, parse_type
from qlam.syntax import LolliType, QBIT, TensorType, qbits

S = 2 ** -0.5

H = np.array([[S, S], [S, -S]], dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]


def col(text, ctx=()):
    return denote(parse(text), ctx)


class TestRank:
    def test_qbit(self):
        assert rank_of(QBIT) == 2

    def test_tensor_multiplies(self):
        assert rank_of(qbits(2)) == 4
        assert rank_of(qbits(3)) == 8
        assert rank_of(TensorType(qbits(2), QBIT)) == 8

    def test_lolli_divides(self):
        assert rank_of(parse_type("Qbit -o Qbit")) == 1
        assert rank_of(parse_type("Qbit -o Qbit (x) Qbit")) == 2
        assert rank_of(parse_type("Qbit (x) Qbit -o Qbit (x) Qbit")) == 1
        assert rank_of(parse_type("Qbit (x) Qbit -o Qbit")) == 0

    def test_lolli_floor(self):
        # Codomain rank 2 over domain rank 1 and rank 2 over rank 8.
        assert rank_of(parse_type("(Qbit -o Qbit) -o Qbit")) == 2
        assert rank_of(parse_type("Qbit (x) Qbit (x) Qbit -o Qbit")) == 0

    def test_higher_order(self):
        assert rank_of(parse_type("(Qbit -o Qbit) -o Qbit (x) Qbit")) == 4

    def test_carrier_dim_of_function_spaces(self):
        # The carrier of A -o B is the full dim(A)*dim(B) matrix space,
        # independent of the rank count.
        assert carrier_dim(parse_type("Qbit -o Qbit")) == 4
        assert carrier_dim(parse_type("Qbit (x) Qbit -o Qbit")) == 8
        assert carrier_dim(parse_type("(Qbit -o Qbit) -o Qbit")) == 8
        assert carrier_dim(parse_type("(Qbit -o Qbit) (x) Qbit")) == 8
        for text in ["Qbit", "Qbit (x) Qbit"]:
            ty = parse_type(text)
            assert carrier_dim(ty) == rank_of(ty)


class TestPermutationMatrix:
    def test_identity(self):
        np.testing.assert_array_equal(
            permutation_matrix([2, 3], [0, 1]), np.eye(6)
        )

    def test_swap_factors(self):
        p = permutation_matrix([2, 2], [1, 0])
        np.testing.assert_array_equal(p, SWAP.real)

    def test_mixed_dims(self):
        a = np.arange(2).reshape(2, 1)
        b = np.arange(3).reshape(3, 1) * 10
        p = permutation_matrix([2, 3], [1, 0])
        np.testing.assert_array_equal(p @ np.kron(a, b), np.kron(b, a))

    def test_empty(self):
        np.testing.assert_array_equal(permutation_matrix([], []), np.eye(1))

    def test_three_cycle(self):
        dims = [2, 3, 4]
        perm = [2, 0, 1]
        p = permutation_matrix(dims, perm)
        vecs = [np.random.RandomState(i).rand(d, 1) for i, d in enumerate(dims)]
        lhs = p @ np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
        new = [vecs[j] for j in perm]
        rhs = np.kron(np.kron(new[0], new[1]), new[2])
        np.testing.assert_allclose(lhs, rhs)


class TestCurryApply:
    def test_apply_carrier_shape(self):
        m = apply_carrier(2, 2)
        assert m.shape == (2, 8)

    def test_apply_contracts_function_with_argument(self):
        f = H.reshape(-1, 1)  # flattened 1-qubit map as a vector
        x = np.array([[1], [0]], dtype=complex)
        out = apply_carrier(2, 2) @ np.kron(f, x)
        np.testing.assert_allclose(out, H @ x)

    def test_curry_then_apply_recovers(self):
        rng = np.random.RandomState(7)
        for dim_c, dim_a, dim_b in [(1, 2, 2), (2, 2, 4), (3, 2, 2), (4, 4, 2)]:
            f = rng.rand(dim_b, dim_c * dim_a) + 1j * rng.rand(dim_b, dim_c * dim_a)
            g = curry_carrier(f, dim_c, dim_a, dim_b)
            assert g.shape == (dim_b * dim_a, dim_c)
            recovered = apply_carrier(dim_a, dim_b) @ np.kron(g, np.eye(dim_a))
            np.testing.assert_array_equal(recovered, f)

    def test_round_trip_is_exact_not_approximate(self):
        f = np.array([[0.1 + 0.2j, 0.3], [0.4, 0.5 - 0.6j]])
        g = curry_carrier(f, 1, 2, 2)
        recovered = apply_carrier(2, 2) @ np.kron(g, np.eye(2))
        assert (recovered == f).all()


class TestDenotations:
    def test_ket_columns(self):
        np.testing.assert_array_equal(col("|0>").matrix, [[1], [0]])
        np.testing.assert_array_equal(col("|1>").matrix, [[0], [1]])

    def test_shape_fields(self):
        m = col("|0> (x) |1>")
        assert (m.src_dim, m.dst_dim) == (1, 4)
        assert m.matrix.shape == (4, 1)

    def test_tuple_column_big_endian(self):
        np.testing.assert_array_equal(
            col("|1> (x) |0>").matrix, [[0], [0], [1], [0]]
        )

    def test_identity_lambda_flattens_to_identity(self):
        m = col(r"\x : Qbit. x")
        np.testing.assert_array_equal(m.matrix, np.eye(2).reshape(-1, 1))

    def test_gate_constant_flattens_matrix(self):
        np.testing.assert_allclose(col("#H").matrix, H.reshape(-1, 1), atol=1e-12)

    def test_swap_lambda(self):
        m = col(r"\a (x) b : Qbit (x) Qbit. b (x) a")
        np.testing.assert_array_equal(m.matrix, SWAP.reshape(-1, 1))

    def test_applied_gate(self):
        np.testing.assert_allclose(col("#H |0>").matrix, (H @ [[1], [0]]), atol=1e-12)

    def test_beta_redex_denotes_like_result(self):
        assert soundness_check(parse(r"(\x : Qbit. x) |0>"), parse("|0>"))

    def test_superposition_column(self):
        m = col("(1/sqrt(2)) * |0> + (-1/sqrt(2)) * |1>")
        np.testing.assert_allclose(m.matrix, [[S], [-S]], atol=1e-12)

    def test_open_term_identity_on_context(self):
        m = denote(parse("x"), [("x", QBIT)])
        assert (m.src_dim, m.dst_dim) == (2, 2)
        np.testing.assert_array_equal(m.matrix, np.eye(2))

    def test_open_gate_application(self):
        m = denote(parse("#H x"), [("x", QBIT)])
        np.testing.assert_allclose(m.matrix, H, atol=1e-12)

    def test_context_order_respected(self):
        m = denote(parse("y (x) x"), [("x", QBIT), ("y", QBIT)])
        np.testing.assert_array_equal(m.matrix, SWAP)

    def test_bell_pipeline_column(self):
        m = col("#CNOT ((#H |0>) (x) |0>)")
        np.testing.assert_allclose(m.matrix, [[S], [0], [0], [S]], atol=1e-12)

    def test_balanced_oracle_pipeline_column(self):
        text = (
            r"(\f : Qbit (x) Qbit -o Qbit (x) Qbit."
            r" (\y (x) z : Qbit (x) Qbit. (#H y) (x) z)"
            r" (f ((#H |0>) (x) (#H |1>)))) #CNOT"
        )
        want = np.kron(H, np.eye(2)) @ CNOT @ np.kron(H @ [[1], [0]], H @ [[0], [1]])
        np.testing.assert_allclose(col(text).matrix, want, atol=1e-12)

    def test_curried_two_qubit_function(self):
        m = col(r"\x : Qbit. \y : Qbit. x (x) y")
        # Carrier: Lin(2, Lin(2, 4)) has dimension 16.
        assert (m.src_dim, m.dst_dim) == (1, 16)
        # Fully applied, the curried pairing behaves as the pair column.
        for a in range(2):
            for b in range(2):
                applied = col(
                    rf"(\x : Qbit. \y : Qbit. x (x) y) |{a}> |{b}>"
                )
                want = np.zeros((4, 1))
                want[(a << 1) | b] = 1
                np.testing.assert_allclose(applied.matrix, want, atol=1e-12)

    def test_higher_order_application(self):
        t = r"(\f : Qbit -o Qbit. f |0>) (\x : Qbit. #X x)"
        np.testing.assert_allclose(col(t).matrix, [[0], [1]], atol=1e-12)


class TestSemMorphism:
    def test_matrix_read_only(self):
        m = col("|0>")
        with pytest.raises(ValueError):
            m.matrix[0, 0] = 5

    def test_shape_validated(self):
        with pytest.raises(ValueError):
            SemMorphism(2, 2, np.eye(3))


class TestSoundness:
    def test_eval_preserves_denotation(self):
        from qlam.evaluate import evaluate

        for text in [
            "#H (#H |0>)",
            "#CNOT ((#H |0>) (x) |0>)",
            r"(\a (x) b : Qbit (x) Qbit. b (x) a) (|0> (x) (#H |1>))",
        ]:
            t = parse(text)
            assert soundness_check(t, evaluate(t))

    def test_detects_difference(self):
        assert not soundness_check(parse("|0>"), parse("|1>"))

    def test_shape_mismatch_raises(self):
        from qlam.typecheck import TypeMismatch

        with pytest.raises(TypeMismatch):
            soundness_check(parse("|0>"), parse("|0> (x) |1>"))


class TestRejections:
    def test_empty_bundle_function_type(self):
        # Qbit (x) Qbit (x) Qbit -o Qbit has rank 8 domain, rank 2 codomain:
        # rank 0, an empty function bundle.
        t = parse(r"\p : Qbit (x) Qbit (x) Qbit -o Qbit. p (|0> (x) (|0> (x) |0>))")
        with pytest.raises(EmptyBundle):
            denote(t)

    def test_empty_bundle_reports_offending_type(self):
        t = parse(r"\p : Qbit (x) Qbit (x) Qbit -o Qbit. p (|0> (x) (|0> (x) |0>))")
        with pytest.raises(EmptyBundle) as exc:
            denote(t)
        assert rank_of(exc.value.type) == 0

    def test_dimension_cap(self):
        t = parse("|0>")
        big = [(f"q{i}", qbits(8)) for i in range(3)]  # 256^3 = 2^24 > 2^16
        with pytest.raises(DimensionCapError):
            denote(parse("q0 (x) (q1 (x) q2)"), big, dim_cap=2**16)

    def test_dimension_cap_configurable(self):
        m = denote(parse("|0> (x) |1>"), dim_cap=4)
        assert m.dst_dim == 4
        with pytest.raises(DimensionCapError):
            denote(parse("(|0> (x) |1>) (x) |0>"), dim_cap=4)

    def test_default_cap_value(self):
        assert DIM_CAP == 2**16


class TestLinearity:
    def test_denotation_linear_in_branches(self):
        from qlam.superpose import Superposition, linearize

        s = linearize(parse("(0.6) * (|0> (x) |1>) + (0.8i) * (|1> (x) |0>)"))
        total = np.zeros((4, 1), dtype=complex)
        for key, amp in s.items():
            total += amp * denote(Superposition([(key, 1.0)])).matrix
        np.testing.assert_allclose(denote(s).matrix, total, atol=1e-12)


# -- property: curry/apply adjunction is exact over random carriers -------


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 4), st.integers(1, 4), st.integers(1, 4),
    st.integers(0, 2**31 - 1),
)
def test_curry_apply_exact_round_trip(dim_c, dim_a, dim_b, seed):
    rng = np.random.RandomState(seed)
    f = rng.rand(dim_b, dim_c * dim_a) + 1j * rng.rand(dim_b, dim_c * dim_a)
    g = curry_carrier(f, dim_c, dim_a, dim_b)
    recovered = apply_carrier(dim_a, dim_b) @ np.kron(g, np.eye(dim_a))
    assert (recovered == f).all()
