"""Deterministic generator of closed well-typed circuit terms, paired
with an independent statevector oracle.

Each generated case is a random circuit of bounded depth over at most
four qubits: an initial (possibly superposed) register of qubit
literals, a sequence of lambda-wrapped gate layers, optional tuple
reshaping layers, and optional higher-order wrappers (curried literal
feeding, let-style bindings, function composition).

The oracle side never touches the package's evaluator or semantics: it
tracks the circuit purely as numpy matrices acting on the 2^k
amplitude vector, with qubit 0 as the most significant index bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from qlam.syntax import (
    App,
    Lam,
    LolliType,
    Pair,
    PPair,
    PVar,
    QBIT,
    QubitLit,
    RawTerm,
    TensorType,
    Var,
)
from qlam.syntax import Gate as GateNode
from qlam.syntax import Scale, Sum

SQ = 2.0**-0.5

# Oracle gate matrices, written out independently of the package.
ORACLE_1Q = {
    "H": np.array([[SQ, SQ], [SQ, -SQ]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
ORACLE_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


# -- shape trees -------------------------------------------------------------
# A shape is either an int (leaf id) or a tuple (left, right).


def shape_leaves(shape):
    if isinstance(shape, int):
        return [shape]
    return shape_leaves(shape[0]) + shape_leaves(shape[1])


def right_comb(leaves):
    if len(leaves) == 1:
        return leaves[0]
    return (leaves[0], right_comb(leaves[1:]))


def shape_type(shape):
    if isinstance(shape, int):
        return QBIT
    return TensorType(shape_type(shape[0]), shape_type(shape[1]))


def shape_pattern(shape, names):
    if isinstance(shape, int):
        return PVar(names[shape])
    return PPair(shape_pattern(shape[0], names), shape_pattern(shape[1], names))


def build_tuple(shape, leaf_term):
    """Term with the given shape whose leaves come from leaf_term(leaf_id)."""
    if isinstance(shape, int):
        return leaf_term(shape)
    return Pair(build_tuple(shape[0], leaf_term), build_tuple(shape[1], leaf_term))


def random_shape(rng: random.Random, leaves):
    if len(leaves) == 1:
        return leaves[0]
    cut = rng.randrange(1, len(leaves))
    return (random_shape(rng, leaves[:cut]), random_shape(rng, leaves[cut:]))


def sibling_pairs(shape, out=None):
    """Leaf pairs (i, j) that sit together as a (leaf, leaf) subtree."""
    if out is None:
        out = []
    if isinstance(shape, tuple):
        if isinstance(shape[0], int) and isinstance(shape[1], int):
            out.append((shape[0], shape[1]))
        else:
            sibling_pairs(shape[0], out)
            sibling_pairs(shape[1], out)
    return out


# -- oracle-side matrix builders ---------------------------------------------


def lift_1q(matrix: np.ndarray, wire: int, n: int) -> np.ndarray:
    full = np.eye(1, dtype=complex)
    for i in range(n):
        full = np.kron(full, matrix if i == wire else np.eye(2, dtype=complex))
    return full


def lift_2q(matrix: np.ndarray, wire_a: int, wire_b: int, n: int) -> np.ndarray:
    """Two-qubit gate on an arbitrary ordered wire pair of an n-wire register."""
    dim = 2**n
    full = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        bits = [(idx >> (n - 1 - w)) & 1 for w in range(n)]
        col_in = (bits[wire_a] << 1) | bits[wire_b]
        for out_pair in range(4):
            amp = matrix[out_pair, col_in]
            if amp == 0:
                continue
            new_bits = list(bits)
            new_bits[wire_a] = (out_pair >> 1) & 1
            new_bits[wire_b] = out_pair & 1
            out_idx = 0
            for b in new_bits:
                out_idx = (out_idx << 1) | b
            full[out_idx, idx] += amp
    return full


# -- generator ---------------------------------------------------------------


@dataclass
class CircuitCase:
    term: RawTerm
    n_qubits: int
    expected: np.ndarray  # 2^k amplitude column, leaf order big-endian
    final_shape: object  # shape tree of the result type


def _initial_state(rng: random.Random, k: int, shape):
    """A closed literal register: basis tuple or a normalized superposition."""
    dim = 2**k
    if rng.random() < 0.5:
        pattern = rng.randrange(dim)
        vec = np.zeros(dim, dtype=complex)
        vec[pattern] = 1.0
        bits = [(pattern >> (k - 1 - w)) & 1 for w in range(k)]
        term = build_tuple(shape, lambda leaf: QubitLit(bits[leaf]))
        return term, vec, True
    n_branches = rng.randint(2, min(3, dim))
    patterns = rng.sample(range(dim), n_branches)
    amps = np.array(
        [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in patterns]
    )
    amps /= np.linalg.norm(amps)
    vec = np.zeros(dim, dtype=complex)
    term = None
    for pattern, amp in zip(patterns, amps):
        vec[pattern] = amp
        bits = [(pattern >> (k - 1 - w)) & 1 for w in range(k)]
        branch = build_tuple(shape, lambda leaf: QubitLit(bits[leaf]))
        scaled = Scale(complex(amp), branch)
        term = scaled if term is None else Sum(term, scaled)
    return term, vec, False


def _names(k: int) -> list[str]:
    return [f"w{i}" for i in range(k)]


def _layer(shape, rebuild, term):
    """Wrap term in a lambda that rebinds the register and rebuilds it."""
    names = _names(max(shape_leaves(shape)) + 1)
    pattern = shape_pattern(shape, names)
    return App(Lam(pattern, shape_type(shape), rebuild(names)), term)


def generate_circuit(rng: random.Random) -> CircuitCase:
    k = rng.randint(1, 4)
    shape = right_comb(list(range(k)))
    term, vec, is_basis = _initial_state(rng, k, shape)

    if is_basis and rng.random() < 0.3:
        # Feed the literals one by one through a curried lambda chain.
        literals = []

        def collect(t):
            if isinstance(t, QubitLit):
                literals.append(t.bit)
            elif isinstance(t, Pair):
                collect(t.left)
                collect(t.right)

        collect(term)
        names = _names(k)
        body = build_tuple(shape, lambda leaf: Var(names[leaf]))
        curried = body
        for name in reversed(names):
            curried = Lam(PVar(name), QBIT, curried)
        rebuilt = curried
        for bit in literals:
            rebuilt = App(rebuilt, QubitLit(bit))
        term = rebuilt

    depth = rng.randint(0, 6)
    matrix = np.eye(2**k, dtype=complex)
    for _ in range(depth):
        choice = rng.random()
        if choice < 0.45:
            gate = rng.choice(list(ORACLE_1Q))
            wire = rng.randrange(k)

            def rebuild(names, gate=gate, wire=wire):
                return build_tuple(
                    shape,
                    lambda leaf: App(GateNode(gate), Var(names[leaf]))
                    if leaf == wire
                    else Var(names[leaf]),
                )

            term = _layer(shape, rebuild, term)
            matrix = lift_1q(ORACLE_1Q[gate], wire, k) @ matrix
        elif choice < 0.7 and k >= 2:
            pairs = sibling_pairs(shape)
            if not pairs:
                new_shape = random_shape(rng, list(range(k)))

                def rebuild(names, new_shape=new_shape):
                    return build_tuple(new_shape, lambda leaf: Var(names[leaf]))

                term = _layer(shape, rebuild, term)
                shape = new_shape
                continue
            wire_a, wire_b = rng.choice(pairs)

            def rebuild(names, wa=wire_a, wb=wire_b):
                def leaf_term(leaf):
                    return Var(names[leaf])

                def walk(node):
                    if node == (wa, wb):
                        return App(
                            GateNode("CNOT"),
                            Pair(Var(names[wa]), Var(names[wb])),
                        )
                    if isinstance(node, int):
                        return leaf_term(node)
                    return Pair(walk(node[0]), walk(node[1]))

                return walk(shape)

            term = _layer(shape, rebuild, term)
            matrix = lift_2q(ORACLE_CNOT, wire_a, wire_b, k) @ matrix
        else:
            new_shape = random_shape(rng, list(range(k)))

            def rebuild(names, new_shape=new_shape):
                return build_tuple(new_shape, lambda leaf: Var(names[leaf]))

            term = _layer(shape, rebuild, term)
            shape = new_shape

    reg_type = shape_type(shape)
    wrapper = rng.random()
    if wrapper < 0.25:
        # let f = identity-on-register in f term
        term = App(
            Lam(PVar("f"), LolliType(reg_type, reg_type), App(Var("f"), term)),
            Lam(PVar("r"), reg_type, Var("r")),
        )
    elif wrapper < 0.4 and k <= 2:
        # composition of two register-level functions
        gate = rng.choice(list(ORACLE_1Q))
        wire = rng.randrange(k)
        names = _names(k)
        body = build_tuple(
            shape,
            lambda leaf: App(GateNode(gate), Var(names[leaf]))
            if leaf == wire
            else Var(names[leaf]),
        )
        stage = Lam(shape_pattern(shape, names), reg_type, body)
        identity = Lam(PVar("r"), reg_type, Var("r"))
        compose = Lam(
            PVar("f"),
            LolliType(reg_type, reg_type),
            Lam(
                PVar("g"),
                LolliType(reg_type, reg_type),
                Lam(PVar("s"), reg_type, App(Var("g"), App(Var("f"), Var("s")))),
            ),
        )
        term = App(App(App(compose, stage), identity), term)
        matrix = lift_1q(ORACLE_1Q[gate], wire, k) @ matrix

    return CircuitCase(term, k, matrix @ vec, shape)


def leaf_index(term: RawTerm, shape) -> int:
    """Big-endian index of a literal tuple with the given shape."""
    bits = {}

    def walk(node, t):
        if isinstance(node, int):
            assert isinstance(t, QubitLit)
            bits[node] = t.bit
            return
        assert isinstance(t, Pair)
        walk(node[0], t.left)
        walk(node[1], t.right)

    walk(shape, term)
    idx = 0
    for leaf in sorted(bits):
        idx = (idx << 1) | bits[leaf]
    return idx


def state_vector(sup, shape, k: int) -> np.ndarray:
    """Amplitude vector of a normal-form superposition of literal tuples."""
    vec = np.zeros(2**k, dtype=complex)
    for key, amp in sup.items():
        vec[leaf_index(key.term, shape)] += amp
    return vec
