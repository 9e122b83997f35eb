"""Unitary gate registry and gate application to qubit literal tuples.

Matrices act on n-qubit tuples indexed big-endian: the first qubit in
a tuple is the most significant bit of the row/column index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .syntax import Pair, QubitLit, RawTerm
from .superpose import Superposition

DECLARE_TOL = 1e-9


class GateError(Exception):
    """Base class for gate declaration and application errors."""


class NotPowerOfTwo(GateError):
    def __init__(self, shape):
        self.shape = shape
        super().__init__(
            f"gate matrix must be square with power-of-two size >= 2, got {shape}"
        )


class NotUnitary(GateError):
    def __init__(self, name: str, max_deviation: float):
        self.name = name
        self.max_deviation = max_deviation
        super().__init__(
            f"matrix for {name} is not unitary: max |U*U - I| = {max_deviation:.3e}"
        )


class Redefinition(GateError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"gate {name} is already declared")


class ArityMismatch(GateError):
    def __init__(self, name: str, expected: int, found: int):
        self.name = name
        self.expected = expected
        self.found = found
        super().__init__(
            f"gate {name} acts on {expected} qubits, got {found}"
        )


class UnknownGate(GateError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"gate {name} is not declared")


@dataclass
class GateDef:
    """A declared unitary: name, qubit count, and its 2^n x 2^n matrix."""

    name: str
    arity: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        self.matrix.setflags(write=False)


def unitarity_deviation(matrix: np.ndarray) -> float:
    """max |U*U - I|, zero exactly when the matrix is unitary."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    eye = np.eye(matrix.shape[0])
    return float(np.max(np.abs(matrix.conj().T @ matrix - eye)))


class GateRegistry:
    """Mutable name -> GateDef table."""

    def __init__(self):
        self._defs: dict[str, GateDef] = {}

    def declare(self, name: str, matrix) -> GateDef:
        return declare_gate(name, matrix, self)

    def get(self, name: str) -> GateDef | None:
        return self._defs.get(name)

    def __getitem__(self, name: str) -> GateDef:
        g = self._defs.get(name)
        if g is None:
            raise UnknownGate(name)
        return g

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def names(self) -> list[str]:
        return sorted(self._defs)

    def _install(self, g: GateDef) -> None:
        self._defs[g.name] = g


def declare_gate(name: str, matrix, registry: GateRegistry) -> GateDef:
    """Validate a matrix and add it to the registry under a fresh name."""
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotPowerOfTwo(arr.shape)
    size = arr.shape[0]
    arity = int(math.log2(size)) if size >= 2 else 0
    if size < 2 or 2**arity != size:
        raise NotPowerOfTwo(arr.shape)
    deviation = unitarity_deviation(arr)
    if deviation > DECLARE_TOL:
        raise NotUnitary(name, deviation)
    if name in registry:
        raise Redefinition(name)
    g = GateDef(name, arity, arr)
    registry._install(g)
    return g


_SQRT_HALF = 1.0 / math.sqrt(2.0)

_BUILTIN_MATRICES = {
    "H": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]]),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]]),
    "CNOT": np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ]
    ),
}


def builtins() -> GateRegistry:
    """A fresh registry holding H, X, Y, Z, and CNOT."""
    registry = GateRegistry()
    for name, matrix in _BUILTIN_MATRICES.items():
        declare_gate(name, matrix, registry)
    return registry


def tuple_term(bits: tuple[int, ...]) -> RawTerm:
    """The right-nested tuple of qubit literals for a bit string."""
    if not bits:
        raise ValueError("empty bit tuple")
    term: RawTerm = QubitLit(bits[-1])
    for b in reversed(bits[:-1]):
        term = Pair(QubitLit(b), term)
    return term


def literal_bits(t: RawTerm) -> tuple[int, ...] | None:
    """Bits of a right-nested tuple of qubit literals, or None."""
    bits = []
    while isinstance(t, Pair):
        if not isinstance(t.left, QubitLit):
            return None
        bits.append(t.left.bit)
        t = t.right
    if not isinstance(t, QubitLit):
        return None
    bits.append(t.bit)
    return tuple(bits)


def apply_gate(g: GateDef, bits: tuple[int, ...]) -> Superposition:
    """The superposition of literal tuples a gate sends a basis tuple to."""
    if len(bits) != g.arity:
        raise ArityMismatch(g.name, g.arity, len(bits))
    col = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b}")
        col = (col << 1) | b
    size = 2**g.arity
    entries = []
    for row in range(size):
        amp = complex(g.matrix[row, col])
        if amp != 0:
            out = tuple((row >> (g.arity - 1 - k)) & 1 for k in range(g.arity))
            entries.append((tuple_term(out), amp))
    return Superposition(entries)


def parse_matrix_json(rows) -> np.ndarray:
    """Matrix from JSON rows whose entries are [re, im] pairs or plain numbers."""
    def entry(e):
        if isinstance(e, (int, float)):
            return complex(e)
        if isinstance(e, list) and len(e) == 2:
            return complex(e[0], e[1])
        raise ValueError(f"matrix entries must be numbers or [re, im] pairs, got {e!r}")

    return np.array([[entry(e) for e in row] for row in rows], dtype=np.complex128)


def load_gate_json(text: str, registry: GateRegistry) -> list[GateDef]:
    """Declare gates from a JSON document: one {name, matrix} object or a list."""
    doc = json.loads(text)
    if isinstance(doc, dict):
        doc = [doc]
    out = []
    for obj in doc:
        matrix = parse_matrix_json(obj["matrix"])
        out.append(declare_gate(obj["name"], matrix, registry))
    return out
