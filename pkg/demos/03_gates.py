"""The gate registry: built-in unitaries, declaring new gates, the
validation rules, and direct application to basis states.

Run with: python3 demos/03_gates.py
"""

import math

import numpy as np

from qlam.gates import (
    NotPowerOfTwo,
    NotUnitary,
    Redefinition,
    apply_gate,
    builtins,
    declare_gate,
    literal_bits,
    unitarity_deviation,
)
from qlam.parser import parse
from qlam.printer import pretty

registry = builtins()
s = 1 / math.sqrt(2)

print("== Built-in gates ==")
print()
for name in ["H", "X", "Y", "Z", "CNOT"]:
    g = registry[name]
    dev = unitarity_deviation(g.matrix)
    print(f"  #{name}: {g.arity} qubit(s), unitarity deviation {dev:.3e}")
    assert dev <= 1e-12

print()
print("== Applying a gate to basis-state bits ==")
print()
print("apply_gate reads off one column of the matrix as a superposition")
print("of output basis states (bit order is big-endian):")
out = apply_gate(registry["H"], (0,))
print("  H|0> =", " + ".join(f"({a:.4g}) {pretty(k.term)}" for k, a in out.items()))
assert all(abs(a - s) < 1e-12 for _, a in out.items())

for bits, want in [((0, 0), (0, 0)), ((0, 1), (0, 1)), ((1, 0), (1, 1)), ((1, 1), (1, 0))]:
    out = apply_gate(registry["CNOT"], bits)
    (key, amp), = out.items()
    got = literal_bits(key.term)
    print(f"  CNOT|{bits[0]}{bits[1]}> = |{got[0]}{got[1]}>")
    assert got == want and amp == 1

print()
print("literal_bits recognizes right-nested literal tuples (matching the")
print("right-associated tensor types that gate domains use):")
right = parse("|1> (x) (|0> (x) |1>)")
left = parse("|1> (x) |0> (x) |1>")
print("  |1> (x) (|0> (x) |1>)  ->", literal_bits(right))
print("  |1> (x) |0> (x) |1>    ->", literal_bits(left), " (left-nested: not a gate argument)")
assert literal_bits(right) == (1, 0, 1) and literal_bits(left) is None

print()
print("== Declaring gates ==")
print()
sqrt_x = np.array([[0.5 + 0.5j, 0.5 - 0.5j], [0.5 - 0.5j, 0.5 + 0.5j]])
declare_gate("SX", sqrt_x, registry)
print("  declared #SX (square root of X); SX @ SX == X:",
      np.allclose(sqrt_x @ sqrt_x, registry["X"].matrix))
assert np.allclose(sqrt_x @ sqrt_x, registry["X"].matrix)

print()
print("Declaration validates shape, size, and unitarity:")
try:
    declare_gate("BAD", np.eye(3), registry)
except NotPowerOfTwo as exc:
    print("  3x3 matrix -> NotPowerOfTwo:", exc)
else:
    raise AssertionError("expected NotPowerOfTwo")

try:
    declare_gate("BAD", np.diag([1.0, 2.0]), registry)
except NotUnitary as exc:
    print(f"  diag(1, 2)  -> NotUnitary, max deviation {exc.max_deviation}")
    assert abs(exc.max_deviation - 3.0) < 1e-12
else:
    raise AssertionError("expected NotUnitary")

try:
    declare_gate("H", np.eye(2), registry)
except Redefinition as exc:
    print("  reusing H   -> Redefinition:", exc)
else:
    raise AssertionError("expected Redefinition")

print()
print("All claims verified.")
