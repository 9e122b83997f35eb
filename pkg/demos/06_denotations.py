"""The matrix semantics: ranks and carrier dimensions of types, the
denotation of programs as concrete matrices, the exact curry/apply
adjunction, and the evaluation-preserves-denotation check.

Run with: python3 demos/06_denotations.py
"""

import math

import numpy as np

from qlam.denote import (
    DIM_CAP,
    DimensionCapError,
    EmptyBundle,
    apply_carrier,
    carrier_dim,
    curry_carrier,
    denote,
    rank_of,
    soundness_check,
)
from qlam.evaluate import evaluate
from qlam.parser import parse, parse_type
from qlam.printer import pretty_type
from qlam.superpose import linearize

s = 1 / math.sqrt(2)

print("== Rank and carrier dimension ==")
print()
print("rank counts basis states carried through a type; the carrier is")
print("the ambient space a value of the type lives in. For function")
print("types they differ: the rank divides, the carrier multiplies.")
print()
print(f"  {'type':38} {'rank':>4} {'carrier':>8}")
for src in [
    "Qbit",
    "Qbit (x) Qbit",
    "Qbit -o Qbit",
    "Qbit -o Qbit (x) Qbit",
    "Qbit (x) Qbit -o Qbit (x) Qbit",
    "(Qbit -o Qbit) -o Qbit (x) Qbit",
]:
    ty = parse_type(src)
    print(f"  {src:38} {rank_of(ty):>4} {carrier_dim(ty):>8}")
assert rank_of(parse_type("Qbit -o Qbit")) == 1
assert carrier_dim(parse_type("Qbit -o Qbit")) == 4

print()
print("== Programs denote matrices ==")
print()
print("A closed program of type Qbit (x) Qbit denotes a 4x1 column in")
print("the big-endian basis |00>, |01>, |10>, |11>:")
bell = parse(r"(\x (x) y : Qbit (x) Qbit. #CNOT ((#H x) (x) y)) (|0> (x) |0>)")
column = denote(linearize(bell)).matrix[:, 0]
print("  Bell program ->", np.round(column, 4))
assert np.allclose(column, [s, 0, 0, s])

print()
print("The same vector comes from plain linear algebra:")
H = np.array([[s, s], [s, -s]])
CNOT = np.eye(4)[[0, 1, 3, 2]]
oracle = CNOT @ np.kron(H, np.eye(2)) @ np.array([1, 0, 0, 0])
print("  CNOT (H (x) I) |00>  =", np.round(oracle, 4))
assert np.allclose(column, oracle, atol=1e-12)

print()
print("A lambda denotes its matrix (flattened into the function carrier):")
hmat = denote(linearize(parse(r"\x : Qbit. #H x"))).matrix
assert hmat.shape == (4, 1) and np.allclose(hmat[:, 0], H.reshape(-1), atol=1e-12)
print(r"  \x : Qbit. #H x  ->", np.round(hmat[:, 0], 4), " (H, row-major)")

print()
print("Open terms denote maps out of their context:")
mat = denote(linearize(parse("#H x")), [("x", parse_type("Qbit"))]).matrix
print("  x : Qbit |- #H x  ->")
print(np.round(mat, 4))
assert np.allclose(mat, H, atol=1e-12)

print()
print("== Currying is exact ==")
print()
print("curry_carrier reshapes a map C (x) A -> B into C -> (A -o B), and")
print("composing with apply_carrier recovers the original bit for bit:")
rng = np.random.default_rng(7)
f = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))  # C=3, A=2, B=6
curried = curry_carrier(f, 3, 2, 6)
applied = apply_carrier(2, 6) @ np.kron(curried, np.eye(2))
assert (applied == f).all()
print("  apply . (curry f (x) id) == f holds with exact equality.")

print()
print("== Evaluation preserves denotation ==")
print()
prog = parse(r"(\x : Qbit. #H (#H x)) |1>")
result = evaluate(prog)
soundness_check(linearize(prog), result)
print("  denote((\\x : Qbit. #H (#H x)) |1>) == denote(its normal form)")

print()
print("== Semantic guard rails ==")
print()
print("A function type whose rank is zero carries no basis states, so")
print("no map can inhabit it semantically:")
zero_rank = r"\p : Qbit (x) Qbit (x) Qbit -o Qbit. p (|0> (x) (|0> (x) |0>))"
try:
    denote(linearize(parse(zero_rank)))
except EmptyBundle as exc:
    print(f"  rank({pretty_type(exc.type)}) == {rank_of(exc.type)} -> EmptyBundle")
else:
    raise AssertionError("expected EmptyBundle")

print()
print(f"Carrier dimensions are capped at {DIM_CAP} (= 2^16) by default,")
print("and the cap is configurable:")
try:
    denote(linearize(parse("#H x")), [("x", parse_type("Qbit"))], dim_cap=1)
except DimensionCapError as exc:
    print(f"  dim_cap=1 -> DimensionCapError: {exc}")
else:
    raise AssertionError("expected DimensionCapError")

print()
print("All claims verified.")
