"""Evaluation: parallel reduction of every branch, interference,
stuck terms, fuel, and equivalence of normal forms.

Run with: python3 demos/05_evaluation.py
"""

import math

from qlam.cli import format_state
from qlam.evaluate import (
    DEFAULT_FUEL,
    FuelExhausted,
    equiv,
    evaluate,
    is_value,
    iter_states,
)
from qlam.parser import parse
from qlam.printer import pretty
from qlam.superpose import linearize, norm2, super_eq
from qlam.syntax import Gate, Var

s = 1 / math.sqrt(2)

print("== Step-by-step reduction ==")
print()
print("Preparing a Bell pair, one leftmost-outermost step per line:")
bell = parse(r"(\x (x) y : Qbit (x) Qbit. #CNOT ((#H x) (x) y)) (|0> (x) |0>)")
states = list(iter_states(bell))
for n, state in enumerate(states):
    print(f"  step {n}: {format_state(state)}")
    assert abs(norm2(state) - 1) <= 1e-9, "every intermediate state stays normalized"

print()
print("== Branches reduce in parallel ==")
print()
print("A single step contracts the leftmost-outermost redex of every")
print("branch at once, and merging amplitudes produces interference:")
interf = parse("#H (#Z (#H |0>))")
states = list(iter_states(interf))
for n, state in enumerate(states):
    print(f"  step {n}: {format_state(state)}")
final = states[-1]
assert super_eq(final, linearize(parse("|1>")), mode="strict")
print("  H Z H = X, recovered purely by amplitude cancellation.")

print()
print("== What counts as a value ==")
print()
print("Beta steps fire only on value arguments (literals, lambdas,")
print("gates, pairs of values); free variables are stuck, not values:")
for src, want in [("|0>", True), (r"\x : Qbit. x", True), ("#H", True),
                  ("|0> (x) |1>", True), ("y", False), ("#H |0>", False)]:
    print(f"  is_value({src!r:24}) = {is_value(parse(src))}")
    assert is_value(parse(src)) == want

print()
print("Evaluation never reduces under a lambda, and open applications")
print("are left stuck rather than forced:")
under = evaluate(parse(r"\x : Qbit. (\y : Qbit. y) x"))
(key, _), = under.items()
print("  \\x : Qbit. (\\y : Qbit. y) x  stays", pretty(key.term))
assert pretty(key.term) == r"\x:Qbit. (\y:Qbit. y) x"

stuck = evaluate(linearize(parse("f (#H |0>)")))
print("  f (#H |0>) reduces the argument, then sticks:")
for key, amp in stuck.items():
    print(f"    ({amp:.4g}) {pretty(key.term)}")
    assert key.term.fun == Var("f")
assert len(stuck.items()) == 2

print()
print("== Fuel ==")
print()
print(f"evaluate() takes at most `fuel` steps (default {DEFAULT_FUEL}).")
print("Self-application is accepted by the evaluator (it is untyped) and")
print("diverges, so the fuel bound triggers:")
omega = parse(r"(\x : Qbit. x x) (\x : Qbit. x x)")
try:
    evaluate(omega, fuel=50)
except FuelExhausted as exc:
    print(f"  evaluate(omega, fuel=50) -> FuelExhausted after {exc.fuel} steps")
    assert exc.fuel == 50
else:
    raise AssertionError("expected FuelExhausted")

print()
print("== Equivalence of results ==")
print()
print("equiv() evaluates both sides and compares normal forms modulo")
print("eta-contraction:")
a = parse(r"\x : Qbit. #H x")
b = Gate("H")
assert equiv(a, b)
print(r"  \x : Qbit. #H x  ~  #H            (eta)")

x_then_y = parse("#X (#Y |0>)")
just_zero = parse("(1i) * |0>")
assert equiv(x_then_y, just_zero)
assert not equiv(x_then_y, parse("|0>"))
print("  #X (#Y |0>)  ~  (1i) * |0>        (amplitudes must match exactly)")

print()
print("For comparison up to a global phase, compare evaluated states")
print("with super_eq in phase mode:")
assert super_eq(evaluate(x_then_y), evaluate(parse("|0>")), mode="phase")
print("  #X (#Y |0>)  ~  |0>               (phase mode)")

print()
print("All claims verified.")
