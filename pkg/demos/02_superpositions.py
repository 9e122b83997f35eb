"""Canonical superpositions: how raw sums and scalings are normalized
into a flat amplitude-keyed form, and what "congruent branches" means.

Run with: python3 demos/02_superpositions.py
"""

import json
import math

from qlam.parser import parse
from qlam.printer import pretty
from qlam.superpose import (
    BasisTerm,
    CongruenceError,
    PRUNE_TOL,
    from_json_obj,
    linearize,
    norm2,
    skeleton_of,
    super_eq,
    to_json_obj,
)

s = 1 / math.sqrt(2)


def show(sup):
    return " + ".join(f"({amp:.4g}) {pretty(k.term)}" for k, amp in sup.items()) or "0"


print("== Linearization ==")
print()
print("linearize() pushes scalar factors through sums, merges")
print("alpha-equal branches, and sorts them into a canonical order:")
sup = linearize(parse("(1/sqrt(2)) * (|0> + |1>)"))
print("  (1/sqrt(2)) * (|0> + |1>)   ->", show(sup))
assert len(sup.items()) == 2 and abs(norm2(sup) - 1) < 1e-12

sup = linearize(parse("(0.5) * |0> + (0.5) * |0>"))
print("  (0.5) * |0> + (0.5) * |0>   ->", show(sup))
assert [(pretty(k.term), amp) for k, amp in sup.items()] == [("|0>", (1 + 0j))]

print()
print("Branches that cancel are pruned (threshold", PRUNE_TOL, "):")
sup = linearize(parse("(0.5) * |0> + (-0.5) * |0>"))
print("  (0.5) * |0> + (-0.5) * |0>  ->", show(sup))
assert len(sup.items()) == 0

print()
print("== Sums lift out of lambda bodies ==")
print()
print("Abstraction is linear, so a lambda whose body is a sum becomes")
print("a sum of lambdas with congruent bodies:")
sup = linearize(parse(r"\x : Qbit. (1/sqrt(2)) * (x (x) |0>) + (1/sqrt(2)) * (x (x) |1>)"))
for k, amp in sup.items():
    print(f"  ({amp:.4g}) {pretty(k.term)}")
assert len(sup.items()) == 2

print()
print("== Congruence ==")
print()
print("Every branch of a superposition must share one skeleton: the")
print("term shape with qubit literals erased. |0> and |1> share a")
print("skeleton; |0> and a pair do not:")
sk0 = skeleton_of(BasisTerm(parse("|0>")))
sk1 = skeleton_of(BasisTerm(parse("|1>")))
skp = skeleton_of(BasisTerm(parse("|0> (x) |0>")))
assert sk0 == sk1 and sk0 != skp
print("  skeleton(|0>) == skeleton(|1>):", sk0 == sk1)
print("  skeleton(|0>) == skeleton(|0> (x) |0>):", sk0 == skp)

try:
    linearize(parse("(1/sqrt(2)) * (|0> + |0> (x) |0>)"))
except CongruenceError as exc:
    print("  mixing them raises CongruenceError:", exc)
else:
    raise AssertionError("expected CongruenceError")

print()
print("== Comparison ==")
print()
a = linearize(parse("(1/sqrt(2)) * |0> + (1/sqrt(2)) * |1>"))
b = linearize(parse("(1i) * ((1/sqrt(2)) * |0> + (1/sqrt(2)) * |1>)"))
print("  two states differing by the global factor 1i:")
print("    strict:", super_eq(a, b, mode="strict"), "   phase:", super_eq(a, b, mode="phase"))
assert not super_eq(a, b, mode="strict") and super_eq(a, b, mode="phase")

print()
print("== JSON round-trip ==")
print()
obj = to_json_obj(a)
print(" ", json.dumps(obj, separators=(",", ":")))
assert super_eq(from_json_obj(obj), a, mode="strict")
print("  from_json_obj(to_json_obj(s)) == s holds.")

print()
print("All claims verified.")
