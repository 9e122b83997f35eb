"""Linear typing: what the checker accepts, and the eight diagnostics
it raises — with the no-cloning and no-deleting rules front and center.

Run with: python3 demos/04_typechecking.py
"""

from qlam.cli import error_code
from qlam.parser import parse, parse_type
from qlam.printer import pretty_type
from qlam.typecheck import TypeCheckError, check, infer

print("== Inference ==")
print()
for src, want in [
    ("|0>", "Qbit"),
    (r"\x : Qbit. #H x", "Qbit -o Qbit"),
    (r"\x (x) y : Qbit (x) Qbit. y (x) x", "Qbit (x) Qbit -o Qbit (x) Qbit"),
    ("#CNOT", "Qbit (x) Qbit -o Qbit (x) Qbit"),
    ("(1/sqrt(2)) * |0> + (1/sqrt(2)) * |1>", "Qbit"),
    (
        r"\f : Qbit (x) Qbit -o Qbit (x) Qbit. f (|0> (x) |1>)",
        "(Qbit (x) Qbit -o Qbit (x) Qbit) -o Qbit (x) Qbit",
    ),
]:
    ty = infer((), parse(src))
    print(f"  {src:55} : {pretty_type(ty)}")
    assert ty == parse_type(want)

print()
print("Open terms are typed in an explicit context:")
ty = infer([("x", parse_type("Qbit"))], parse("#H x"))
print("  x : Qbit  |-  #H x  :", pretty_type(ty))
assert ty == parse_type("Qbit")

print()
print("== The eight diagnostics ==")
print()
cases = [
    ("x", (), "UnboundVar", "free variable with no context entry"),
    (r"\x : Qbit. x (x) x", (), "DuplicateUse", "no cloning: x consumed twice"),
    (r"\x (x) y : Qbit (x) Qbit. x", (), "UnusedVar", "no deleting: y never consumed"),
    (r"(\x : Qbit. x) (\y : Qbit. y)", (), "Mismatch", "argument type != domain"),
    ("|0> |1>", (), "NotAFunction", "applying a qubit literal"),
    ("#CNOT |0>", (), "GateArity", "2-qubit gate, 1-qubit argument"),
    ("(0.5) * |0> + (0.5) * |1>", (), "NonNormalized", "closed norm is 0.5, not 1"),
    ("(1/sqrt(2)) * (|0> + |0> (x) |0>)", (), "NonCongruent", "branch shapes differ"),
]
for src, ctx, code, why in cases:
    try:
        infer(ctx, parse(src))
    except Exception as exc:
        got = error_code(exc)
        print(f"  {code:14} {why}")
        assert got == code, (src, got, code)
    else:
        raise AssertionError(f"{src} was accepted")

print()
print("== Linearity is per branch, and shadowing is fine ==")
print()
src = r"\x : Qbit. (1/sqrt(2)) * (x (x) |0>) + (1/sqrt(2)) * (x (x) |1>)"
ty = infer((), parse(src))
print(f"  each branch consumes x exactly once:")
print(f"  {src}")
print(f"    : {pretty_type(ty)}")
assert ty == parse_type("Qbit -o Qbit (x) Qbit")

src = r"\x : Qbit. (\x : Qbit -o Qbit. x) (\x : Qbit. x) x"
ty = infer((), parse(src))
print(f"  inner binders shadow outer ones: {src} : {pretty_type(ty)}")
assert ty == parse_type("Qbit -o Qbit")

print()
print("== Norm checking ==")
print()
print("Closed superpositions must have squared norm 1 (within 1e-9);")
print("amplitudes may be any complex numbers that satisfy it:")
ok = "(0.6) * |0> + (0.8i) * |1>"
ty = infer((), parse(ok))
print(f"  {ok} : {pretty_type(ty)}   (0.36 + 0.64 = 1)")

print()
print("check() compares against an expected type:")
try:
    check((), parse("|0>"), parse_type("Qbit -o Qbit"))
except TypeCheckError as exc:
    print("  check(|0>, Qbit -o Qbit) ->", exc.code)
    assert exc.code == "Mismatch"
else:
    raise AssertionError("expected Mismatch")

print()
print("All claims verified.")
