"""A tour of the surface syntax: parsing, printing, alpha-equivalence,
and capture-avoiding substitution.

Run with: python3 demos/01_syntax_tour.py
"""

from qlam.parser import ParseError, parse, parse_type
from qlam.printer import pretty, pretty_type
from qlam.syntax import App, Lam, Pair, Var, alpha_eq, subst

print("== Parsing ==")
print()
print("Terms are qubit literals, gates, lambdas, applications, tensor")
print("pairs, and weighted sums:")
term = parse(r"\x (x) y : Qbit (x) Qbit. #CNOT ((#H x) (x) y)")
print(" ", pretty(term))
assert isinstance(term, Lam)

print()
print("The three-character token `(x)` is the tensor operator; to")
print("parenthesize a variable named x, put spaces inside: `( x )`.")
pair = parse("a (x) b")
lone = parse("( x )")
assert isinstance(pair, Pair)
assert lone == Var("x")
print("  a (x) b   parses to a pair:", pretty(pair))
print("  ( x )     parses to a variable:", pretty(lone))

print()
print("Application binds tighter than tensor, tensor tighter than sum,")
print("and both application and term-level tensor associate left:")
t = parse("f g h")
assert t == App(App(Var("f"), Var("g")), Var("h"))
print("  f g h        =", pretty(t), "        (left-assoc application)")
t = parse("a (x) b (x) c")
assert t == Pair(Pair(Var("a"), Var("b")), Var("c"))
print("  a (x) b (x) c =", pretty(t), " (left-assoc tensor)")

print()
print("Type-level tensor associates the other way (rightward), which is")
print("why a 2-qubit gate domain is written without parentheses:")
ty = parse_type("Qbit (x) Qbit -o Qbit (x) Qbit")
assert parse_type("Qbit (x) (Qbit (x) Qbit)") == parse_type("Qbit (x) Qbit (x) Qbit")
print(" ", pretty_type(ty))

print()
print("== Printing ==")
print()
print("The printer emits minimal parentheses, and its output reparses")
print("to an alpha-equivalent term:")
for src in [
    "f (g h)",
    "a (x) (b (x) c)",
    r"(\x : Qbit. #H x) |0>",
    "(1/sqrt(2)) * |0> + (-1/sqrt(2)) * |1>",
]:
    t = parse(src)
    assert alpha_eq(parse(pretty(t)), t)
    print(f"  {src:42} -> {pretty(t)}")

print()
print("== Alpha-equivalence ==")
print()
a = parse(r"\x : Qbit. #H x")
b = parse(r"\fresh : Qbit. #H fresh")
assert alpha_eq(a, b) and a != b
print("  \\x : Qbit. #H x  and  \\fresh : Qbit. #H fresh")
print("  differ as trees but alpha_eq holds: bound names do not matter.")

print()
print("== Substitution ==")
print()
print("subst is simultaneous and capture-avoiding. Substituting y for")
print("x under a binder named y renames the binder first:")
body = parse(r"\y : Qbit. x (x) y")
out = subst(body, {"x": Var("y")})
print("  [y/x] (\\y : Qbit. x (x) y)  =", pretty(out))
assert alpha_eq(out, parse(r"\z : Qbit. y (x) z"))
assert not alpha_eq(out, parse(r"\y : Qbit. y (x) y")), "capture must not happen"

print()
print("== Errors ==")
print()
try:
    parse("\\x : Qbit.")
except ParseError as exc:
    print(f"  parse('\\\\x : Qbit.') raises ParseError at {exc.line}:{exc.col}")
    print(f"  message: {exc}")
else:
    raise AssertionError("expected a ParseError")

print()
print("All claims verified.")
