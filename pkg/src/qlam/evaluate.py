"""Small-step evaluation of superpositions.

The redex position is chosen on the shared branch skeleton, so one
step contracts the same position in every branch in parallel.  Beta
redexes fire only once the argument is a syntactic value; gate
redexes fire only on full tuples of qubit literals.  Nothing reduces
under a lambda.
"""

from __future__ import annotations

from .gates import GateRegistry, apply_gate, builtins, literal_bits
from .superpose import Superposition, linearize
from .syntax import (
    App,
    Gate,
    Lam,
    Pair,
    Pattern,
    PPair,
    PVar,
    QubitLit,
    RawTerm,
    Var,
    free_vars,
    subst,
)

DEFAULT_FUEL = 100_000


class FuelExhausted(Exception):
    """Raised when evaluation does not reach a normal form within its fuel."""

    def __init__(self, fuel: int):
        self.fuel = fuel
        super().__init__(f"no normal form after {fuel} steps")


def is_value(t: RawTerm) -> bool:
    """Literals, lambdas, gate constants, and tuples of values."""
    if isinstance(t, (QubitLit, Lam, Gate)):
        return True
    if isinstance(t, Pair):
        return is_value(t.left) and is_value(t.right)
    return False


def _destructurable(p: Pattern, t: RawTerm) -> bool:
    if isinstance(p, PVar):
        return True
    assert isinstance(p, PPair)
    return (
        isinstance(t, Pair)
        and _destructurable(p.left, t.left)
        and _destructurable(p.right, t.right)
    )


def _match(p: Pattern, t: RawTerm, out: dict[str, RawTerm]) -> None:
    if isinstance(p, PVar):
        out[p.name] = t
        return
    assert isinstance(p, PPair) and isinstance(t, Pair)
    _match(p.left, t.left, out)
    _match(p.right, t.right, out)


def _is_redex(t: RawTerm, gates: GateRegistry) -> str | None:
    if not isinstance(t, App):
        return None
    if isinstance(t.fun, Lam) and is_value(t.arg):
        if _destructurable(t.fun.pattern, t.arg):
            return "beta"
    if isinstance(t.fun, Gate):
        g = gates.get(t.fun.name)
        if g is not None:
            bits = literal_bits(t.arg)
            if bits is not None and len(bits) == g.arity:
                return "gate"
    return None


def find_redex(t: RawTerm, gates: GateRegistry,
               strategy: str = "outermost") -> tuple[tuple[int, ...], str] | None:
    """Locate a redex path; lambdas are opaque.

    "outermost" takes the first redex in preorder (leftmost-outermost);
    "innermost" takes the first in postorder (leftmost-innermost).
    """
    if strategy not in ("outermost", "innermost"):
        raise ValueError(f"unknown strategy {strategy!r}")

    def walk(t: RawTerm, path: tuple[int, ...]):
        here = _is_redex(t, gates)
        if strategy == "outermost" and here:
            return path, here
        children = ()
        if isinstance(t, App):
            children = (t.fun, t.arg)
        elif isinstance(t, Pair):
            children = (t.left, t.right)
        for i, child in enumerate(children):
            found = walk(child, path + (i,))
            if found:
                return found
        if strategy == "innermost" and here:
            return path, here
        return None

    return walk(t, ())


def _subterm(t: RawTerm, path: tuple[int, ...]) -> RawTerm:
    for i in path:
        if isinstance(t, App):
            t = t.fun if i == 0 else t.arg
        elif isinstance(t, Pair):
            t = t.left if i == 0 else t.right
        else:
            raise ValueError("path leaves the term")
    return t


def _replace(t: RawTerm, path: tuple[int, ...], new: RawTerm) -> RawTerm:
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, App):
        if i == 0:
            return App(_replace(t.fun, rest, new), t.arg)
        return App(t.fun, _replace(t.arg, rest, new))
    if isinstance(t, Pair):
        if i == 0:
            return Pair(_replace(t.left, rest, new), t.right)
        return Pair(t.left, _replace(t.right, rest, new))
    raise ValueError("path leaves the term")


def step(s: Superposition, gates: GateRegistry | None = None,
         strategy: str = "outermost") -> Superposition | None:
    """Contract one redex in parallel across all branches, or None at normal form."""
    gates = gates if gates is not None else builtins()
    keys = s.keys()
    if not keys:
        return None
    found = find_redex(keys[0].term, gates, strategy)
    if found is None:
        return None
    path, kind = found
    entries: list[tuple[RawTerm, complex]] = []
    for key, amp in s.items():
        term = key.term
        redex = _subterm(term, path)
        assert isinstance(redex, App)
        if kind == "beta":
            lam = redex.fun
            assert isinstance(lam, Lam)
            bindings: dict[str, RawTerm] = {}
            _match(lam.pattern, redex.arg, bindings)
            entries.append((_replace(term, path, subst(lam.body, bindings)), amp))
        else:
            assert isinstance(redex.fun, Gate)
            g = gates[redex.fun.name]
            bits = literal_bits(redex.arg)
            assert bits is not None
            for out_key, out_amp in apply_gate(g, bits).amplitudes.items():
                entries.append((_replace(term, path, out_key.term), amp * out_amp))
    return Superposition(entries)


def _as_superposition(s) -> Superposition:
    return s if isinstance(s, Superposition) else linearize(s)


def evaluate(s, fuel: int = DEFAULT_FUEL, gates: GateRegistry | None = None,
             strategy: str = "outermost") -> Superposition:
    """Step to normal form, raising FuelExhausted after `fuel` steps."""
    gates = gates if gates is not None else builtins()
    current = _as_superposition(s)
    for _ in range(fuel):
        nxt = step(current, gates, strategy)
        if nxt is None:
            return current
        current = nxt
    if step(current, gates, strategy) is None:
        return current
    raise FuelExhausted(fuel)


def iter_states(s, fuel: int = DEFAULT_FUEL, gates: GateRegistry | None = None,
                strategy: str = "outermost"):
    """Yield the initial superposition and every intermediate state in order."""
    gates = gates if gates is not None else builtins()
    current = _as_superposition(s)
    yield current
    for _ in range(fuel):
        nxt = step(current, gates, strategy)
        if nxt is None:
            return
        current = nxt
        yield current
    if step(current, gates, strategy) is not None:
        raise FuelExhausted(fuel)


def eta_contract(t: RawTerm) -> RawTerm:
    """Contract \\x:A. f x to f wherever x is not free in f, bottom-up."""
    if isinstance(t, Lam):
        body = eta_contract(t.body)
        if (
            isinstance(t.pattern, PVar)
            and isinstance(body, App)
            and isinstance(body.arg, Var)
            and body.arg.name == t.pattern.name
            and t.pattern.name not in free_vars(body.fun)
        ):
            return body.fun
        return Lam(t.pattern, t.annot, body)
    if isinstance(t, App):
        return App(eta_contract(t.fun), eta_contract(t.arg))
    if isinstance(t, Pair):
        return Pair(eta_contract(t.left), eta_contract(t.right))
    return t


def equiv(t, u, gates: GateRegistry | None = None, fuel: int = DEFAULT_FUEL,
          tol: float = 1e-9) -> bool:
    """Evaluate both sides, eta-contract branchwise, and compare strictly."""
    from .superpose import super_eq

    gates = gates if gates is not None else builtins()
    s1 = evaluate(t, fuel, gates).map_terms(eta_contract)
    s2 = evaluate(u, fuel, gates).map_terms(eta_contract)
    return super_eq(s1, s2, mode="strict", tol=tol)
