"""Abstract syntax for the linear qubit calculus.

Types are Qbit, tensor products, and linear functions.  Terms are a
lambda calculus with tensor pairs, qubit literals, named gate
constants, and formal sums/scalings used to write superpositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# types

class TypeExpr:
    """Base class for type expressions."""

    def __str__(self) -> str:
        from .printer import pretty_type

        return pretty_type(self)


@dataclass(frozen=True)
class QbitType(TypeExpr):
    pass


@dataclass(frozen=True)
class LolliType(TypeExpr):
    domain: TypeExpr
    codomain: TypeExpr


@dataclass(frozen=True)
class TensorType(TypeExpr):
    left: TypeExpr
    right: TypeExpr


QBIT = QbitType()


def qbits(n: int) -> TypeExpr:
    """The n-fold qubit tuple type, nested to the right."""
    if n < 1:
        raise ValueError("qubit tuple types need at least one factor")
    ty: TypeExpr = QBIT
    for _ in range(n - 1):
        ty = TensorType(QBIT, ty)
    return ty


def qbit_width(ty: TypeExpr) -> int | None:
    """Return n when ty is the right-nested n-qubit tuple type, else None."""
    n = 0
    while isinstance(ty, TensorType):
        if not isinstance(ty.left, QbitType):
            return None
        n += 1
        ty = ty.right
    return n + 1 if isinstance(ty, QbitType) else None


# ---------------------------------------------------------------------------
# patterns

class Pattern:
    """Base class for binding patterns in lambdas."""

    def __str__(self) -> str:
        from .printer import pretty_pattern

        return pretty_pattern(self)


@dataclass(frozen=True)
class PVar(Pattern):
    name: str


@dataclass(frozen=True)
class PPair(Pattern):
    left: Pattern
    right: Pattern


def pattern_names(p: Pattern) -> list[str]:
    """Variable names bound by a pattern, left to right."""
    if isinstance(p, PVar):
        return [p.name]
    assert isinstance(p, PPair)
    return pattern_names(p.left) + pattern_names(p.right)


# ---------------------------------------------------------------------------
# terms

class RawTerm:
    """Base class for term expressions."""

    def __str__(self) -> str:
        from .printer import pretty

        return pretty(self)


@dataclass(frozen=True)
class Var(RawTerm):
    name: str
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lam(RawTerm):
    pattern: Pattern
    annot: TypeExpr
    body: RawTerm
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class App(RawTerm):
    fun: RawTerm
    arg: RawTerm
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pair(RawTerm):
    left: RawTerm
    right: RawTerm
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class QubitLit(RawTerm):
    bit: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError(f"qubit literal must be 0 or 1, got {self.bit}")


@dataclass(frozen=True)
class Gate(RawTerm):
    name: str
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sum(RawTerm):
    left: RawTerm
    right: RawTerm
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Scale(RawTerm):
    coeff: complex
    body: RawTerm
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Hole(RawTerm):
    """Placeholder left where a qubit literal was erased; used in skeletons only."""

    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------------------
# free variables

def free_vars(t: RawTerm) -> set[str]:
    """The set of free variable names of a term."""
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return free_vars(t.body) - set(pattern_names(t.pattern))
    if isinstance(t, (App, Sum)):
        a, b = _children(t)
        return free_vars(a) | free_vars(b)
    if isinstance(t, Pair):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, Scale):
        return free_vars(t.body)
    return set()


def all_var_names(t: RawTerm) -> set[str]:
    """Every variable name occurring in a term, bound or free."""
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return all_var_names(t.body) | set(pattern_names(t.pattern))
    if isinstance(t, (App, Sum)):
        a, b = _children(t)
        return all_var_names(a) | all_var_names(b)
    if isinstance(t, Pair):
        return all_var_names(t.left) | all_var_names(t.right)
    if isinstance(t, Scale):
        return all_var_names(t.body)
    return set()


def _children(t: RawTerm) -> tuple[RawTerm, RawTerm]:
    if isinstance(t, App):
        return t.fun, t.arg
    if isinstance(t, (Pair, Sum)):
        return t.left, t.right
    raise ValueError(f"not a binary node: {t!r}")


# ---------------------------------------------------------------------------
# alpha equivalence

def type_key(ty: TypeExpr) -> tuple:
    """Hashable structural encoding of a type."""
    if isinstance(ty, QbitType):
        return ("Q",)
    if isinstance(ty, LolliType):
        return ("lolli", type_key(ty.domain), type_key(ty.codomain))
    assert isinstance(ty, TensorType)
    return ("tensor", type_key(ty.left), type_key(ty.right))


def _pattern_shape(p: Pattern) -> tuple:
    if isinstance(p, PVar):
        return ("pv",)
    assert isinstance(p, PPair)
    return ("pp", _pattern_shape(p.left), _pattern_shape(p.right))


def nameless(t: RawTerm, erase_literals: bool = False) -> tuple:
    """Encode a term with de-Bruijn-numbered binders.

    Two terms are alpha-equivalent iff their encodings are equal.  With
    erase_literals=True qubit literals all encode to the same hole marker,
    which yields the skeleton key.
    """

    def go(t: RawTerm, env: dict[str, tuple[int, int]], depth: int) -> tuple:
        if isinstance(t, Var):
            hit = env.get(t.name)
            if hit is None:
                return ("fv", t.name)
            lam_depth, pos = hit
            return ("bv", depth - lam_depth, pos)
        if isinstance(t, Lam):
            names = pattern_names(t.pattern)
            inner = dict(env)
            for pos, name in enumerate(names):
                inner[name] = (depth + 1, pos)
            return (
                "lam",
                _pattern_shape(t.pattern),
                type_key(t.annot),
                go(t.body, inner, depth + 1),
            )
        if isinstance(t, App):
            return ("app", go(t.fun, env, depth), go(t.arg, env, depth))
        if isinstance(t, Pair):
            return ("pair", go(t.left, env, depth), go(t.right, env, depth))
        if isinstance(t, Sum):
            return ("sum", go(t.left, env, depth), go(t.right, env, depth))
        if isinstance(t, Scale):
            c = complex(t.coeff)
            return ("scale", c.real, c.imag, go(t.body, env, depth))
        if isinstance(t, QubitLit):
            return ("hole",) if erase_literals else ("lit", t.bit)
        if isinstance(t, Gate):
            return ("gate", t.name)
        assert isinstance(t, Hole)
        return ("hole",)

    return go(t, {}, 0)


def alpha_eq(t: RawTerm, u: RawTerm) -> bool:
    """True iff the terms differ at most in the names of bound variables."""
    return nameless(t) == nameless(u)


# ---------------------------------------------------------------------------
# substitution

def fresh_name(base: str, taken: set[str]) -> str:
    """A name not in `taken`, formed by priming `base`."""
    name = base
    while name in taken:
        name += "'"
    return name


def _rename_pattern(p: Pattern, mapping: dict[str, str]) -> Pattern:
    if isinstance(p, PVar):
        return PVar(mapping.get(p.name, p.name))
    assert isinstance(p, PPair)
    return PPair(_rename_pattern(p.left, mapping), _rename_pattern(p.right, mapping))


def subst(t: RawTerm, bindings: dict[str, RawTerm]) -> RawTerm:
    """Simultaneously substitute terms for free variables, avoiding capture.

    Binders whose names would capture a free variable of a substituted
    term are renamed by appending primes.
    """
    if not bindings:
        return t
    if isinstance(t, Var):
        return bindings.get(t.name, t)
    if isinstance(t, Lam):
        bound = pattern_names(t.pattern)
        live = {x: u for x, u in bindings.items() if x not in bound}
        relevant = {x for x in live if x in free_vars(t.body)}
        live = {x: live[x] for x in relevant}
        if not live:
            return t
        # Rename any binder that would capture a free variable of an image.
        danger = set()
        for u in live.values():
            danger |= free_vars(u)
        taken = danger | free_vars(t.body) | set(live) | set(bound)
        renames: dict[str, str] = {}
        for name in bound:
            if name in danger:
                new = fresh_name(name, taken)
                renames[name] = new
                taken.add(new)
        body = t.body
        if renames:
            body = subst(body, {old: Var(new) for old, new in renames.items()})
        pattern = _rename_pattern(t.pattern, renames)
        return Lam(pattern, t.annot, subst(body, live))
    if isinstance(t, App):
        return App(subst(t.fun, bindings), subst(t.arg, bindings))
    if isinstance(t, Pair):
        return Pair(subst(t.left, bindings), subst(t.right, bindings))
    if isinstance(t, Sum):
        return Sum(subst(t.left, bindings), subst(t.right, bindings))
    if isinstance(t, Scale):
        return Scale(t.coeff, subst(t.body, bindings))
    return t
