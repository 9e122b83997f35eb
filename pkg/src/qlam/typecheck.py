"""Algorithmic linear type checking over superpositions.

Every branch of a superposition is checked against the same context
with a consumed-variable discipline: each context variable must be
used exactly once per branch, and all branches must agree on the
type.  Closed superpositions must have squared norm 1.
"""

from __future__ import annotations

from .gates import GateRegistry, builtins
from .superpose import CongruenceError, Superposition, linearize, norm2
from .syntax import (
    App,
    Gate,
    Lam,
    LolliType,
    Pair,
    Pattern,
    PPair,
    PVar,
    QubitLit,
    RawTerm,
    TypeExpr,
    Var,
    qbit_width,
    qbits,
)

NORM_TOL = 1e-9


class TypeCheckError(Exception):
    """Base class for typing failures; `code` names the failure kind."""

    code = "TypeError"

    def __init__(self, detail: str, where: str | None = None):
        self.detail = detail
        self.where = where
        msg = f"{self.code}: {detail}"
        if where:
            msg += f" (in {where})"
        super().__init__(msg)


class UnboundVar(TypeCheckError):
    code = "UnboundVar"

    def __init__(self, name: str, where: str | None = None):
        self.name = name
        super().__init__(f"variable {name} is not in scope", where)


class DuplicateUse(TypeCheckError):
    code = "DuplicateUse"

    def __init__(self, name: str, where: str | None = None):
        self.name = name
        super().__init__(f"variable {name} is used more than once", where)


class UnusedVar(TypeCheckError):
    code = "UnusedVar"

    def __init__(self, name: str, where: str | None = None):
        self.name = name
        super().__init__(f"variable {name} is never used", where)


class TypeMismatch(TypeCheckError):
    code = "Mismatch"

    def __init__(self, expected, found, where: str | None = None):
        self.expected = expected
        self.found = found
        super().__init__(f"expected {expected}, found {found}", where)


class NonCongruent(TypeCheckError):
    code = "NonCongruent"

    def __init__(self, detail: str):
        super().__init__(detail)


class NonNormalized(TypeCheckError):
    code = "NonNormalized"

    def __init__(self, norm2_value: float):
        self.norm2 = norm2_value
        super().__init__(
            f"closed superposition has squared norm {norm2_value:.12g}, expected 1"
        )


class NotAFunction(TypeCheckError):
    code = "NotAFunction"

    def __init__(self, found, where: str | None = None):
        self.found = found
        super().__init__(f"cannot apply a term of type {found}", where)


class GateArity(TypeCheckError):
    code = "GateArity"

    def __init__(self, name: str, expected: int, found: int, where: str | None = None):
        self.name = name
        self.expected = expected
        self.found = found
        super().__init__(
            f"gate #{name} acts on {expected} qubit(s), argument has {found}", where
        )


class Context:
    """An ordered typing context with distinct variable names."""

    def __init__(self, bindings=()):
        items = []
        seen = set()
        for name, ty in bindings:
            if name in seen:
                raise ValueError(f"duplicate context variable {name}")
            seen.add(name)
            items.append((name, ty))
        self.bindings = tuple(items)

    def names(self) -> set[str]:
        return {name for name, _ in self.bindings}

    def types(self) -> dict[str, TypeExpr]:
        return dict(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __iter__(self):
        return iter(self.bindings)

    def __str__(self) -> str:
        return ", ".join(f"{n}:{t}" for n, t in self.bindings)


def _as_context(ctx) -> Context:
    return ctx if isinstance(ctx, Context) else Context(ctx)


def _as_superposition(s) -> Superposition:
    if isinstance(s, Superposition):
        return s
    try:
        return linearize(s)
    except CongruenceError as e:
        raise NonCongruent(str(e)) from e


def _where(t: RawTerm) -> str:
    text = str(t)
    if len(text) > 60:
        text = text[:57] + "..."
    loc = getattr(t, "loc", None)
    if loc:
        return f"{text} at {loc[0]}:{loc[1]}"
    return text


def _bind_pattern(p: Pattern, ty: TypeExpr, where: str) -> list[tuple[str, TypeExpr]]:
    """Match a binding pattern against its annotation, yielding typed names."""

    def go(p: Pattern, ty: TypeExpr) -> list[tuple[str, TypeExpr]]:
        if isinstance(p, PVar):
            return [(p.name, ty)]
        assert isinstance(p, PPair)
        from .syntax import TensorType

        if not isinstance(ty, TensorType):
            raise TypeMismatch(f"a tensor type for pattern {p}", ty, where)
        return go(p.left, ty.left) + go(p.right, ty.right)

    bound = go(p, ty)
    seen: set[str] = set()
    for name, _ in bound:
        if name in seen:
            raise DuplicateUse(name, where)
        seen.add(name)
    return bound


def _infer_basis(t: RawTerm, scope: dict[str, TypeExpr], ctx_names: set[str],
                 gates: GateRegistry) -> tuple[TypeExpr, set[str]]:
    """Infer the type of a sum-free term; returns (type, variables consumed)."""
    if isinstance(t, Var):
        ty = scope.get(t.name)
        if ty is None:
            raise UnboundVar(t.name, _where(t))
        return ty, {t.name}
    if isinstance(t, QubitLit):
        return qbits(1), set()
    if isinstance(t, Gate):
        g = gates.get(t.name)
        if g is None:
            raise UnboundVar(f"#{t.name}", _where(t))
        ty = qbits(g.arity)
        return LolliType(ty, ty), set()
    if isinstance(t, Lam):
        where = _where(t)
        bound = _bind_pattern(t.pattern, t.annot, where)
        inner = dict(scope)
        inner.update(bound)
        body_ty, used = _infer_basis(t.body, inner, ctx_names, gates)
        for name, _ in bound:
            if name not in used:
                raise UnusedVar(name, where)
        return LolliType(t.annot, body_ty), used - {name for name, _ in bound}
    if isinstance(t, App):
        fun_ty, fun_used = _infer_basis(t.fun, scope, ctx_names, gates)
        arg_ty, arg_used = _infer_basis(t.arg, scope, ctx_names, gates)
        clash = fun_used & arg_used
        if clash:
            raise DuplicateUse(sorted(clash)[0], _where(t))
        if not isinstance(fun_ty, LolliType):
            raise NotAFunction(fun_ty, _where(t))
        if arg_ty != fun_ty.domain:
            if isinstance(t.fun, Gate):
                expected_n = qbit_width(fun_ty.domain)
                found_n = qbit_width(arg_ty)
                if expected_n and found_n and expected_n != found_n:
                    raise GateArity(t.fun.name, expected_n, found_n, _where(t))
            raise TypeMismatch(fun_ty.domain, arg_ty, _where(t))
        return fun_ty.codomain, fun_used | arg_used
    if isinstance(t, Pair):
        left_ty, left_used = _infer_basis(t.left, scope, ctx_names, gates)
        right_ty, right_used = _infer_basis(t.right, scope, ctx_names, gates)
        clash = left_used & right_used
        if clash:
            raise DuplicateUse(sorted(clash)[0], _where(t))
        from .syntax import TensorType

        return TensorType(left_ty, right_ty), left_used | right_used
    raise TypeCheckError(f"cannot type {t!r}")


def infer(ctx, s, gates: GateRegistry | None = None) -> TypeExpr:
    """Infer the type of a superposition (or term, linearized first) in a context."""
    ctx = _as_context(ctx)
    s = _as_superposition(s)
    gates = gates if gates is not None else builtins()
    if not s:
        raise NonNormalized(0.0)
    scope = ctx.types()
    ctx_names = ctx.names()
    branch_ty: TypeExpr | None = None
    for key, _amp in s.items():
        term = key.term
        ty, used = _infer_basis(term, scope, ctx_names, gates)
        leftover = ctx_names - used
        if leftover:
            raise UnusedVar(sorted(leftover)[0], _where(term))
        if branch_ty is None:
            branch_ty = ty
        elif ty != branch_ty:
            raise NonCongruent(
                f"branches have different types: {branch_ty} vs {ty}"
            )
    if not ctx_names:
        total = norm2(s)
        if abs(total - 1.0) > NORM_TOL:
            raise NonNormalized(total)
    assert branch_ty is not None
    return branch_ty


def check(ctx, s, expected: TypeExpr, gates: GateRegistry | None = None) -> TypeExpr:
    """Check a superposition against an expected type."""
    found = infer(ctx, s, gates)
    if found != expected:
        raise TypeMismatch(expected, found)
    return found
