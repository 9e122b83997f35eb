"""Pretty-printer for terms, types, and patterns.

Emits the same concrete syntax the parser accepts, with the minimum
parenthesization the precedence table allows, so that
parse(pretty(t)) is alpha-equivalent (in fact equal) to t.
"""

from __future__ import annotations

from .syntax import (
    App,
    Gate,
    Hole,
    Lam,
    LolliType,
    Pair,
    Pattern,
    PPair,
    PVar,
    QbitType,
    QubitLit,
    RawTerm,
    Scale,
    Sum,
    TensorType,
    TypeExpr,
    Var,
)

# Term precedence levels, loosest first.
_LAM, _SUM, _SCALE, _TENSOR, _APP, _ATOM = range(6)


def format_scalar(c: complex) -> str:
    """Render a coefficient so that the parser reads back the same complex."""
    c = complex(c)
    re, im = c.real, c.imag
    if im == 0:
        return repr(re)
    if re == 0:
        return repr(im) + "i"
    if im < 0:
        return f"{re!r}-{-im!r}i"
    return f"{re!r}+{im!r}i"


def pretty(t: RawTerm) -> str:
    """Concrete syntax for a term."""
    return _term(t, _LAM)


def _term(t: RawTerm, level: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, QubitLit):
        return f"|{t.bit}>"
    if isinstance(t, Gate):
        return f"#{t.name}"
    if isinstance(t, Hole):
        return "_"
    if isinstance(t, Lam):
        s = f"\\{pretty_pattern(t.pattern)}:{pretty_type(t.annot)}. {_term(t.body, _LAM)}"
        return _wrap(s, level > _LAM)
    if isinstance(t, Sum):
        s = f"{_term(t.left, _SUM)} + {_term(t.right, _SCALE)}"
        return _wrap(s, level > _SUM)
    if isinstance(t, Scale):
        s = f"({format_scalar(t.coeff)}) * {_term(t.body, _SCALE)}"
        return _wrap(s, level > _SCALE)
    if isinstance(t, Pair):
        s = f"{_term(t.left, _TENSOR)} (x) {_term(t.right, _APP)}"
        return _wrap(s, level > _TENSOR)
    if isinstance(t, App):
        s = f"{_term(t.fun, _APP)} {_term(t.arg, _ATOM)}"
        return _wrap(s, level > _APP)
    raise ValueError(f"unknown term node: {t!r}")


def _wrap(s: str, yes: bool) -> str:
    return f"({s})" if yes else s


def pretty_type(ty: TypeExpr) -> str:
    """Concrete syntax for a type."""
    if isinstance(ty, QbitType):
        return "Qbit"
    if isinstance(ty, TensorType):
        left = pretty_type(ty.left)
        if isinstance(ty.left, (TensorType, LolliType)):
            left = f"({left})"
        right = pretty_type(ty.right)
        if isinstance(ty.right, LolliType):
            right = f"({right})"
        return f"{left} (x) {right}"
    if isinstance(ty, LolliType):
        dom = pretty_type(ty.domain)
        if isinstance(ty.domain, LolliType):
            dom = f"({dom})"
        return f"{dom} -o {pretty_type(ty.codomain)}"
    raise ValueError(f"unknown type node: {ty!r}")


def pretty_pattern(p: Pattern) -> str:
    """Concrete syntax for a binding pattern."""
    if isinstance(p, PVar):
        return p.name
    assert isinstance(p, PPair)
    right = pretty_pattern(p.right)
    if isinstance(p.right, PPair):
        right = f"({right})"
    return f"{pretty_pattern(p.left)} (x) {right}"
