"""Tokenizer and recursive-descent parser for the surface syntax.

The grammar is documented in GRAMMAR.md.  Application, tensor pairing
and sums associate to the left; the tensor symbol is the literal token
`(x)`, so a variable named x can only be parenthesized as `( x )`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .syntax import (
    App,
    Gate,
    Lam,
    LolliType,
    Pair,
    Pattern,
    PPair,
    PVar,
    QBIT,
    QubitLit,
    RawTerm,
    Scale,
    Sum,
    TensorType,
    TypeExpr,
    Var,
)


class ParseError(Exception):
    """Raised on malformed input, with position and the tokens expected there."""

    def __init__(self, line: int, col: int, expected: set[str], found: str):
        self.line = line
        self.col = col
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(self.expected))
        super().__init__(f"{line}:{col}: expected {wanted}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_IDENT_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_']*")
_NUMBER_RE = re.compile(r"\d+(\.\d+)?([eE][+-]?\d+)?")
_IDENT_CHARS = re.compile(r"[a-zA-Z0-9_']")

RESERVED = {"let", "in"}


def tokenize(text: str) -> list[Token]:
    """Split source text into tokens; `--` starts a comment to end of line."""
    toks: list[Token] = []
    i, line, col = 0, 1, 1

    def err(expected: set[str]) -> ParseError:
        found = text[i] if i < len(text) else "end of input"
        return ParseError(line, col, expected, repr(found))

    while i < len(text):
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if text.startswith("(x)", i):
            toks.append(Token("TENSOR", "(x)", start_line, start_col))
            i += 3
            col += 3
            continue
        if text.startswith("-o", i) and not _IDENT_CHARS.match(text, i + 2):
            toks.append(Token("LOLLI", "-o", start_line, start_col))
            i += 2
            col += 2
            continue
        if c == "|":
            if text.startswith("|0>", i) or text.startswith("|1>", i):
                toks.append(Token("KET", text[i + 1], start_line, start_col))
                i += 3
                col += 3
                continue
            raise err({"|0>", "|1>"})
        if c == "#":
            m = _IDENT_RE.match(text, i + 1)
            if not m:
                raise err({"gate name after #"})
            toks.append(Token("GATE", m.group(), start_line, start_col))
            length = 1 + len(m.group())
            i += length
            col += length
            continue
        if c.isdigit():
            m = _NUMBER_RE.match(text, i)
            toks.append(Token("NUMBER", m.group(), start_line, start_col))
            i += len(m.group())
            col += len(m.group())
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            toks.append(Token("IDENT", m.group(), start_line, start_col))
            i += len(m.group())
            col += len(m.group())
            continue
        simple = {
            "\\": "LAMBDA",
            ".": "DOT",
            ":": "COLON",
            "=": "EQUALS",
            "(": "LPAREN",
            ")": "RPAREN",
            "*": "STAR",
            "+": "PLUS",
            "-": "MINUS",
            "/": "SLASH",
        }
        if c in simple:
            toks.append(Token(simple[c], c, start_line, start_col))
            i += 1
            col += 1
            continue
        raise err({"a token"})
    toks.append(Token("EOF", "end of input", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, what: str) -> Token:
        if not self.at(kind):
            raise self.error({what})
        return self.next()

    def error(self, expected: set[str]) -> ParseError:
        tok = self.peek()
        return ParseError(tok.line, tok.col, expected, repr(tok.text))

    # -- terms -------------------------------------------------------------

    def term(self) -> RawTerm:
        if self.at("LAMBDA"):
            return self.lam()
        if self.at("IDENT", "let"):
            return self.let()
        return self.sum()

    def lam(self) -> RawTerm:
        tok = self.expect("LAMBDA", "\\")
        pat = self.pattern()
        self.expect("COLON", ":")
        ty = self.type()
        self.expect("DOT", ".")
        body = self.term()
        return Lam(pat, ty, body, loc=(tok.line, tok.col))

    def let(self) -> RawTerm:
        tok = self.next()
        pat = self.pattern()
        self.expect("COLON", ":")
        ty = self.type()
        self.expect("EQUALS", "=")
        bound = self.term()
        if not self.at("IDENT", "in"):
            raise self.error({"in"})
        self.next()
        body = self.term()
        loc = (tok.line, tok.col)
        return App(Lam(pat, ty, body, loc=loc), bound, loc=loc)

    def sum(self) -> RawTerm:
        t = self.scaled()
        while self.at("PLUS"):
            tok = self.next()
            t = Sum(t, self.scaled(), loc=(tok.line, tok.col))
        return t

    def scaled(self) -> RawTerm:
        if self.at("LPAREN"):
            save = self.pos
            tok = self.next()
            coeff = self.try_scalar()
            if coeff is not None and self.at("RPAREN"):
                self.next()
                if self.at("STAR"):
                    self.next()
                    return Scale(coeff, self.scaled(), loc=(tok.line, tok.col))
            self.pos = save
        return self.tensor()

    def tensor(self) -> RawTerm:
        t = self.app()
        while self.at("TENSOR"):
            tok = self.next()
            t = Pair(t, self.app(), loc=(tok.line, tok.col))
        return t

    def app(self) -> RawTerm:
        t = self.atom()
        while self.at_atom():
            arg = self.atom()
            t = App(t, arg, loc=t.loc)
        return t

    def at_atom(self) -> bool:
        tok = self.peek()
        if tok.kind in ("KET", "GATE", "LPAREN"):
            return True
        return tok.kind == "IDENT" and tok.text not in RESERVED

    def atom(self) -> RawTerm:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text not in RESERVED:
            self.next()
            return Var(tok.text, loc=(tok.line, tok.col))
        if tok.kind == "KET":
            self.next()
            return QubitLit(int(tok.text), loc=(tok.line, tok.col))
        if tok.kind == "GATE":
            self.next()
            return Gate(tok.text, loc=(tok.line, tok.col))
        if tok.kind == "LPAREN":
            self.next()
            t = self.term()
            self.expect("RPAREN", ")")
            return t
        raise self.error({"a term"})

    # -- scalars -----------------------------------------------------------

    def try_scalar(self) -> complex | None:
        """Parse a scalar literal, or return None leaving the position unchanged."""
        save = self.pos
        sign = 1.0
        if self.at("MINUS"):
            self.next()
            sign = -1.0
        if not self.at("NUMBER"):
            self.pos = save
            return None
        first = self.next()
        if self.at("SLASH"):
            # only the written forms 1/sqrt(f) and -1/sqrt(f) are scalars
            if first.text != "1":
                self.pos = save
                return None
            self.next()
            if not self.at("IDENT", "sqrt"):
                self.pos = save
                return None
            self.next()
            if not self.at("LPAREN"):
                self.pos = save
                return None
            self.next()
            if not self.at("NUMBER"):
                self.pos = save
                return None
            radicand = float(self.next().text)
            if not self.at("RPAREN"):
                self.pos = save
                return None
            self.next()
            return complex(sign / math.sqrt(radicand))
        if self.at("IDENT", "i"):
            self.next()
            return complex(0.0, sign * float(first.text))
        if self.at("PLUS") or self.at("MINUS"):
            mark = self.pos
            imsign = 1.0 if self.next().kind == "PLUS" else -1.0
            if self.at("NUMBER"):
                num = self.next()
                if self.at("IDENT", "i"):
                    self.next()
                    return complex(sign * float(first.text), imsign * float(num.text))
            self.pos = mark
        return complex(sign * float(first.text))

    # -- patterns ----------------------------------------------------------

    def pattern(self) -> Pattern:
        p = self.pattern_atom()
        while self.at("TENSOR"):
            self.next()
            p = PPair(p, self.pattern_atom())
        return p

    def pattern_atom(self) -> Pattern:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text not in RESERVED:
            self.next()
            return PVar(tok.text)
        if tok.kind == "LPAREN":
            self.next()
            p = self.pattern()
            self.expect("RPAREN", ")")
            return p
        raise self.error({"a pattern"})

    # -- types -------------------------------------------------------------

    def type(self) -> TypeExpr:
        ty = self.type_tensor()
        if self.at("LOLLI"):
            self.next()
            return LolliType(ty, self.type())
        return ty

    def type_tensor(self) -> TypeExpr:
        ty = self.type_atom()
        if self.at("TENSOR"):
            self.next()
            return TensorType(ty, self.type_tensor())
        return ty

    def type_atom(self) -> TypeExpr:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in ("Qbit", "Q"):
            self.next()
            return QBIT
        if tok.kind == "LPAREN":
            self.next()
            ty = self.type()
            self.expect("RPAREN", ")")
            return ty
        raise self.error({"Qbit", "("})


def parse(text: str) -> RawTerm:
    """Parse a complete term."""
    p = _Parser(tokenize(text))
    t = p.term()
    if not p.at("EOF"):
        raise p.error({"end of input"})
    return t


def parse_type(text: str) -> TypeExpr:
    """Parse a complete type expression."""
    p = _Parser(tokenize(text))
    ty = p.type()
    if not p.at("EOF"):
        raise p.error({"end of input"})
    return ty
