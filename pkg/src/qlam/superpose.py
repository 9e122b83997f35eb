"""Superpositions as canonical amplitude maps over basis terms.

A basis term is a term with no sums or scalings.  linearize() pushes
sums and scalings out of pairs, applications, and lambda bodies,
collects amplitudes per alpha-equivalence class, prunes amplitudes
below 1e-12, and requires every surviving branch to share one
skeleton (the term shape left after erasing qubit literals).
"""

from __future__ import annotations

from .syntax import (
    App,
    Gate,
    Hole,
    Lam,
    Pair,
    QubitLit,
    RawTerm,
    Scale,
    Sum,
    Var,
    nameless,
)

PRUNE_TOL = 1e-12
COMPARE_TOL = 1e-9


class CongruenceError(Exception):
    """Raised when the branches of a superposition have different skeletons."""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(
            f"branches are not congruent: {first} vs {second}"
        )


class BasisTerm:
    """A sum- and scale-free term, compared and hashed up to alpha-equivalence."""

    __slots__ = ("term", "key", "_skeleton")

    def __init__(self, term: RawTerm):
        _check_basis(term)
        self.term = term
        self.key = nameless(term)
        self._skeleton = None

    @property
    def sort_key(self) -> str:
        return repr(self.key)

    def skeleton(self) -> "Skeleton":
        if self._skeleton is None:
            self._skeleton = Skeleton(_erase_literals(self.term))
        return self._skeleton

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisTerm) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return str(self.term)

    def __repr__(self) -> str:
        return f"BasisTerm({self.term!s})"


def _check_basis(t: RawTerm) -> None:
    if isinstance(t, (Sum, Scale)):
        raise ValueError(f"not a basis term (contains a sum or scaling): {t}")
    if isinstance(t, Hole):
        raise ValueError("holes only appear in skeletons")
    if isinstance(t, Lam):
        _check_basis(t.body)
    elif isinstance(t, App):
        _check_basis(t.fun)
        _check_basis(t.arg)
    elif isinstance(t, Pair):
        _check_basis(t.left)
        _check_basis(t.right)


class Skeleton:
    """A basis term with every qubit literal replaced by a hole."""

    __slots__ = ("term", "key")

    def __init__(self, term: RawTerm):
        self.term = term
        self.key = nameless(term)

    def __eq__(self, other) -> bool:
        return isinstance(other, Skeleton) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return str(self.term)

    def __repr__(self) -> str:
        return f"Skeleton({self.term!s})"


def _erase_literals(t: RawTerm) -> RawTerm:
    if isinstance(t, QubitLit):
        return Hole()
    if isinstance(t, Lam):
        return Lam(t.pattern, t.annot, _erase_literals(t.body))
    if isinstance(t, App):
        return App(_erase_literals(t.fun), _erase_literals(t.arg))
    if isinstance(t, Pair):
        return Pair(_erase_literals(t.left), _erase_literals(t.right))
    return t


def skeleton_of(b: BasisTerm) -> Skeleton:
    """The branch shape shared by all members of a congruent superposition."""
    return b.skeleton()


class Superposition:
    """An amplitude map over congruent basis terms.

    Zero amplitudes (below PRUNE_TOL in magnitude) are dropped on
    construction; alpha-equivalent keys are merged; all surviving keys
    must share a skeleton or CongruenceError is raised.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, entries=()):
        merged: dict[BasisTerm, complex] = {}
        if isinstance(entries, dict):
            entries = entries.items()
        for term, amp in entries:
            key = term if isinstance(term, BasisTerm) else BasisTerm(term)
            merged[key] = merged.get(key, 0j) + complex(amp)
        pruned = {k: a for k, a in merged.items() if abs(a) > PRUNE_TOL}
        keys = list(pruned)
        for other in keys[1:]:
            if other.skeleton() != keys[0].skeleton():
                raise CongruenceError(keys[0].skeleton(), other.skeleton())
        self.amplitudes = pruned

    @classmethod
    def unit(cls, term: RawTerm) -> "Superposition":
        return cls([(term, 1.0 + 0j)])

    def items(self):
        """Branches in canonical key order."""
        return sorted(self.amplitudes.items(), key=lambda kv: kv[0].sort_key)

    def keys(self):
        return [k for k, _ in self.items()]

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __bool__(self) -> bool:
        return bool(self.amplitudes)

    def __getitem__(self, term) -> complex:
        key = term if isinstance(term, BasisTerm) else BasisTerm(term)
        return self.amplitudes.get(key, 0j)

    def scale(self, c: complex) -> "Superposition":
        return Superposition([(k, c * a) for k, a in self.amplitudes.items()])

    def __add__(self, other: "Superposition") -> "Superposition":
        entries = list(self.amplitudes.items()) + list(other.amplitudes.items())
        return Superposition(entries)

    def map_terms(self, f) -> "Superposition":
        """Apply f to every branch term and re-canonicalize."""
        return Superposition(
            [(f(k.term), a) for k, a in self.amplitudes.items()]
        )

    def skeleton(self) -> Skeleton | None:
        for k in self.amplitudes:
            return k.skeleton()
        return None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Superposition) and self.amplitudes == other.amplitudes
        )

    def __hash__(self):
        raise TypeError("superpositions are not hashable")

    def __str__(self) -> str:
        if not self.amplitudes:
            return "0"
        from .printer import format_scalar

        parts = [f"({format_scalar(a)}) * {_atomish(k.term)}" for k, a in self.items()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Superposition({self!s})"


def _atomish(t: RawTerm) -> str:
    from .printer import pretty

    s = pretty(t)
    if isinstance(t, (Var, QubitLit, Gate)):
        return s
    return f"({s})"


def linearize(t: RawTerm) -> Superposition:
    """Rewrite a term to its canonical superposition of basis terms.

    Scalings multiply through, sums flatten, pairs and applications
    distribute over branches on both sides, and sums inside a lambda
    body are pulled out of the binder.
    """
    return Superposition(_lin(t))


def _lin(t: RawTerm) -> list[tuple[RawTerm, complex]]:
    if isinstance(t, Sum):
        return _lin(t.left) + _lin(t.right)
    if isinstance(t, Scale):
        c = complex(t.coeff)
        return [(u, c * a) for u, a in _lin(t.body)]
    if isinstance(t, Pair):
        return [
            (Pair(l, r), al * ar) for l, al in _lin(t.left) for r, ar in _lin(t.right)
        ]
    if isinstance(t, App):
        return [
            (App(f, x), af * ax) for f, af in _lin(t.fun) for x, ax in _lin(t.arg)
        ]
    if isinstance(t, Lam):
        return [(Lam(t.pattern, t.annot, b), a) for b, a in _lin(t.body)]
    return [(t, 1.0 + 0j)]


def norm2(s: Superposition) -> float:
    """The squared two-norm of the amplitude vector."""
    return sum(abs(a) ** 2 for a in s.amplitudes.values())


def super_eq(s1: Superposition, s2: Superposition, mode: str = "strict",
             tol: float = COMPARE_TOL) -> bool:
    """Compare two superpositions entrywise, exactly or up to a global phase."""
    if mode not in ("strict", "phase"):
        raise ValueError(f"mode must be 'strict' or 'phase', got {mode!r}")
    keys = sorted(
        set(s1.amplitudes) | set(s2.amplitudes), key=lambda k: k.sort_key
    )
    phase = 1.0 + 0j
    if mode == "phase":
        for k in keys:
            a1, a2 = s1[k], s2[k]
            if abs(a2) > tol:
                phase = a1 / a2
                break
            if abs(a1) > tol:
                return False
        if abs(abs(phase) - 1.0) > tol:
            return False
    return all(abs(s1[k] - phase * s2[k]) <= tol for k in keys)


def embed(s: Superposition) -> RawTerm:
    """Rebuild a term (sum of scaled branches, canonical order) from a superposition.

    The empty superposition embeds as the zero vector (0) * |0>.
    """
    items = s.items()
    if not items:
        return Scale(0j, QubitLit(0))
    parts = [
        k.term if a == 1 else Scale(a, k.term) for k, a in items
    ]
    out = parts[0]
    for p in parts[1:]:
        out = Sum(out, p)
    return out


def to_json_obj(s: Superposition) -> list[dict]:
    """The documented JSON shape: a list of {term, re, im} in canonical order."""
    from .printer import pretty

    return [
        {"term": pretty(k.term), "re": a.real, "im": a.imag}
        for k, a in s.items()
    ]


def from_json_obj(obj) -> Superposition:
    """Rebuild a superposition from the documented JSON shape."""
    from .parser import parse

    entries = []
    for row in obj:
        entries.append((parse(row["term"]), complex(row["re"], row["im"])))
    return Superposition(entries)
