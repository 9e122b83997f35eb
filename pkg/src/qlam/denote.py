"""Finite-dimensional matrix semantics for well-typed superpositions.

Each type gets a carrier space: C^2 for Qbit, Kronecker products for
tensors, and the full linear-map space Lin(A, B) (dimension
dim A * dim B) for functions, flattened with the output index most
significant.  A judgment ctx |- s : A denotes a dst x src complex
matrix; closed terms denote columns.

Superpositions are interpreted by factoring out their qubit literals:
the branches of a congruent superposition differ only at literal
positions, so the whole family is the composition of (a) the column
vector of amplitudes over those literal slots with (b) the denotation
of the shared skeleton with fresh qubit variables at the slots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import GateRegistry, builtins
from .syntax import (
    App,
    Gate,
    Lam,
    LolliType,
    Pair,
    QBIT,
    QbitType,
    QubitLit,
    RawTerm,
    TensorType,
    TypeExpr,
    Var,
    all_var_names,
    free_vars,
    qbits,
)
from .typecheck import (
    TypeMismatch,
    _as_context,
    _as_superposition,
    _bind_pattern,
    infer,
)

DIM_CAP = 2**16


class EmptyBundle(Exception):
    """Raised when a judgment mentions a function type of rank zero."""

    def __init__(self, ty: TypeExpr):
        self.type = ty
        super().__init__(f"type {ty} has rank 0: nothing inhabits it")


class DimensionCapError(Exception):
    """Raised when a carrier space would exceed the dimension cap."""

    def __init__(self, dim: int, cap: int):
        self.dim = dim
        self.cap = cap
        super().__init__(f"carrier dimension {dim} exceeds the cap {cap}")


def rank_of(ty: TypeExpr) -> int:
    """Number of basis states the type's bundle carries.

    Qbit has rank 2, tensors multiply, and a function type holds
    floor(rank(B) / rank(A)) copies of its codomain per domain state;
    the floor is 0 when the domain outgrows the codomain.
    """
    if isinstance(ty, QbitType):
        return 2
    if isinstance(ty, TensorType):
        return rank_of(ty.left) * rank_of(ty.right)
    assert isinstance(ty, LolliType)
    dom = rank_of(ty.domain)
    if dom == 0:
        return 0
    return rank_of(ty.codomain) // dom


def carrier_dim(ty: TypeExpr) -> int:
    """Dimension of the ambient carrier space holding the type's states."""
    if isinstance(ty, QbitType):
        return 2
    if isinstance(ty, TensorType):
        return carrier_dim(ty.left) * carrier_dim(ty.right)
    assert isinstance(ty, LolliType)
    return carrier_dim(ty.domain) * carrier_dim(ty.codomain)


def _has_rank0(ty: TypeExpr) -> bool:
    if rank_of(ty) == 0:
        return True
    if isinstance(ty, TensorType):
        return _has_rank0(ty.left) or _has_rank0(ty.right)
    if isinstance(ty, LolliType):
        return _has_rank0(ty.domain) or _has_rank0(ty.codomain)
    return False


@dataclass
class SemMorphism:
    """A carrier-level linear map: matrix of shape (dst_dim, src_dim)."""

    src_dim: int
    dst_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        if self.matrix.shape != (self.dst_dim, self.src_dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"({self.dst_dim}, {self.src_dim})"
            )
        self.matrix.setflags(write=False)


def permutation_matrix(dims: list[int], perm: list[int]) -> np.ndarray:
    """Permutation of tensor factors as an explicit 0/1 matrix.

    dims are the factor dimensions in their current (big-endian) order;
    perm lists, for each new position, the old factor index.
    """
    total = 1
    for d in dims:
        total *= d
    if not dims:
        return np.eye(1)
    components = np.unravel_index(np.arange(total), tuple(dims))
    new_dims = tuple(dims[i] for i in perm)
    new_flat = np.ravel_multi_index(tuple(components[i] for i in perm), new_dims)
    matrix = np.zeros((total, total))
    matrix[new_flat, np.arange(total)] = 1.0
    return matrix


def curry_carrier(f: np.ndarray, dim_c: int, dim_a: int, dim_b: int) -> np.ndarray:
    """Reindex f : C (x) A -> B as the map C -> Lin(A, B).

    Pure index shuffling: curry(f)[b*dim_a + a, c] == f[b, c*dim_a + a].
    """
    f = np.asarray(f)
    if f.shape != (dim_b, dim_c * dim_a):
        raise ValueError(f"expected shape {(dim_b, dim_c * dim_a)}, got {f.shape}")
    return np.ascontiguousarray(
        f.reshape(dim_b, dim_c, dim_a).transpose(0, 2, 1).reshape(dim_b * dim_a, dim_c)
    )


def apply_carrier(dim_a: int, dim_b: int) -> np.ndarray:
    """The evaluation map Lin(A, B) (x) A -> B on carriers.

    Sends flatten(F) (x) a to F a; composing with curry is the identity.
    """
    rows = dim_b
    cols = dim_a * dim_b * dim_a
    matrix = np.zeros((rows, cols))
    for out in range(dim_b):
        for inn in range(dim_a):
            matrix[out, (out * dim_a + inn) * dim_a + inn] = 1.0
    return matrix


def _flatten_map(u: np.ndarray) -> np.ndarray:
    """Column vector of a matrix under the output-major flattening."""
    return np.asarray(u, dtype=np.complex128).reshape(-1, 1)


class _Denoter:
    def __init__(self, gates: GateRegistry, cap: int):
        self.gates = gates
        self.cap = cap

    def guard(self, dim: int) -> int:
        if dim > self.cap:
            raise DimensionCapError(dim, self.cap)
        return dim

    def ctx_dim(self, ctx: list[tuple[str, TypeExpr]]) -> int:
        dim = 1
        for _, ty in ctx:
            dim *= carrier_dim(ty)
        return self.guard(dim)

    def basis(self, ctx: list[tuple[str, TypeExpr]], t: RawTerm) -> tuple[TypeExpr, np.ndarray]:
        """Denote a sum-free term under an ordered context of exactly its free variables."""
        if isinstance(t, Var):
            assert len(ctx) == 1 and ctx[0][0] == t.name, "context must match the variable"
            ty = ctx[0][1]
            return ty, np.eye(carrier_dim(ty), dtype=np.complex128)
        if isinstance(t, QubitLit):
            assert not ctx
            col = np.zeros((2, 1), dtype=np.complex128)
            col[t.bit, 0] = 1.0
            return QBIT, col
        if isinstance(t, Gate):
            assert not ctx
            g = self.gates[t.name]
            ty = qbits(g.arity)
            self.guard(carrier_dim(ty) ** 2)
            return LolliType(ty, ty), _flatten_map(g.matrix)
        if isinstance(t, Pair):
            (left_ty, left_m), (right_ty, right_m), perm = self.split(ctx, t.left, t.right)
            self.guard(left_m.shape[0] * right_m.shape[0])
            matrix = np.kron(left_m, right_m) @ perm
            return TensorType(left_ty, right_ty), matrix
        if isinstance(t, App):
            (fun_ty, fun_m), (arg_ty, arg_m), perm = self.split(ctx, t.fun, t.arg)
            assert isinstance(fun_ty, LolliType), "type checking precedes denotation"
            dim_a = carrier_dim(fun_ty.domain)
            dim_b = carrier_dim(fun_ty.codomain)
            self.guard(dim_b)
            # The evaluation map contracted in place: equivalent to
            # apply_carrier(dim_a, dim_b) @ kron(fun_m, arg_m) without
            # materializing either factor.
            fun_cube = fun_m.reshape(dim_b, dim_a, fun_m.shape[1])
            matrix = np.einsum("bif,ia->bfa", fun_cube, arg_m).reshape(
                dim_b, fun_m.shape[1] * arg_m.shape[1]
            )
            return fun_ty.codomain, matrix @ perm
        if isinstance(t, Lam):
            bound = _bind_pattern(t.pattern, t.annot, str(t))
            inner = list(ctx) + bound
            body_ty, body_m = self.basis(inner, t.body)
            dim_c = self.ctx_dim(ctx)
            dim_a = carrier_dim(t.annot)
            dim_b = carrier_dim(body_ty)
            self.guard(dim_a * dim_b)
            matrix = curry_carrier(body_m, dim_c, dim_a, dim_b)
            return LolliType(t.annot, body_ty), matrix
        raise ValueError(f"cannot denote {t!r}")

    def split(self, ctx, left: RawTerm, right: RawTerm):
        """Route context variables to the subterms that use them, with the
        explicit permutation realizing the reordering."""
        left_free = free_vars(left)
        left_idx = [i for i, (n, _) in enumerate(ctx) if n in left_free]
        right_idx = [i for i, (n, _) in enumerate(ctx) if n not in left_free]
        left_ctx = [ctx[i] for i in left_idx]
        right_ctx = [ctx[i] for i in right_idx]
        dims = [carrier_dim(ty) for _, ty in ctx]
        perm = permutation_matrix(dims, left_idx + right_idx)
        return (
            self.basis(left_ctx, left),
            self.basis(right_ctx, right),
            perm,
        )


def _count_literals(t: RawTerm) -> int:
    if isinstance(t, QubitLit):
        return 1
    if isinstance(t, Lam):
        return _count_literals(t.body)
    if isinstance(t, App):
        return _count_literals(t.fun) + _count_literals(t.arg)
    if isinstance(t, Pair):
        return _count_literals(t.left) + _count_literals(t.right)
    return 0


def _literal_bits_preorder(t: RawTerm, out: list[int]) -> None:
    if isinstance(t, QubitLit):
        out.append(t.bit)
    elif isinstance(t, Lam):
        _literal_bits_preorder(t.body, out)
    elif isinstance(t, App):
        _literal_bits_preorder(t.fun, out)
        _literal_bits_preorder(t.arg, out)
    elif isinstance(t, Pair):
        _literal_bits_preorder(t.left, out)
        _literal_bits_preorder(t.right, out)


def _replace_literals(t: RawTerm, names: list[str], pos: list[int]) -> RawTerm:
    if isinstance(t, QubitLit):
        name = names[pos[0]]
        pos[0] += 1
        return Var(name)
    if isinstance(t, Lam):
        return Lam(t.pattern, t.annot, _replace_literals(t.body, names, pos))
    if isinstance(t, App):
        return App(
            _replace_literals(t.fun, names, pos),
            _replace_literals(t.arg, names, pos),
        )
    if isinstance(t, Pair):
        return Pair(
            _replace_literals(t.left, names, pos),
            _replace_literals(t.right, names, pos),
        )
    return t


def _collect_annots(t: RawTerm, out: list[TypeExpr]) -> None:
    if isinstance(t, Lam):
        out.append(t.annot)
        _collect_annots(t.body, out)
    elif isinstance(t, App):
        _collect_annots(t.fun, out)
        _collect_annots(t.arg, out)
    elif isinstance(t, Pair):
        _collect_annots(t.left, out)
        _collect_annots(t.right, out)


def denote(s, ctx=(), gates: GateRegistry | None = None,
           dim_cap: int = DIM_CAP) -> SemMorphism:
    """Interpret the typing derivation of ctx |- s as a carrier matrix.

    The input is type checked first; a superposition is factored into
    an amplitude column over its literal slots composed with the
    denotation of its skeleton.
    """
    ctx = _as_context(ctx)
    s = _as_superposition(s)
    gates = gates if gates is not None else builtins()
    result_ty = infer(ctx, s, gates)

    mentioned: list[TypeExpr] = [result_ty] + [ty for _, ty in ctx]
    keys = s.keys()
    if keys:
        _collect_annots(keys[0].term, mentioned)
    for ty in mentioned:
        if _has_rank0(ty):
            offender = ty
            while not (isinstance(offender, LolliType) and rank_of(offender) == 0):
                if isinstance(offender, TensorType):
                    offender = (
                        offender.left if _has_rank0(offender.left) else offender.right
                    )
                elif isinstance(offender, LolliType):
                    offender = (
                        offender.domain
                        if _has_rank0(offender.domain)
                        else offender.codomain
                    )
                else:
                    break
            raise EmptyBundle(offender)

    d = _Denoter(gates, dim_cap)
    ctx_list = list(ctx.bindings)
    src_dim = d.ctx_dim(ctx_list)
    dst_dim = d.guard(carrier_dim(result_ty))

    rep = keys[0]
    n_holes = _count_literals(rep.term)
    if n_holes == 0:
        # congruent branches with no literals are alpha-equal: one branch
        assert len(keys) == 1
        _, matrix = d.basis(ctx_list, rep.term)
        matrix = matrix * s.amplitudes[rep]
        return SemMorphism(src_dim, dst_dim, matrix)

    taken = set(ctx.names())
    for key in keys:
        taken |= all_var_names(key.term)
    names = []
    i = 0
    while len(names) < n_holes:
        cand = f"q{i}"
        i += 1
        if cand not in taken:
            names.append(cand)

    skeleton_term = _replace_literals(rep.term, names, [0])
    d.guard(2**n_holes)
    amp_col = np.zeros((2**n_holes, 1), dtype=np.complex128)
    for key, amp in s.items():
        bits: list[int] = []
        _literal_bits_preorder(key.term, bits)
        index = 0
        for b in bits:
            index = (index << 1) | b
        amp_col[index, 0] += amp

    hole_ctx = [(name, QBIT) for name in names] + ctx_list
    _, g_matrix = d.basis(hole_ctx, skeleton_term)
    d.guard((2**n_holes) * src_dim)
    matrix = g_matrix @ np.kron(amp_col, np.eye(src_dim))
    return SemMorphism(src_dim, dst_dim, matrix)


def soundness_check(t, u, ctx=(), gates: GateRegistry | None = None,
                    tol: float = 1e-9) -> bool:
    """True when two well-typed terms denote the same carrier matrix."""
    gates = gates if gates is not None else builtins()
    m1 = denote(t, ctx, gates)
    m2 = denote(u, ctx, gates)
    if (m1.src_dim, m1.dst_dim) != (m2.src_dim, m2.dst_dim):
        raise TypeMismatch(
            f"{m1.dst_dim}x{m1.src_dim}", f"{m2.dst_dim}x{m2.src_dim}"
        )
    return bool(np.max(np.abs(m1.matrix - m2.matrix)) <= tol)
