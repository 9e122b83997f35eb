"""qlam: a linear lambda calculus with qubit literals and unitary gates.

The package provides the surface syntax (parse/pretty), superposition
normal forms, a gate registry, a linear type checker, a small-step
evaluator that contracts redexes in parallel across branches, and a
finite-dimensional matrix semantics.
"""

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
    QBIT,
    QbitType,
    QubitLit,
    RawTerm,
    Scale,
    Sum,
    TensorType,
    TypeExpr,
    Var,
    alpha_eq,
    free_vars,
    qbits,
    subst,
)
from .parser import ParseError, parse, parse_type
from .printer import pretty, pretty_pattern, pretty_type
from .superpose import (
    BasisTerm,
    CongruenceError,
    Skeleton,
    Superposition,
    embed,
    from_json_obj,
    linearize,
    norm2,
    skeleton_of,
    super_eq,
    to_json_obj,
)
from .gates import (
    ArityMismatch,
    GateDef,
    GateError,
    GateRegistry,
    NotPowerOfTwo,
    NotUnitary,
    Redefinition,
    UnknownGate,
    apply_gate,
    builtins,
    declare_gate,
    load_gate_json,
    unitarity_deviation,
)
from .typecheck import (
    Context,
    DuplicateUse,
    GateArity,
    NonCongruent,
    NonNormalized,
    NotAFunction,
    TypeCheckError,
    TypeMismatch,
    UnboundVar,
    UnusedVar,
    check,
    infer,
)
from .evaluate import (
    DEFAULT_FUEL,
    FuelExhausted,
    equiv,
    eta_contract,
    evaluate,
    find_redex,
    is_value,
    iter_states,
    step,
)
from .denote import (
    DIM_CAP,
    DimensionCapError,
    EmptyBundle,
    SemMorphism,
    apply_carrier,
    carrier_dim,
    curry_carrier,
    denote,
    permutation_matrix,
    rank_of,
    soundness_check,
)

__all__ = [
    "App",
    "ArityMismatch",
    "BasisTerm",
    "CongruenceError",
    "Context",
    "DEFAULT_FUEL",
    "DIM_CAP",
    "DimensionCapError",
    "DuplicateUse",
    "EmptyBundle",
    "FuelExhausted",
    "Gate",
    "GateArity",
    "GateDef",
    "GateError",
    "GateRegistry",
    "Hole",
    "Lam",
    "LolliType",
    "NonCongruent",
    "NonNormalized",
    "NotAFunction",
    "NotPowerOfTwo",
    "NotUnitary",
    "Pair",
    "ParseError",
    "Pattern",
    "PPair",
    "PVar",
    "QBIT",
    "QbitType",
    "QubitLit",
    "RawTerm",
    "Redefinition",
    "Scale",
    "SemMorphism",
    "Skeleton",
    "Sum",
    "Superposition",
    "TensorType",
    "TypeCheckError",
    "TypeExpr",
    "TypeMismatch",
    "UnboundVar",
    "UnknownGate",
    "UnusedVar",
    "Var",
    "alpha_eq",
    "apply_carrier",
    "apply_gate",
    "builtins",
    "carrier_dim",
    "check",
    "curry_carrier",
    "declare_gate",
    "denote",
    "embed",
    "equiv",
    "eta_contract",
    "evaluate",
    "find_redex",
    "free_vars",
    "from_json_obj",
    "infer",
    "is_value",
    "iter_states",
    "linearize",
    "load_gate_json",
    "norm2",
    "parse",
    "parse_type",
    "permutation_matrix",
    "pretty",
    "pretty_pattern",
    "pretty_type",
    "qbits",
    "rank_of",
    "skeleton_of",
    "soundness_check",
    "step",
    "subst",
    "super_eq",
    "to_json_obj",
    "unitarity_deviation",
]
