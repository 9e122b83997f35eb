"""Command-line front end: parse, typecheck, evaluate, denote, and a
batch corpus runner.

Pipeline per input: parse -> inline `def` macros -> linearize ->
typecheck -> evaluate or denote.  Results go to stdout, diagnostics to
stderr.  Exit codes: 0 success, 1 type/semantic error, 2 parse error,
3 runtime limit (fuel or dimension cap), 4 usage or I/O error.

Output is deterministic: amplitudes print with 10 significant digits,
branches in canonical key order, JSON with compact separators.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .denote import DimensionCapError, EmptyBundle, carrier_dim, denote, rank_of
from .evaluate import DEFAULT_FUEL, FuelExhausted, evaluate, iter_states
from .gates import GateError, GateRegistry, builtins, load_gate_json, parse_matrix_json
from .parser import ParseError, parse, parse_type
from .printer import pretty, pretty_type
from .superpose import (
    BasisTerm,
    CongruenceError,
    Superposition,
    linearize,
    super_eq,
    to_json_obj,
)
from .syntax import Gate, Pair, QubitLit, RawTerm, Var, subst
from .typecheck import TypeCheckError, infer

DISPLAY_ZERO = 1e-12
_JSON_SEP = (",", ":")

_GATE_LINE = re.compile(r"^gate\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_DEF_LINE = re.compile(r"^def\s+([a-zA-Z_][a-zA-Z0-9_']*)\s*=\s*(.*)$")
_EXPECT_LINE = re.compile(r"^\s*--\s*EXPECT:\s*(type|normal|error)\s+(.*?)\s*$")


# -- amplitude and state display --------------------------------------------


def format_amplitude(a: complex) -> str:
    """Rectangular a+bi with 10 significant digits; tiny parts print as 0."""
    re_part = a.real if abs(a.real) >= DISPLAY_ZERO else 0.0
    im_part = a.imag if abs(a.imag) >= DISPLAY_ZERO else 0.0
    if im_part == 0.0:
        return f"{re_part:.10g}"
    if re_part == 0.0:
        return f"{im_part:.10g}i"
    sign = "+" if im_part > 0 else "-"
    return f"{re_part:.10g}{sign}{abs(im_part):.10g}i"


def _atom_str(t: RawTerm) -> str:
    text = pretty(t)
    if isinstance(t, (Var, QubitLit, Gate)):
        return text
    return f"({text})"


def _sum_str(s: Superposition) -> str:
    return " + ".join(
        f"({format_amplitude(amp)}) * {_atom_str(key.term)}" for key, amp in s.items()
    )


def _try_factor(s: Superposition) -> str | None:
    """Display a superposition of pairs with a common side factored out."""
    items = s.items()
    first = items[0][0].term
    if not isinstance(first, Pair):
        return None
    if len({BasisTerm(key.term.left) for key, _ in items}) == 1:
        rest = Superposition([(key.term.right, amp) for key, amp in items])
        return f"{_operand_str(Superposition.unit(first.left))} (x) {_operand_str(rest)}"
    if len({BasisTerm(key.term.right) for key, _ in items}) == 1:
        rest = Superposition([(key.term.left, amp) for key, amp in items])
        return f"{_operand_str(rest)} (x) {_operand_str(Superposition.unit(first.right))}"
    return None


def _operand_str(s: Superposition) -> str:
    items = s.items()
    if len(items) == 1 and abs(items[0][1] - 1) <= DISPLAY_ZERO:
        return _atom_str(items[0][0].term)
    return f"({_try_factor(s) or _sum_str(s)})"


def format_state(s: Superposition) -> str:
    """Human-readable normal form, factoring common tensor components."""
    items = s.items()
    if not items:
        return "0"
    if len(items) == 1 and abs(items[0][1] - 1) <= DISPLAY_ZERO:
        return pretty(items[0][0].term)
    return _try_factor(s) or _sum_str(s)


def canonical_phase(s: Superposition) -> Superposition:
    """Rotate the global phase so the first branch's amplitude is real positive."""
    items = s.items()
    if not items:
        return s
    lead = items[0][1]
    return s.scale(abs(lead) / lead)


# -- .qlam file loading ------------------------------------------------------


class QlamFile:
    """A parsed .qlam source: gate declarations, def macros, one main term."""

    def __init__(self, term: RawTerm, registry: GateRegistry):
        self.term = term
        self.registry = registry


def _strip_comment(line: str) -> str:
    idx = line.find("--")
    return line if idx < 0 else line[:idx]


def load_qlam(text: str, registry: GateRegistry | None = None) -> QlamFile:
    """Process directives and return the inlined main term plus gate registry.

    Lines of the form `gate NAME = <json matrix>` declare gates and
    `def name = <term>` define macros inlined into everything below
    them; indented lines continue the directive above.  The remaining
    lines form the single main term.
    """
    registry = registry if registry is not None else builtins()
    source_lines = text.splitlines()
    directives: list[tuple[str, str, list[str], int]] = []
    term_lines = [""] * len(source_lines)
    open_directive: list[str] | None = None
    for lineno, raw in enumerate(source_lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            open_directive = None
            continue
        m = _GATE_LINE.match(line)
        if m:
            open_directive = [m.group(2)]
            directives.append(("gate", m.group(1), open_directive, lineno))
            continue
        m = _DEF_LINE.match(line)
        if m:
            open_directive = [m.group(2)]
            directives.append(("def", m.group(1), open_directive, lineno))
            continue
        if open_directive is not None and line[0].isspace():
            open_directive.append(line)
            continue
        open_directive = None
        term_lines[lineno - 1] = line

    macros: dict[str, RawTerm] = {}
    for kind, name, chunks, lineno in directives:
        payload = "\n".join(chunks)
        if kind == "gate":
            try:
                matrix = parse_matrix_json(json.loads(payload))
            except (json.JSONDecodeError, ValueError) as exc:
                raise ParseError(lineno, 1, {"a JSON matrix"}, repr(str(exc))) from exc
            registry.declare(name, matrix)
        else:
            body = subst(parse(payload), macros)
            macros[name] = body
    term = subst(parse("\n".join(term_lines)), macros)
    return QlamFile(term, registry)


def _load_registry(gate_files: list[str] | None) -> GateRegistry:
    registry = builtins()
    for path in gate_files or []:
        with open(path, "r", encoding="utf-8") as fh:
            load_gate_json(fh.read(), registry)
    return registry


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


# -- error naming ------------------------------------------------------------


def error_code(exc: BaseException) -> str:
    """Stable diagnostic name for an exception, used in output and EXPECTs."""
    if isinstance(exc, TypeCheckError):
        return exc.code
    if isinstance(exc, CongruenceError):
        return "NonCongruent"
    if isinstance(exc, ParseError):
        return "ParseError"
    if isinstance(exc, FuelExhausted):
        return "FuelExhausted"
    if isinstance(exc, DimensionCapError):
        return "DimensionCap"
    if isinstance(exc, EmptyBundle):
        return "EmptyBundle"
    return type(exc).__name__


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return 2
    if isinstance(exc, (FuelExhausted, DimensionCapError)):
        return 3
    if isinstance(exc, (TypeCheckError, CongruenceError, GateError, EmptyBundle)):
        return 1
    if isinstance(exc, (OSError, json.JSONDecodeError, ValueError)):
        return 4
    raise exc


# -- subcommands ---------------------------------------------------------


def _pipeline(path: str, gate_files) -> tuple[Superposition, GateRegistry]:
    loaded = load_qlam(_read_file(path), _load_registry(gate_files))
    sup = linearize(loaded.term)
    infer((), sup, loaded.registry)
    return sup, loaded.registry


def _cmd_check(args) -> int:
    loaded = load_qlam(_read_file(args.path), _load_registry(args.gates))
    ty = infer((), linearize(loaded.term), loaded.registry)
    print(pretty_type(ty))
    return 0


def _cmd_eval(args) -> int:
    sup, registry = _pipeline(args.path, args.gates)
    if args.trace:
        last = None
        for state in iter_states(sup, fuel=args.fuel, gates=registry):
            print(json.dumps(to_json_obj(state), separators=_JSON_SEP))
            last = state
        result = last
    else:
        result = evaluate(sup, fuel=args.fuel, gates=registry)
    if args.phase:
        result = canonical_phase(result)
    if args.json:
        print(json.dumps(to_json_obj(result), separators=_JSON_SEP))
    else:
        print(format_state(result))
    return 0


def _matrix_json(matrix) -> list:
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in matrix]


def _cmd_denote(args) -> int:
    loaded = load_qlam(_read_file(args.path), _load_registry(args.gates))
    sup = linearize(loaded.term)
    ty = infer((), sup, loaded.registry)
    morphism = denote(sup, (), loaded.registry)
    payload = {
        "type": pretty_type(ty),
        "rank": rank_of(ty),
        "carrier_dim": carrier_dim(ty),
        "matrix": _matrix_json(morphism.matrix),
    }
    print(json.dumps(payload, separators=_JSON_SEP))
    return 0


def _cmd_rank(args) -> int:
    ty = parse_type(args.type_text)
    payload = {"rank": rank_of(ty), "carrier_dim": carrier_dim(ty)}
    print(json.dumps(payload, separators=_JSON_SEP))
    return 0


# -- corpus runner ---------------------------------------------------------


def _expectation(text: str) -> tuple[str, str] | None:
    for line in text.splitlines():
        m = _EXPECT_LINE.match(line)
        if m:
            return m.group(1), m.group(2)
    return None


def _run_case(path: str, gate_files, fuel: int, phase: bool) -> tuple[bool, str]:
    text = _read_file(path)
    expect = _expectation(text)
    if expect is None:
        return False, "no EXPECT header"
    kind, payload = expect
    try:
        loaded = load_qlam(text, _load_registry(gate_files))
        sup = linearize(loaded.term)
        ty = infer((), sup, loaded.registry)
        if kind == "type":
            want = parse_type(payload)
            if want == ty:
                return True, ""
            return False, f"expected type {pretty_type(want)}, got {pretty_type(ty)}"
        result = evaluate(sup, fuel=fuel, gates=loaded.registry)
        if kind == "error":
            return False, f"expected error {payload}, got {format_state(result)}"
        want_sup = linearize(parse(payload))
        mode = "phase" if phase else "strict"
        if super_eq(result, want_sup, mode=mode):
            return True, ""
        return False, f"expected {format_state(want_sup)}, got {format_state(result)}"
    except Exception as exc:  # noqa: BLE001 - each case reports independently
        _exit_code(exc)  # re-raises anything unrecognized
        if kind == "error" and error_code(exc) == payload:
            return True, ""
        return False, f"{error_code(exc)}: {exc}"


def run_corpus(directory: str, gate_files=None, fuel: int = DEFAULT_FUEL,
               phase: bool = False, out=None) -> int:
    """Run every .qlam file under a directory against its EXPECT header.

    Prints one PASS/FAIL line per case in sorted order plus a summary;
    returns the number of failures.
    """
    import pathlib

    out = out if out is not None else sys.stdout
    root = pathlib.Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"no such directory: {directory}")
    cases = sorted(root.rglob("*.qlam"))
    failures = 0
    for case in cases:
        ok, why = _run_case(str(case), gate_files, fuel, phase)
        name = case.relative_to(directory).as_posix()
        if ok:
            print(f"PASS {name}", file=out)
        else:
            failures += 1
            print(f"FAIL {name}: {why}", file=out)
    passed = len(cases) - failures
    print(f"{len(cases)} cases: {passed} passed, {failures} failed", file=out)
    return failures


def _cmd_corpus(args) -> int:
    return 1 if run_corpus(args.dir, args.gates, args.fuel, args.phase) else 0


# -- repl --------------------------------------------------------------------


def _repl_eval_line(line: str, registry: GateRegistry, macros: dict,
                    fuel: int, phase: bool) -> None:
    command = "eval"
    if line.startswith(":"):
        head, _, rest = line.partition(" ")
        command, line = head[1:], rest.strip()
        if command not in ("check", "eval", "denote"):
            raise ValueError(f"unknown directive :{command} (try :check/:eval/:denote)")
    m = _GATE_LINE.match(line)
    if m:
        registry.declare(m.group(1), parse_matrix_json(json.loads(m.group(2))))
        print(f"gate #{m.group(1)} declared", file=sys.stderr)
        return
    m = _DEF_LINE.match(line)
    if m:
        macros[m.group(1)] = subst(parse(m.group(2)), macros)
        print(f"def {m.group(1)} recorded", file=sys.stderr)
        return
    sup = linearize(subst(parse(line), macros))
    ty = infer((), sup, registry)
    if command == "check":
        print(pretty_type(ty))
    elif command == "denote":
        morphism = denote(sup, (), registry)
        payload = {
            "type": pretty_type(ty),
            "rank": rank_of(ty),
            "carrier_dim": carrier_dim(ty),
            "matrix": _matrix_json(morphism.matrix),
        }
        print(json.dumps(payload, separators=_JSON_SEP))
    else:
        result = evaluate(sup, fuel=fuel, gates=registry)
        if phase:
            result = canonical_phase(result)
        print(format_state(result))


def _cmd_repl(args) -> int:
    registry = _load_registry(args.gates)
    macros: dict[str, RawTerm] = {}
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            sys.stderr.write("qlam> ")
            sys.stderr.flush()
        line = sys.stdin.readline()
        if not line:
            break
        line = _strip_comment(line).strip()
        if not line:
            continue
        if line in (":q", ":quit"):
            break
        try:
            _repl_eval_line(line, registry, macros, args.fuel, args.phase)
        except Exception as exc:  # noqa: BLE001 - repl reports and continues
            _exit_code(exc)  # re-raises anything unrecognized
            print(f"error[{error_code(exc)}]: {exc}", file=sys.stderr)
    return 0


# -- argument parsing ---------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlam",
        description="Typecheck, evaluate, and interpret linear quantum lambda terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fuel=False):
        p.add_argument("--gates", action="append", metavar="FILE",
                       help="JSON gate declaration file (repeatable)")
        if fuel:
            p.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                           help="maximum reduction steps (default %(default)s)")
            p.add_argument("--phase", action="store_true",
                           help="canonicalize/compare up to global phase")

    p_check = sub.add_parser("check", help="infer and print the type of a .qlam file")
    p_check.add_argument("path")
    common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_eval = sub.add_parser("eval", help="evaluate a .qlam file to normal form")
    p_eval.add_argument("path")
    common(p_eval, fuel=True)
    p_eval.add_argument("--json", action="store_true",
                        help="print the normal form as JSON")
    p_eval.add_argument("--trace", action="store_true",
                        help="emit every intermediate state as a JSON line")
    p_eval.set_defaults(func=_cmd_eval)

    p_denote = sub.add_parser("denote", help="print the denotation of a .qlam file")
    p_denote.add_argument("path")
    common(p_denote)
    p_denote.set_defaults(func=_cmd_denote)

    p_rank = sub.add_parser("rank", help="print rank and carrier dimension of a type")
    p_rank.add_argument("type_text", metavar="TYPE")
    p_rank.set_defaults(func=_cmd_rank)

    p_corpus = sub.add_parser("corpus", help="run a directory of EXPECT-annotated files")
    p_corpus.add_argument("dir")
    common(p_corpus, fuel=True)
    p_corpus.set_defaults(func=_cmd_corpus)

    p_repl = sub.add_parser("repl", help="interactive session")
    common(p_repl, fuel=True)
    p_repl.set_defaults(func=_cmd_repl)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 4
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - mapped to documented exit codes
        code = _exit_code(exc)
        print(f"error[{error_code(exc)}]: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
