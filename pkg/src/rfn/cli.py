"""Command-line front end: ``rfn check``, ``rfn eval`` and ``rfn solve``.

Exit codes: 0 success, 1 type error (or "not entailed"), 2 usage or parse
error, 3 timeout, 4 stuck, 5 solver/oracle disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence, TextIO

from . import oracle
from .anf import anf
from .checker import EMPTY, Checker, Context, TypeCheckError
from .interp import STUCK, TIMEOUT, eval_term
from .parser import ParseError, Program, free_names, parse_file, parse_term, resolve_file, resolve_names
from .pretty import show_type
from .solver import NotInFragment, entails
from .syntax import BoolLit, Let, UnitLit

EXIT_OK, EXIT_TYPE, EXIT_USAGE, EXIT_TIMEOUT, EXIT_STUCK, EXIT_DISAGREE = 0, 1, 2, 3, 4, 5

_CODES = {
    "subtype-failure": "E-SUBTYPE",
    "predicate-not-entailed": "E-PREDICATE",
    "unbound-variable": "E-UNBOUND",
    "not-a-function": "E-NOT-FUNCTION",
    "not-a-pair": "E-NOT-PAIR",
    "not-a-sum": "E-NOT-SUM",
    "argument-not-variable": "E-ARG-NOT-VAR",
    "bound-violation": "E-BOUND",
    "binop-incompat": "E-BINOP",
    "ill-formed-mu": "E-MU",
}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    span: Optional[tuple[int, int]]
    code: str
    message: str
    expected: Optional[str] = None
    actual: Optional[str] = None


class Reporter:
    """Collects diagnostics and renders them as text or JSON lines."""

    def __init__(self, text: str, path: str, as_json: bool, out: TextIO):
        self.text = text
        self.path = path
        self.as_json = as_json
        self.out = out
        self.diagnostics: list[Diagnostic] = []

    def byte_span(self, span) -> Optional[tuple[int, int]]:
        if span is None:
            return None
        lo, hi = (max(0, min(x, len(self.text))) for x in span)
        start = len(self.text[:lo].encode())
        return start, start + len(self.text[lo:hi].encode())

    def emit(self, d: Diagnostic) -> None:
        self.diagnostics.append(d)
        if self.as_json:
            print(json.dumps(asdict(d)), file=self.out)
            return
        where = self.path
        if d.span is not None:
            prefix = self.text.encode()[:d.span[0]].decode(errors="replace")
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            where = f"{self.path}:{line}:{col}"
        print(f"{where}: {d.severity}[{d.code}]: {d.message}", file=self.out)
        if d.expected is not None:
            print(f"  expected: {d.expected}", file=self.out)
        if d.actual is not None:
            print(f"  actual:   {d.actual}", file=self.out)

    def parse_error(self, e: ParseError) -> None:
        self.emit(Diagnostic("error", self.byte_span(e.span), e.code, e.message))

    def type_error(self, e: TypeCheckError, fallback_span, ctx: Context) -> None:
        terms = tuple(ctx.name_of(i) for i in range(ctx.depth))

        def render(ty):
            if ty is None:
                return None
            try:
                return show_type(ty, terms)
            except Exception:  # a type from an inner scope; fall back to its repr
                return repr(ty)

        span = e.span if e.span is not None else fallback_span
        self.emit(Diagnostic("error", self.byte_span(span), _CODES[e.kind], e.message,
                             render(e.expected), render(e.actual)))


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_program(text: str, reporter: Reporter) -> Optional[Program]:
    try:
        return resolve_file(parse_file(text))
    except ParseError as e:
        reporter.parse_error(e)
        return None


def check_program(program: Program, reporter: Reporter, *, use_anf: bool = True,
                  checker: Optional[Checker] = None) -> bool:
    """Check each definition against its annotation, in scope order, then ``main``.

    A definition that fails is still bound at its declared type so later
    definitions are checked too.
    """
    checker = checker or Checker()
    ctx = EMPTY
    ok = True
    spans = program.spans or (None,) * len(program.names)
    for name, ty, body, span in zip(program.names, program.types, program.bodies, spans):
        t = anf(body) if use_anf else body
        try:
            ctx, _ = checker._let_context(ctx, Let(ty, t, UnitLit(), name=name))
        except TypeCheckError as e:
            reporter.type_error(e, span, ctx)
            ctx = ctx.bind(ty, name)
            ok = False
    if program.main is not None:
        t = anf(program.main) if use_anf else program.main
        try:
            checker.infer(ctx, t)
        except TypeCheckError as e:
            reporter.type_error(e, program.main.span, ctx)
            ok = False
    return ok


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    text = _read(args.file)
    rep = Reporter(text, args.file, args.json, out)
    program = load_program(text, rep)
    if program is None:
        return EXIT_USAGE
    trace = (lambda line: print(line, file=err)) if args.trace_solver else None
    ok = check_program(program, rep, use_anf=not args.no_anf, checker=Checker(trace=trace))
    if ok and not args.json:
        print("ok", file=out)
    return EXIT_OK if ok else EXIT_TYPE


def cmd_eval(args, out: TextIO, err: TextIO) -> int:
    text = _read(args.file)
    rep = Reporter(text, args.file, args.json, out)
    program = load_program(text, rep)
    if program is None:
        return EXIT_USAGE
    if not check_program(program, rep):
        return EXIT_TYPE
    result = eval_term(args.fuel, (), program.as_term())
    if result is TIMEOUT:
        shown, code = "timeout", EXIT_TIMEOUT
    elif result is STUCK:
        shown, code = "stuck", EXIT_STUCK
    else:
        shown, code = str(result.value), EXIT_OK
    if args.json:
        print(json.dumps({"result": shown}), file=out)
    else:
        print(shown, file=out)
    return code


def _split(text: str) -> list[str]:
    return [p.strip() for p in text.split(";") if p.strip()]


def cmd_solve(args, out: TextIO, err: TextIO) -> int:
    try:
        named_facts = [parse_term(f) for f in _split(args.facts)]
        named_goal = parse_term(args.goal)
    except ParseError as e:
        print(f"error[{e.code}]: {e.message}", file=err)
        return EXIT_USAGE
    atoms: list[str] = []
    for n in named_facts + [named_goal]:
        atoms.extend(x for x in free_names(n) if x not in atoms)
    scope = tuple(reversed(atoms))
    facts = [resolve_names(f, scope) for f in named_facts]
    goal = resolve_names(named_goal, scope)
    trace = (lambda line: print(line, file=err)) if args.trace_solver else None
    try:
        result = entails(facts, BoolLit(True), goal, depth=len(atoms), names=atoms, trace=trace)
    except NotInFragment as e:
        print(f"error: predicate outside the solver fragment: {e}", file=err)
        return EXIT_USAGE
    print("entailed" if result else "not entailed", file=out)
    if args.oracle:
        cfg = oracle.OracleConfig()
        cm = oracle.countermodel(cfg, atoms, facts, goal)
        if cm is None:
            print(f"oracle: holds on [{cfg.int_domain[0]}, {cfg.int_domain[1]}]", file=out)
        else:
            shown = ", ".join(f"{a} = {v}" for a, v in zip(atoms, cm))
            print(f"oracle: countermodel {shown}", file=out)
        if result and cm is not None:
            print("disagreement: the solver claims an entailment the oracle refutes", file=out)
            return EXIT_DISAGREE
    return EXIT_OK if result else EXIT_TYPE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rfn", description="Refinement-typed core calculus tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="type-check every definition of a file")
    p.add_argument("file")
    p.add_argument("--no-anf", action="store_true", help="skip let-hoisting before checking")
    p.add_argument("--trace-solver", action="store_true", help="print solver merges to stderr")
    p.add_argument("--json", action="store_true", help="diagnostics as JSON lines")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("eval", help="type-check a file, then evaluate main")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("solve", help="decide an entailment between predicates")
    p.add_argument("--facts", default="", help="semicolon-separated predicates")
    p.add_argument("--goal", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration on [-8, 8]")
    p.add_argument("--trace-solver", action="store_true")
    p.set_defaults(run=cmd_solve)
    return ap


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "fuel", 0) < 0:
        print("error: fuel must be nonnegative", file=err)
        return EXIT_USAGE
    try:
        return args.run(args, out, err)
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
