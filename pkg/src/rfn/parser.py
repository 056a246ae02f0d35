"""Concrete syntax: tokenizer, recursive-descent parser and name resolution.

Grammar sketch (binder forms extend as far right as possible)::

    type  ::= Pi(x: T) -> T | All(X >: T <: T) -> T | Sig(x: T) * T | mu X. T
            | T '|' T | T & T | T + T
            | Unit | True | False | Bool | Int32 | Top | Bot | X | (T) | {x: T with t}
    term  ::= fun(x: T) => t | Fun(X >: T <: T) => t | let x [: T] = t in t
            | match t with (x, y) => t | match t with inl(x) => t | inr(y) => t
            | if t then t else t | loop(t) x => t
            | t || t | t && t | t == t | t + t | t * t | ... | t t | t[T] | t._1 | t._2
            | inl[T] t | inr[T] t | (t, t) | unit | true | false | 42 | -42 | x
    file  ::= (def x : T = t)* [main = t]  |  t

The parser produces ``Name``/``TName`` placeholders; :func:`resolve_names`
turns them into de Bruijn indices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .syntax import (
    BOOL, BOT, INT32_MAX, INT32_MIN, TOP,
    Abs, App, BinOp, BoolLit, Bot, Forall, If, Inl, Inr, Inter, IntLit, Let,
    Loop, MatchPair, MatchSum, Mu, Name, Op, Pair, Pi, Refine, Sigma, Sum,
    TAbs, TApp, TFalse, TInt, TName, TTrue, TUnit, TVar, Top, Union, UnitLit, Var,
    children,
)


class ParseError(Exception):
    def __init__(self, code: str, message: str, span: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span


KEYWORDS = frozenset({
    "unit", "true", "false", "fun", "Fun", "let", "in", "match", "with", "inl", "inr",
    "if", "then", "else", "loop", "mu", "def", "Pi", "All", "Sig",
    "Unit", "True", "False", "Bool", "Int32", "Top", "Bot",
})

_TOKEN = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>=>|->|>:|<:|==|!=|<=|>=|&&|\|\||[()\[\]{}:,.=<>+\-*/%|&])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "kw" | "sym" | "eof"
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("E-PARSE", f"unexpected character {text[pos]!r}", (pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            word = m.group()
            if kind == "ident" and word in KEYWORDS:
                kind = "kw"
            out.append(Token(kind, word, m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


@dataclass(frozen=True)
class Definition:
    name: str
    type: object
    body: object
    span: Optional[tuple[int, int]] = field(default=None, compare=False)


@dataclass(frozen=True)
class SourceFile:
    definitions: tuple[Definition, ...]
    main: Optional[object] = None


_CMP = {"==": Op.EQ, "!=": Op.NE, "<": Op.LT, "<=": Op.LE, ">": Op.GT, ">=": Op.GE}
_ADD = {"+": Op.ADD, "-": Op.SUB}
_MUL = {"*": Op.MUL, "/": Op.DIV, "%": Op.MOD}
_TYPE_CONSTS = {"Unit": TUnit, "True": TTrue, "False": TFalse, "Int32": TInt, "Top": Top, "Bot": Bot}
_BINDER_TERMS = {"fun", "Fun", "let", "match", "if", "loop"}
_ATOM_START = {"unit", "true", "false", "inl", "inr"}


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # ------------------------------------------------------------ helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "kw") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def at_main(self) -> bool:
        # "main" is an ordinary name except as the head of the closing "main = t"
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else self.tok
        return self.tok.kind == "ident" and self.tok.text == "main" and nxt.kind == "sym" and nxt.text == "="

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.error("expected an identifier")
        return self.advance()

    def error(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError("E-PARSE", f"{message}, found {found}", (t.start, t.end))

    def span_from(self, start: int) -> tuple[int, int]:
        return (start, self.toks[self.i - 1].end)

    # ------------------------------------------------------------ files

    def file(self) -> SourceFile:
        defs = []
        main = None
        if not (self.at("def") or self.at_main()):
            main = self.term()
            if self.tok.kind != "eof":
                self.error("expected end of input")
            return SourceFile((), main)
        while self.at("def"):
            start = self.advance().start
            name = self.ident().text
            self.expect(":")
            ty = self.type()
            self.expect("=")
            body = self.term()
            defs.append(Definition(name, ty, body, span=self.span_from(start)))
        if self.at_main():
            self.advance()
            self.advance()
            main = self.term()
        if self.tok.kind != "eof":
            self.error("expected 'def', 'main' or end of input")
        return SourceFile(tuple(defs), main)

    # ------------------------------------------------------------ types

    def type(self):
        start = self.tok.start
        if self.at("Pi"):
            self.advance()
            self.expect("(")
            x = self.ident().text
            self.expect(":")
            dom = self.type()
            self.expect(")")
            self.expect("->")
            return Pi(dom, self.type(), name=x, span=self.span_from(start))
        if self.at("All"):
            self.advance()
            self.expect("(")
            x = self.ident().text
            lo, hi = self.bounds()
            self.expect(")")
            self.expect("->")
            return Forall(lo, hi, self.type(), name=x, span=self.span_from(start))
        if self.at("Sig"):
            self.advance()
            self.expect("(")
            x = self.ident().text
            self.expect(":")
            first = self.type()
            self.expect(")")
            self.expect("*")
            return Sigma(first, self.type(), name=x, span=self.span_from(start))
        if self.at("mu"):
            self.advance()
            x = self.ident().text
            self.expect(".")
            return Mu(self.type(), name=x, span=self.span_from(start))
        return self.union_type()

    def bounds(self):
        lo, hi = BOT, TOP
        if self.at(">:"):
            self.advance()
            lo = self.type()
        if self.at("<:"):
            self.advance()
            hi = self.type()
        return lo, hi

    def union_type(self):
        start = self.tok.start
        t = self.inter_type()
        while self.at("|"):
            self.advance()
            t = Union(t, self.inter_type(), span=self.span_from(start))
        return t

    def inter_type(self):
        start = self.tok.start
        t = self.sum_type()
        while self.at("&"):
            self.advance()
            t = Inter(t, self.sum_type(), span=self.span_from(start))
        return t

    def sum_type(self):
        start = self.tok.start
        t = self.atom_type()
        while self.at("+"):
            self.advance()
            t = Sum(t, self.atom_type(), span=self.span_from(start))
        return t

    def atom_type(self):
        t = self.tok
        if t.kind == "kw" and t.text in _TYPE_CONSTS:
            self.advance()
            return _TYPE_CONSTS[t.text](span=(t.start, t.end))
        if t.kind == "kw" and t.text == "Bool":
            self.advance()
            return BOOL
        if t.kind == "kw" and t.text in ("Pi", "All", "Sig", "mu"):
            return self.type()
        if t.kind == "ident":
            self.advance()
            return TName(t.text, span=(t.start, t.end))
        if self.at("("):
            self.advance()
            ty = self.type()
            self.expect(")")
            return ty
        if self.at("{"):
            self.advance()
            x = self.ident().text
            self.expect(":")
            base = self.type()
            self.expect("with")
            pred = self.term()
            self.expect("}")
            return Refine(base, pred, name=x, span=self.span_from(t.start))
        self.error("expected a type")

    # ------------------------------------------------------------ terms

    def term(self):
        t = self.tok
        start = t.start
        if self.at("fun"):
            self.advance()
            self.expect("(")
            x = self.ident().text
            self.expect(":")
            ty = self.type()
            self.expect(")")
            self.expect("=>")
            return Abs(ty, self.term(), name=x, span=self.span_from(start))
        if self.at("Fun"):
            self.advance()
            self.expect("(")
            x = self.ident().text
            lo, hi = self.bounds()
            self.expect(")")
            self.expect("=>")
            return TAbs(lo, hi, self.term(), name=x, span=self.span_from(start))
        if self.at("let"):
            self.advance()
            x = self.ident().text
            ann = None
            if self.at(":"):
                self.advance()
                ann = self.type()
            self.expect("=")
            bound = self.term()
            self.expect("in")
            return Let(ann, bound, self.term(), name=x, span=self.span_from(start))
        if self.at("if"):
            self.advance()
            c = self.term()
            self.expect("then")
            a = self.term()
            self.expect("else")
            return If(c, a, self.term(), span=self.span_from(start))
        if self.at("loop"):
            self.advance()
            self.expect("(")
            init = self.term()
            self.expect(")")
            x = self.ident().text
            self.expect("=>")
            return Loop(init, self.term(), name=x, span=self.span_from(start))
        if self.at("match"):
            self.advance()
            s = self.term()
            self.expect("with")
            if self.at("("):
                self.advance()
                x = self.ident().text
                self.expect(",")
                y = self.ident().text
                self.expect(")")
                self.expect("=>")
                return MatchPair(s, self.term(), names=(x, y), span=self.span_from(start))
            self.expect("inl")
            self.expect("(")
            x = self.ident().text
            self.expect(")")
            self.expect("=>")
            left = self.term()
            self.expect("|")
            self.expect("inr")
            self.expect("(")
            y = self.ident().text
            self.expect(")")
            self.expect("=>")
            return MatchSum(s, left, self.term(), names=(x, y), span=self.span_from(start))
        return self.or_expr()

    def _binary(self, sub, table):
        start = self.tok.start
        t = sub()
        while self.tok.kind == "sym" and self.tok.text in table:
            op = table[self.advance().text]
            t = BinOp(op, t, sub(), span=self.span_from(start))
        return t

    def or_expr(self):
        return self._binary(self.and_expr, {"||": Op.OR})

    def and_expr(self):
        return self._binary(self.cmp_expr, {"&&": Op.AND})

    def cmp_expr(self):
        start = self.tok.start
        t = self.add_expr()
        if self.tok.kind == "sym" and self.tok.text in _CMP:
            op = _CMP[self.advance().text]
            t = BinOp(op, t, self.add_expr(), span=self.span_from(start))
            if self.tok.kind == "sym" and self.tok.text in _CMP:
                self.error("comparison operators are non-associative")
        return t

    def add_expr(self):
        return self._binary(self.mul_expr, _ADD)

    def mul_expr(self):
        return self._binary(self.unary, _MUL)

    def unary(self):
        t = self.tok
        if self.at("-") and self.toks[self.i + 1].kind == "int":
            self.advance()
            n = self.advance()
            return self._int(-int(n.text), (t.start, n.end))
        if t.kind == "kw" and t.text in _BINDER_TERMS:
            return self.term()
        return self.app_expr()

    def _int(self, value: int, span):
        if not INT32_MIN <= value <= INT32_MAX:
            raise ParseError("E-PARSE", f"integer literal {value} outside the signed 32-bit range", span)
        return IntLit(value, span=span)

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "ident":
            return not self.at_main()
        if t.kind == "int":
            return True
        if t.kind == "kw" and t.text in _ATOM_START:
            return True
        return self.at("(")

    def app_expr(self):
        start = self.tok.start
        t = self.postfix()
        while self._starts_atom():
            t = App(t, self.postfix(), span=self.span_from(start))
        return t

    def postfix(self):
        start = self.tok.start
        t = self.atom()
        while True:
            if self.at("["):
                self.advance()
                ty = self.type()
                self.expect("]")
                t = TApp(t, ty, span=self.span_from(start))
            elif self.at("."):
                self.advance()
                field_tok = self.ident()
                if field_tok.text not in ("_1", "_2"):
                    raise ParseError("E-PARSE", "expected ._1 or ._2", (field_tok.start, field_tok.end))
                pick = Var(1) if field_tok.text == "_1" else Var(0)
                t = MatchPair(t, pick, names=("fst", "snd"), span=self.span_from(start))
            else:
                return t

    def atom(self):
        t = self.tok
        start = t.start
        if t.kind == "int":
            self.advance()
            return self._int(int(t.text), (t.start, t.end))
        if t.kind == "ident":
            self.advance()
            return Name(t.text, span=(t.start, t.end))
        if self.at("unit"):
            self.advance()
            return UnitLit(span=(t.start, t.end))
        if self.at("true") or self.at("false"):
            self.advance()
            return BoolLit(t.text == "true", span=(t.start, t.end))
        if self.at("inl") or self.at("inr"):
            self.advance()
            self.expect("[")
            other = self.type()
            self.expect("]")
            payload = self.postfix()
            cls = Inl if t.text == "inl" else Inr
            return cls(other, payload, span=self.span_from(start))
        if self.at("("):
            self.advance()
            a = self.term()
            if self.at(","):
                self.advance()
                b = self.term()
                self.expect(")")
                return Pair(a, b, span=self.span_from(start))
            self.expect(")")
            return a
        self.error("expected a term")


def parse_file(text: str) -> SourceFile:
    return Parser(text).file()


def parse_term(text: str):
    p = Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("expected end of input")
    return t


def parse_type(text: str):
    p = Parser(text)
    t = p.type()
    if p.tok.kind != "eof":
        p.error("expected end of input")
    return t


# ---------------------------------------------------------------- name resolution


def resolve_names(node, terms: tuple = (), types: tuple = ()):
    """Replace ``Name``/``TName`` by de Bruijn indices; ``terms``/``types`` list
    the names in scope, innermost first."""
    r = resolve_names
    match node:
        case Name(name=n):
            if n not in terms:
                raise ParseError("E-UNBOUND", f"unbound variable {n}", node.span)
            return Var(terms.index(n), span=node.span)
        case TName(name=n):
            if n not in types:
                raise ParseError("E-UNBOUND", f"unbound type variable {n}", node.span)
            return TVar(types.index(n), span=node.span)
        case Var() | TVar() | UnitLit() | BoolLit() | IntLit() | TUnit() | TTrue() | TFalse() | TInt() \
                | Top() | Bot():
            return node
        case Abs(annotation=a, body=b):
            return Abs(r(a, terms, types), r(b, (node.name,) + terms, types), name=node.name, span=node.span)
        case App(fn=f, arg=a):
            return App(r(f, terms, types), r(a, terms, types), span=node.span)
        case TAbs(lower=lo, upper=hi, body=b):
            return TAbs(r(lo, terms, types), r(hi, terms, types), r(b, terms, (node.name,) + types),
                        name=node.name, span=node.span)
        case TApp(fn=f, arg=a):
            return TApp(r(f, terms, types), r(a, terms, types), span=node.span)
        case Let(annotation=a, bound=x, body=b):
            ann = None if a is None else r(a, terms, types)
            return Let(ann, r(x, terms, types), r(b, (node.name,) + terms, types), name=node.name, span=node.span)
        case Pair(first=a, second=b):
            return Pair(r(a, terms, types), r(b, terms, types), span=node.span)
        case MatchPair(scrutinee=s, body=b):
            x, y = node.names
            return MatchPair(r(s, terms, types), r(b, (y, x) + terms, types), names=node.names, span=node.span)
        case MatchSum(scrutinee=s, left=le, right=ri):
            x, y = node.names
            return MatchSum(r(s, terms, types), r(le, (x,) + terms, types), r(ri, (y,) + terms, types),
                            names=node.names, span=node.span)
        case Inl(other=o, payload=a):
            return Inl(r(o, terms, types), r(a, terms, types), span=node.span)
        case Inr(other=o, payload=a):
            return Inr(r(o, terms, types), r(a, terms, types), span=node.span)
        case BinOp(op=op, lhs=a, rhs=b):
            return BinOp(op, r(a, terms, types), r(b, terms, types), span=node.span)
        case If(cond=c, then=a, orelse=b):
            return If(r(c, terms, types), r(a, terms, types), r(b, terms, types), span=node.span)
        case Loop(init=a, body=b):
            return Loop(r(a, terms, types), r(b, (node.name,) + terms, types), name=node.name, span=node.span)
        case Pi(domain=a, codomain=b):
            return Pi(r(a, terms, types), r(b, (node.name,) + terms, types), name=node.name, span=node.span)
        case Forall(lower=lo, upper=hi, body=b):
            return Forall(r(lo, terms, types), r(hi, terms, types), r(b, terms, (node.name,) + types),
                          name=node.name, span=node.span)
        case Sigma(first=a, second=b):
            return Sigma(r(a, terms, types), r(b, (node.name,) + terms, types), name=node.name, span=node.span)
        case Sum(left=a, right=b):
            return Sum(r(a, terms, types), r(b, terms, types), span=node.span)
        case Union(left=a, right=b):
            return Union(r(a, terms, types), r(b, terms, types), span=node.span)
        case Inter(left=a, right=b):
            return Inter(r(a, terms, types), r(b, terms, types), span=node.span)
        case Refine(base=a, pred=p):
            return Refine(r(a, terms, types), r(p, (node.name,) + terms, types), name=node.name, span=node.span)
        case Mu(body=b):
            return Mu(r(b, terms, (node.name,) + types), name=node.name, span=node.span)
    raise TypeError(f"cannot resolve {node!r}")


def free_names(node, bound: tuple = ()) -> list[str]:
    """Unbound term names of a named AST, in order of first occurrence."""
    out: list[str] = []

    def go(n, bound):
        if isinstance(n, Name):
            if n.name not in bound and n.name not in out:
                out.append(n.name)
            return
        for i, (child, dterm, _) in enumerate(children(n)):
            if dterm == 0:
                go(child, bound)
            elif isinstance(n, MatchPair):
                go(child, (n.names[1], n.names[0]) + bound)
            elif isinstance(n, MatchSum):
                go(child, (n.names[i - 1],) + bound)
            else:
                go(child, (n.name,) + bound)

    go(node, tuple(bound))
    return out


@dataclass(frozen=True)
class Program:
    """A resolved source file: definitions scoped in order, then ``main``."""

    names: tuple[str, ...]
    types: tuple
    bodies: tuple
    main: Optional[object]
    spans: tuple = ()

    def as_term(self):
        """The let-chain ``let d1: T1 = b1 in ... in main``."""
        body = self.main if self.main is not None else UnitLit()
        for name, ty, b in reversed(list(zip(self.names, self.types, self.bodies))):
            body = Let(ty, b, body, name=name)
        return body


def resolve_file(src: SourceFile, free: tuple = ()) -> Program:
    scope = tuple(free)
    names, types, bodies, spans = [], [], [], []
    for d in src.definitions:
        types.append(resolve_names(d.type, scope))
        bodies.append(resolve_names(d.body, scope))
        names.append(d.name)
        spans.append(d.span)
        scope = (d.name,) + scope
    if src.main is not None:
        main = resolve_names(src.main, scope)
    elif "main" in names:
        # a definition called main doubles as the entry point
        main = Var(scope.index("main"))
    else:
        main = None
    return Program(tuple(names), tuple(types), tuple(bodies), main, tuple(spans))


def load(text: str) -> Program:
    return resolve_file(parse_file(text))
