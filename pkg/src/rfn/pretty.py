"""Pretty-printing de Bruijn terms and types back to concrete syntax.

Binder names come from the display hints and are freshened so that the
output re-parses to the same AST.  Free variables with no name in scope
print as ``#i`` (not parseable).
"""
from __future__ import annotations

from .parser import KEYWORDS
from .syntax import (
    Abs, App, BinOp, BoolLit, Bot, Forall, If, Inl, Inr, Inter, IntLit, Let,
    Loop, MatchPair, MatchSum, Mu, Name, Op, Pair, Pi, Refine, Sigma, Sum,
    TAbs, TApp, TFalse, TInt, TName, TTrue, TUnit, TVar, Top, Union, UnitLit, Var,
)

_BIN_LEVEL = {
    Op.OR: 1, Op.AND: 2,
    Op.EQ: 3, Op.NE: 3, Op.LT: 3, Op.LE: 3, Op.GT: 3, Op.GE: 3,
    Op.ADD: 4, Op.SUB: 4, Op.MUL: 5, Op.DIV: 5, Op.MOD: 5,
}
_BASE = {TUnit: "Unit", TTrue: "True", TFalse: "False", TInt: "Int32", Top: "Top", Bot: "Bot"}


def _fresh(hint: str, scope: tuple) -> str:
    base = hint if hint and hint[0].isalpha() and hint not in KEYWORDS else "x"
    name = base
    k = 1
    while name in scope or name in KEYWORDS:
        name = f"{base}{k}"
        k += 1
    return name


def _paren(s: str, needed: bool) -> str:
    return f"({s})" if needed else s


class Printer:
    def __init__(self, terms: tuple = (), types: tuple = ()):
        self.terms = tuple(terms)
        self.types = tuple(types)

    def _scope(self):
        return self.terms + self.types

    def with_term(self, hint: str):
        name = _fresh(hint, self._scope())
        return name, Printer((name,) + self.terms, self.types)

    def with_type(self, hint: str):
        name = _fresh(hint, self._scope())
        return name, Printer(self.terms, (name,) + self.types)

    # ------------------------------------------------------------ types

    def type(self, ty, level: int = 0) -> str:
        match ty:
            case TVar(index=j):
                return self.types[j] if j < len(self.types) else f"#T{j}"
            case TName(name=n):
                return n
            case Pi(domain=a, codomain=b):
                x, inner = self.with_term(ty.name)
                return _paren(f"Pi({x}: {self.type(a)}) -> {inner.type(b)}", level > 0)
            case Forall(lower=lo, upper=hi, body=b):
                x, inner = self.with_type(ty.name)
                return _paren(f"All({x}{self._bounds(lo, hi)}) -> {inner.type(b)}", level > 0)
            case Sigma(first=a, second=b):
                x, inner = self.with_term(ty.name)
                return _paren(f"Sig({x}: {self.type(a)}) * {inner.type(b)}", level > 0)
            case Mu(body=b):
                x, inner = self.with_type(ty.name)
                return _paren(f"mu {x}. {inner.type(b)}", level > 0)
            case Union(left=a, right=b):
                return _paren(f"{self.type(a, 1)} | {self.type(b, 2)}", level > 1)
            case Inter(left=a, right=b):
                return _paren(f"{self.type(a, 2)} & {self.type(b, 3)}", level > 2)
            case Sum(left=a, right=b):
                return _paren(f"{self.type(a, 3)} + {self.type(b, 4)}", level > 3)
            case Refine(base=a, pred=p):
                x, inner = self.with_term(ty.name)
                return f"{{{x}: {self.type(a)} with {inner.term(p)}}}"
        if type(ty) in _BASE:
            return _BASE[type(ty)]
        raise TypeError(f"not a type: {ty!r}")

    def _bounds(self, lo, hi) -> str:
        out = ""
        if not isinstance(lo, Bot):
            out += f" >: {self.type(lo)}"
        if not isinstance(hi, Top):
            out += f" <: {self.type(hi)}"
        return out

    # ------------------------------------------------------------ terms

    def term(self, t, level: int = 0) -> str:
        match t:
            case UnitLit():
                return "unit"
            case BoolLit(value=b):
                return "true" if b else "false"
            case IntLit(value=z):
                return _paren(str(z), z < 0 and level > 5)
            case Var(index=i):
                return self.terms[i] if i < len(self.terms) else f"#{i}"
            case Name(name=n):
                return n
            case Abs(annotation=a, body=b):
                x, inner = self.with_term(t.name)
                return _paren(f"fun({x}: {self.type(a)}) => {inner.term(b)}", level > 0)
            case TAbs(lower=lo, upper=hi, body=b):
                x, inner = self.with_type(t.name)
                return _paren(f"Fun({x}{self._bounds(lo, hi)}) => {inner.term(b)}", level > 0)
            case Let(annotation=a, bound=v, body=b):
                x, inner = self.with_term(t.name)
                ann = "" if a is None else f": {self.type(a)}"
                return _paren(f"let {x}{ann} = {self.term(v)} in {inner.term(b)}", level > 0)
            case If(cond=c, then=a, orelse=b):
                return _paren(f"if {self.term(c)} then {self.term(a)} else {self.term(b)}", level > 0)
            case Loop(init=a, body=b):
                x, inner = self.with_term(t.name)
                return _paren(f"loop({self.term(a)}) {x} => {inner.term(b)}", level > 0)
            case MatchPair(scrutinee=s, body=b):
                x, p1 = self.with_term(t.names[0])
                y, p2 = p1.with_term(t.names[1])
                return _paren(f"match {self.term(s)} with ({x}, {y}) => {p2.term(b)}", level > 0)
            case MatchSum(scrutinee=s, left=le, right=ri):
                x, pl = self.with_term(t.names[0])
                y, pr = self.with_term(t.names[1])
                return _paren(f"match {self.term(s)} with inl({x}) => {pl.term(le, 1)} "
                              f"| inr({y}) => {pr.term(ri)}", level > 0)
            case BinOp(op=op, lhs=a, rhs=b):
                k = _BIN_LEVEL[op]
                if k == 3:
                    s = f"{self.term(a, 4)} {op} {self.term(b, 4)}"
                else:
                    s = f"{self.term(a, k)} {op} {self.term(b, k + 1)}"
                return _paren(s, level > k)
            case App(fn=f, arg=a):
                return _paren(f"{self.term(f, 6)} {self.term(a, 7)}", level > 6)
            case TApp(fn=f, arg=a):
                return f"{self.term(f, 7)}[{self.type(a)}]"
            case Inl(other=o, payload=a):
                return _paren(f"inl[{self.type(o)}] {self.term(a, 7)}", level > 6)
            case Inr(other=o, payload=a):
                return _paren(f"inr[{self.type(o)}] {self.term(a, 7)}", level > 6)
            case Pair(first=a, second=b):
                return f"({self.term(a)}, {self.term(b)})"
        raise TypeError(f"not a term: {t!r}")


def show_type(ty, terms: tuple = (), types: tuple = ()) -> str:
    return Printer(terms, types).type(ty)


def show_term(t, terms: tuple = (), types: tuple = ()) -> str:
    return Printer(terms, types).term(t)


def show_program(program) -> str:
    lines = []
    scope: tuple = ()
    for name, ty, body in zip(program.names, program.types, program.bodies):
        p = Printer(scope)
        lines.append(f"def {name} : {p.type(ty)} = {p.term(body)}")
        scope = (name,) + scope
    if program.main is not None:
        lines.append(f"main = {Printer(scope).term(program.main)}")
    return "\n".join(lines) + "\n"
