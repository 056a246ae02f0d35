"""Let-hoisting into administrative normal form.

Application arguments, pair first components and type-application
receivers that are not variables are bound by an unannotated ``let``
right where they occur; the new variables keep the span of what they replace.  Inner terms are transformed first and left-to-right
evaluation order is preserved.
"""
from __future__ import annotations

from .syntax import (
    Abs, App, BinOp, If, Inl, Inr, Let, Loop, MatchPair, MatchSum, Pair, TAbs,
    TApp, Term, Type, Var, children, shift,
)


def anf(t: Term) -> Term:
    match t:
        case App(fn=f, arg=a):
            f, a = anf(f), anf(a)
            if isinstance(a, Var):
                return App(f, a, span=t.span)
            if isinstance(f, Var):
                return Let(None, a, App(shift(f, 1), Var(0, span=a.span), span=t.span), name="arg", span=t.span)
            # bind the function first so it is still evaluated first
            inner = Let(None, shift(a, 1), App(Var(1, span=f.span), Var(0, span=a.span), span=t.span),
                        name="arg", span=t.span)
            return Let(None, f, inner, name="fn", span=t.span)
        case Pair(first=a, second=b):
            a, b = anf(a), anf(b)
            if isinstance(a, Var):
                return Pair(a, b, span=t.span)
            return Let(None, a, Pair(Var(0, span=a.span), shift(b, 1), span=t.span), name="fst", span=t.span)
        case TApp(fn=f, arg=ty):
            f = anf(f)
            if isinstance(f, Var):
                return TApp(f, ty, span=t.span)
            return Let(None, f, TApp(Var(0, span=f.span), shift(ty, 1), span=t.span), name="poly", span=t.span)
        case Abs(annotation=a, body=b):
            return Abs(a, anf(b), name=t.name, span=t.span)
        case TAbs(lower=lo, upper=hi, body=b):
            return TAbs(lo, hi, anf(b), name=t.name, span=t.span)
        case Let(annotation=a, bound=x, body=b):
            return Let(a, anf(x), anf(b), name=t.name, span=t.span)
        case MatchPair(scrutinee=s, body=b):
            return MatchPair(anf(s), anf(b), names=t.names, span=t.span)
        case MatchSum(scrutinee=s, left=l, right=r):
            return MatchSum(anf(s), anf(l), anf(r), names=t.names, span=t.span)
        case Inl(other=o, payload=a):
            return Inl(o, anf(a), span=t.span)
        case Inr(other=o, payload=a):
            return Inr(o, anf(a), span=t.span)
        case BinOp(op=op, lhs=a, rhs=b):
            return BinOp(op, anf(a), anf(b), span=t.span)
        case If(cond=c, then=a, orelse=b):
            return If(anf(c), anf(a), anf(b), span=t.span)
        case Loop(init=a, body=b):
            return Loop(anf(a), anf(b), name=t.name, span=t.span)
    return t


def is_anf(t: Term) -> bool:
    """Whether every application argument, pair head and type-application receiver is a variable."""
    stack = [t]
    while stack:
        n = stack.pop()
        match n:
            case App(arg=a) if not isinstance(a, Var):
                return False
            case Pair(first=a) if not isinstance(a, Var):
                return False
            case TApp(fn=f) if not isinstance(f, Var):
                return False
        stack.extend(c for c, _, _ in children(n) if not isinstance(c, Type.__args__))
    return True
