"""Predicate entailment on top of the e-graph.

Terms are converted to nodes with free context variables as atoms.  A free
``Var(i)`` at depth ``d`` names the context binding at level ``d - 1 - i``,
so facts collected at different depths share atoms once shifted to a
common depth.
"""
from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable, Optional, Sequence

from ..syntax import (
    Abs, App, BinOp, BoolLit, Inl, Inr, IntLit, Let, MatchPair, Op, Pair,
    TApp, Term, UnitLit, Var, shift,
)
from .egraph import EGraph


class NotInFragment(ValueError):
    """The term uses a construct the solver cannot represent."""


def atom_name(level: int) -> tuple:
    return ("v", level)


class Builder:
    """Convert terms scoped at ``depth`` into e-graph nodes."""

    def __init__(self, graph: EGraph, depth: int = 0, names: Optional[Sequence[str]] = None):
        self.g = graph
        self.depth = depth
        self.names = names

    def _atom(self, level: int) -> int:
        if self.names is not None and 0 <= level < len(self.names):
            return self.g.atom(self.names[level])
        return self.g.atom(atom_name(level))

    def build(self, term: Term, scope: tuple = (), lam: int = 0) -> int:
        g = self.g
        match term:
            case UnitLit():
                return g.unit
            case BoolLit(value=b):
                return g.const(b)
            case IntLit(value=z):
                return g.const(z)
            case Var(index=i):
                if i < len(scope):
                    entry = scope[i]
                    if entry[0] == "lam":
                        return g.bvar(sum(1 for e in scope[:i] if e[0] == "lam"))
                    _, node, at = entry
                    return g.lift(node, lam - at)
                level = self.depth - 1 - (i - len(scope))
                if level < 0:
                    raise NotInFragment(f"variable {i} is not bound")
                return self._atom(level)
            case Abs(body=b):
                return g.lam(self.build(b, (("lam",),) + scope, lam + 1))
            case App(fn=f, arg=a):
                return g.app(self.build(f, scope, lam), self.build(a, scope, lam))
            case TApp(fn=f):
                return g.tapp(self.build(f, scope, lam))
            case Let(bound=x, body=b):
                n = self.build(x, scope, lam)
                return self.build(b, (("node", n, lam),) + scope, lam)
            case MatchPair(scrutinee=s, body=b):
                n = self.build(s, scope, lam)
                first, second = g.proj(1, n), g.proj(2, n)
                return self.build(b, (("node", second, lam), ("node", first, lam)) + scope, lam)
            case Pair(first=a, second=b):
                return g.pair(self.build(a, scope, lam), self.build(b, scope, lam))
            case Inl(payload=a):
                return g.inl(self.build(a, scope, lam))
            case Inr(payload=a):
                return g.inr(self.build(a, scope, lam))
            case BinOp(op=op, lhs=a, rhs=b):
                x, y = self.build(a, scope, lam), self.build(b, scope, lam)
                return self._binop(op, x, y)
        raise NotInFragment(f"{type(term).__name__} is outside the predicate fragment")

    def _binop(self, op: Op, x: int, y: int) -> int:
        g = self.g
        match op:
            case Op.ADD:
                return g.plus(x, y)
            case Op.SUB:
                return g.minus(x, y)
            case Op.MUL:
                return g.times(x, y)
            case Op.DIV:
                return g.div(x, y)
            case Op.MOD:
                return g.mod(x, y)
            case Op.LT:
                return g.lt(x, y)
            case Op.GT:
                return g.lt(y, x)
            case Op.LE:
                return g.le(x, y)
            case Op.GE:
                return g.le(y, x)
            case Op.EQ:
                return g.eq(x, y)
            case Op.NE:
                return g.ne(x, y)
            case Op.AND:
                return g.and_(x, y)
            case Op.OR:
                return g.or_(x, y)
        raise NotInFragment(f"unknown operator {op}")


def in_fragment(term: Term) -> bool:
    try:
        Builder(EGraph(merge_cap=1000), depth=1 << 20).build(term)
    except NotInFragment:
        return False
    return True


def disjuncts(term: Term) -> list[Term]:
    if isinstance(term, BinOp) and term.op is Op.OR:
        return disjuncts(term.lhs) + disjuncts(term.rhs)
    return [term]


def entails(
    facts: Iterable[Term],
    hyp: Term,
    goal: Term,
    *,
    depth: int = 0,
    names: Optional[Sequence[str]] = None,
    merge_cap: int = 10_000,
    max_splits: int = 8,
    max_cases: int = 256,
    trace: Optional[Callable[[str], None]] = None,
) -> bool:
    """Decide ``facts, hyp |= goal``.  ``False`` means "not shown", never "refuted".

    All terms are scoped at ``depth``.  When both ``hyp`` and ``goal`` are
    lambdas their binder is opened with a fresh atom.
    """
    facts = list(facts)
    if isinstance(hyp, Abs) and isinstance(goal, Abs):
        facts = [shift(f, 1) for f in facts]
        hyp, goal = hyp.body, goal.body
        depth += 1
        if names is not None:
            names = list(names) + [f"%sk{depth}"]
    splits: list[list[Term]] = []
    plain: list[Term] = []
    for f in facts + [hyp]:
        ds = disjuncts(f)
        (splits if len(ds) > 1 else plain).append(ds if len(ds) > 1 else f)
    if len(splits) > max_splits or math.prod(len(s) for s in splits) > max_cases:
        if trace:
            trace("case-split cap exceeded")
        return False
    for case_no, choice in enumerate(itertools.product(*splits)):
        g = EGraph(merge_cap=merge_cap, trace=trace)
        b = Builder(g, depth, names)
        if trace and splits:
            trace(f"case {case_no + 1}")
        goal_node = b.build(goal)
        for f in plain + list(choice):
            g.assert_true(b.build(f))
            if g.inconsistent or g.incomplete:
                break
        if g.incomplete:
            return False
        if g.inconsistent:
            continue
        if not g.is_true(goal_node):
            return False
    return True
