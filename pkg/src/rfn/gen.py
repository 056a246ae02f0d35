"""Seeded random generators for types, values, terms and solver queries.

Everything takes a ``random.Random`` so runs are reproducible.  The
well-typed program generator is type-directed over a small universe of
closed types and leans on refinements, unions and loops; its output is
filtered through the checker, so every program it returns is well typed.
"""
from __future__ import annotations

import random
from typing import Optional

from .checker import Checker, EMPTY, TypeCheckError
from .interp import VBool, VInl, VInr, VInt, VPair, VUnit, Value
from .syntax import (
    BOOL, BOT, INT32, TOP, UNIT,
    Abs, App, BinOp, BoolLit, If, Inl, Inr, Inter, IntLit, Let, Loop, MatchPair,
    MatchSum, Mu, Op, Pair, Pi, Refine, Sigma, Sum, TAbs, TApp, TFalse, TInt, TTrue,
    TUnit, TVar, Term, Type, Union, UnitLit, Var, unfold,
)

ARITH = (Op.ADD, Op.SUB, Op.MUL)
DIVISION = (Op.DIV, Op.MOD)
COMPARE = (Op.EQ, Op.NE, Op.LT, Op.LE, Op.GT, Op.GE)


# ---------------------------------------------------------------- predicates


def int_expr(rng: random.Random, nvars: int, depth: int, *, division: bool = False,
             const_range: int = 4) -> Term:
    """An Int32 expression over ``Var(0) .. Var(nvars - 1)``."""
    if depth <= 0 or rng.random() < 0.3:
        if nvars and rng.random() < 0.6:
            return Var(rng.randrange(nvars))
        return IntLit(rng.randint(-const_range, const_range))
    if division and rng.random() < 0.15:
        d = rng.choice([c for c in range(-const_range, const_range + 1) if c != 0])
        return BinOp(rng.choice(DIVISION), int_expr(rng, nvars, depth - 1, division=division), IntLit(d))
    if rng.random() < 0.3:
        # scaling by a constant keeps linear facts in reach of the solver
        return BinOp(Op.MUL, IntLit(rng.randint(-3, 3)), int_expr(rng, nvars, depth - 1, division=division))
    return BinOp(rng.choice(ARITH), int_expr(rng, nvars, depth - 1, division=division),
                 int_expr(rng, nvars, depth - 1, division=division))


def bool_expr(rng: random.Random, nvars: int, depth: int, *, division: bool = False) -> Term:
    """A boolean predicate: comparisons combined with ``&&``/``||``."""
    r = rng.random()
    if depth <= 0 or r < 0.55:
        if rng.random() < 0.05:
            return BoolLit(rng.random() < 0.5)
        return BinOp(rng.choice(COMPARE), int_expr(rng, nvars, 1, division=division),
                     int_expr(rng, nvars, 1, division=division))
    op = Op.AND if r < 0.8 else Op.OR
    return BinOp(op, bool_expr(rng, nvars, depth - 1, division=division),
                 bool_expr(rng, nvars, depth - 1, division=division))


def solver_query(rng: random.Random, natoms: int, *, division: bool = False) -> tuple[list[Term], Term]:
    """Facts and a goal over ``natoms`` int atoms (``Var(0)`` is the last atom).

    About half of the goals are rewrites or weakenings of a fact, so a fair
    share of queries are actually entailed.
    """
    facts = [bool_expr(rng, natoms, 2, division=division) for _ in range(rng.randint(0, 3))]
    if facts and rng.random() < 0.5:
        goal = _weaken(rng, rng.choice(facts), natoms)
    else:
        goal = bool_expr(rng, natoms, 2, division=division)
    return facts, goal


def _weaken(rng: random.Random, fact: Term, natoms: int) -> Term:
    match fact:
        case BinOp(op=Op.AND, lhs=a, rhs=b):
            return rng.choice((a, b))
        case BinOp(op=Op.LT | Op.GT | Op.EQ | Op.LE | Op.GE as op, lhs=a, rhs=b):
            choice = rng.random()
            if choice < 0.3:
                return BinOp(op, BinOp(Op.ADD, a, IntLit(0)), b)
            if choice < 0.6:
                flipped = {Op.LT: Op.GT, Op.GT: Op.LT, Op.EQ: Op.EQ, Op.LE: Op.GE, Op.GE: Op.LE}[op]
                return BinOp(flipped, b, a)
            return BinOp(Op.OR, fact, bool_expr(rng, natoms, 0))
    return fact


# ---------------------------------------------------------------- types and values


def first_order_type(rng: random.Random, nvars: int, depth: int, tvars: int = 0) -> Type:
    """A first-order type whose predicates may mention ``nvars`` outer int variables."""
    leaves = [UNIT, TTrue(), TFalse(), INT32, TOP, BOT, BOOL]
    if tvars:
        leaves.append(TVar(rng.randrange(tvars)))
    if depth <= 0:
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.2:
        return rng.choice(leaves)
    if r < 0.45:
        base = INT32 if rng.random() < 0.7 else first_order_type(rng, nvars, depth - 1, tvars)
        return Refine(base, bool_expr(rng, nvars + 1, 1))
    if r < 0.55:
        return Sigma(first_order_type(rng, nvars, depth - 1, tvars), first_order_type(rng, nvars + 1, depth - 1, tvars))
    if r < 0.65:
        return Sum(first_order_type(rng, nvars, depth - 1, tvars), first_order_type(rng, nvars, depth - 1, tvars))
    if r < 0.75:
        return Union(first_order_type(rng, nvars, depth - 1, tvars), first_order_type(rng, nvars, depth - 1, tvars))
    if r < 0.85:
        return Inter(first_order_type(rng, nvars, depth - 1, tvars), first_order_type(rng, nvars, depth - 1, tvars))
    # a list of some element type; the recursion variable sits under a constructor
    elem = first_order_type(rng, nvars, depth - 1, tvars + 1)
    return Mu(Sum(UNIT, Sigma(elem, TVar(0))))


def random_value(rng: random.Random, depth: int = 3) -> Value:
    r = rng.random()
    if depth <= 0 or r < 0.5:
        return rng.choice((VUnit(), VBool(True), VBool(False), VInt(rng.randint(-8, 8))))
    if r < 0.7:
        return VPair(random_value(rng, depth - 1), random_value(rng, depth - 1))
    if r < 0.85:
        return VInl(random_value(rng, depth - 1))
    return VInr(random_value(rng, depth - 1))


def value_of(rng: random.Random, ty: Type, depth: int = 4) -> Value:
    """A value shaped like ``ty``; refinements are not enforced, so membership may fail."""
    match ty:
        case TUnit():
            return VUnit()
        case TTrue():
            return VBool(True)
        case TFalse():
            return VBool(False)
        case TInt():
            return VInt(rng.randint(-8, 8))
        case Refine(base=b):
            return value_of(rng, b, depth)
        case Sigma(first=a, second=b):
            return VPair(value_of(rng, a, depth - 1), value_of(rng, b, depth - 1))
        case Sum(left=a, right=b):
            if depth <= 0 or rng.random() < 0.5:
                return VInl(value_of(rng, a, depth - 1))
            return VInr(value_of(rng, b, depth - 1))
        case Union(left=a, right=b):
            return value_of(rng, rng.choice((a, b)), depth)
        case Inter(left=a, right=b):
            return value_of(rng, rng.choice((a, b)), depth)
        case Mu(body=b):
            if depth <= 0:
                return VInl(VUnit())
            return value_of(rng, unfold(ty), depth - 1)
    return random_value(rng, 1)


# ---------------------------------------------------------------- untyped terms


def random_term(rng: random.Random, nvars: int = 0, depth: int = 4) -> Term:
    """An arbitrary closed-under-``nvars`` term; may be ill typed, stuck or divergent."""
    if depth <= 0:
        choices = [UnitLit(), BoolLit(rng.random() < 0.5), IntLit(rng.randint(-5, 5))]
        if nvars:
            choices.append(Var(rng.randrange(nvars)))
        return rng.choice(choices)
    d = depth - 1
    k = rng.randrange(13)
    match k:
        case 0:
            return Abs(TOP, random_term(rng, nvars + 1, d))
        case 1:
            return App(random_term(rng, nvars, d), random_term(rng, nvars, d))
        case 2:
            return Let(None, random_term(rng, nvars, d), random_term(rng, nvars + 1, d))
        case 3:
            return Pair(random_term(rng, nvars, d), random_term(rng, nvars, d))
        case 4:
            return MatchPair(random_term(rng, nvars, d), random_term(rng, nvars + 2, d))
        case 5:
            return MatchSum(random_term(rng, nvars, d), random_term(rng, nvars + 1, d), random_term(rng, nvars + 1, d))
        case 6:
            return Inl(TOP, random_term(rng, nvars, d))
        case 7:
            return Inr(TOP, random_term(rng, nvars, d))
        case 8:
            return BinOp(rng.choice(list(Op)), random_term(rng, nvars, d), random_term(rng, nvars, d))
        case 9:
            return If(random_term(rng, nvars, d), random_term(rng, nvars, d), random_term(rng, nvars, d))
        case 10:
            # a countdown loop, or an arbitrary body that may spin forever
            if rng.random() < 0.5:
                body = If(BinOp(Op.GT, Var(0), IntLit(0)),
                          Inl(TOP, BinOp(Op.SUB, Var(0), IntLit(1))), Inr(TOP, random_term(rng, nvars + 1, d)))
                return Loop(IntLit(rng.randint(-2, 40)), body)
            return Loop(random_term(rng, nvars, d), random_term(rng, nvars + 1, d))
        case 11:
            return TApp(TAbs(BOT, TOP, random_term(rng, nvars, d)), TOP)
    return random_term(rng, nvars, 0)


# ---------------------------------------------------------------- well-typed programs

POS = Refine(INT32, BinOp(Op.GT, Var(0), IntLit(0)))
NAT = Refine(INT32, BinOp(Op.GE, Var(0), IntLit(0)))
INT_OR_BOOL = Union(INT32, BOOL)
EITHER = Sum(INT32, BOOL)
PAIR = Sigma(INT32, INT32)
SUCC_PAIR = Sigma(INT32, Refine(INT32, BinOp(Op.EQ, Var(0), BinOp(Op.ADD, Var(1), IntLit(1)))))
LIST = Mu(Sum(UNIT, Sigma(INT32, TVar(0))))
POS_LIST = Mu(Sum(UNIT, Sigma(POS, TVar(0))))
INT_FUN = Pi(INT32, INT32)
NAT_FUN = Pi(INT32, NAT)

UNIVERSE = (INT32, POS, NAT, BOOL, UNIT, INT_OR_BOOL, EITHER, PAIR, SUCC_PAIR, LIST, POS_LIST, INT_FUN, NAT_FUN)
_SUBS = {INT32: (POS, NAT), NAT: (POS,), BOOL: (TTrue(), TFalse()), INT_OR_BOOL: (INT32, POS, NAT, BOOL),
         LIST: (POS_LIST,)}


class ProgramGen:
    """Type-directed generator of closed programs over ``UNIVERSE``."""

    def __init__(self, rng: random.Random, max_depth: int = 4):
        self.rng = rng
        self.max_depth = max_depth

    def program(self) -> tuple[Term, Type]:
        ty = self.rng.choice(UNIVERSE)
        return self.term((), ty, self.max_depth), ty

    def _vars(self, ctx: tuple, ty: Type) -> list[int]:
        ok = (ty,) + _SUBS.get(ty, ())
        return [i for i, t in enumerate(ctx) if t in ok]

    def term(self, ctx: tuple, ty: Type, depth: int) -> Term:
        rng = self.rng
        vs = self._vars(ctx, ty)
        if vs and rng.random() < 0.25:
            return Var(rng.choice(vs))
        if depth > 0 and rng.random() < 0.35:
            return self.eliminate(ctx, ty, depth - 1)
        return self.introduce(ctx, ty, depth)

    def introduce(self, ctx: tuple, ty: Type, depth: int) -> Term:
        rng = self.rng
        d = max(depth - 1, 0)
        small = depth <= 0
        if ty == INT32:
            if small or rng.random() < 0.4:
                return IntLit(rng.randint(-20, 20))
            return BinOp(rng.choice(ARITH), self.term(ctx, INT32, d), self.term(ctx, INT32, d))
        if ty in (POS, NAT):
            floor = 1 if ty == POS else 0
            if small or rng.random() < 0.4:
                return IntLit(rng.randint(floor, 50))
            if rng.random() < 0.5:
                # guard a plain int: let x = e in if x >= floor then x else floor
                x = self.term(ctx, INT32, d)
                return Let(None, x, If(BinOp(Op.GE, Var(0), IntLit(floor)), Var(0), IntLit(floor)), name="x")
            # count down to a value known to clear the floor
            body = If(BinOp(Op.GT, Var(0), IntLit(floor + 3)),
                      Inl(BOT, BinOp(Op.SUB, Var(0), IntLit(1))),
                      If(BinOp(Op.GE, Var(0), IntLit(floor)), Inr(BOT, Var(0)), Inr(BOT, IntLit(floor))))
            return Loop(self.term(ctx, INT32, d), body, name="s")
        if ty == BOOL:
            if small or rng.random() < 0.3:
                return BoolLit(rng.random() < 0.5)
            if rng.random() < 0.7:
                return BinOp(rng.choice(COMPARE), self.term(ctx, INT32, d), self.term(ctx, INT32, d))
            return BinOp(rng.choice((Op.AND, Op.OR)), self.term(ctx, BOOL, d), self.term(ctx, BOOL, d))
        if ty == UNIT:
            return UnitLit()
        if ty == INT_OR_BOOL:
            if not small and rng.random() < 0.4:
                return If(self.term(ctx, BOOL, d), self.term(ctx, INT32, d), self.term(ctx, BOOL, d))
            return self.term(ctx, rng.choice((INT32, POS, BOOL)), d)
        if ty == EITHER:
            if rng.random() < 0.5:
                return Inl(BOOL, self.term(ctx, INT32, d))
            return Inr(rng.choice((INT32, BOT)), self.term(ctx, BOOL, d))
        if ty == PAIR:
            first = self.term(ctx, INT32, d)
            return Let(None, first, Pair(Var(0), self.term((INT32,) + ctx, INT32, d)), name="a")
        if ty == SUCC_PAIR:
            first = self.term(ctx, INT32, d)
            return Let(None, first, Pair(Var(0), BinOp(Op.ADD, Var(0), IntLit(1))), name="a")
        if ty in (LIST, POS_LIST):
            elem = INT32 if ty == LIST else POS
            cell = Sigma(elem, ty)
            if small or rng.random() < 0.35:
                return Inl(cell, UnitLit())
            head = self.term(ctx, elem, d)
            tail = self.term((elem,) + ctx, ty, d)
            return Let(None, head, Inr(UNIT, Pair(Var(0), tail)), name="h")
        if ty in (INT_FUN, NAT_FUN):
            return Abs(INT32, self.term((INT32,) + ctx, ty.codomain, d), name="x")
        raise ValueError(f"type outside the generator universe: {ty!r}")

    def eliminate(self, ctx: tuple, ty: Type, d: int) -> Term:
        """Build ``ty`` by consuming some other value."""
        rng = self.rng
        k = rng.randrange(6)
        up = (None,)  # placeholder slot for a binder whose type we do not track
        if k == 0:
            s = rng.choice(UNIVERSE)
            ann = s if rng.random() < 0.5 else None
            return Let(ann, self.term(ctx, s, d), self.term((s,) + ctx, ty, d), name="y")
        if k == 1:
            return If(self.term(ctx, BOOL, d), self.term(ctx, ty, d), self.term(ctx, ty, d))
        if k == 2:
            s = self.term(ctx, EITHER, d)
            return Let(None, s, MatchSum(Var(0), self.term((INT32,) + up + ctx, ty, d),
                                         self.term((BOOL,) + up + ctx, ty, d), names=("l", "r")), name="e")
        if k == 3:
            p = self.term(ctx, PAIR, d)
            return Let(None, p, MatchPair(Var(0), self.term((INT32, INT32) + up + ctx, ty, d),
                                          names=("p", "q")), name="pr")
        if k == 4 and ty in (INT32, NAT, INT_OR_BOOL):
            fty = NAT_FUN if ty == NAT else rng.choice((INT_FUN, NAT_FUN))
            f = self.term(ctx, fty, d)
            a = self.term((fty,) + ctx, INT32, d)
            return Let(None, f, Let(None, a, App(Var(1), Var(0)), name="arg"), name="f")
        # a bounded countdown that hands over to the target type
        body = If(BinOp(Op.GT, Var(0), IntLit(0)),
                  Inl(BOT, BinOp(Op.SUB, Var(0), IntLit(1))),
                  Inr(BOT, self.term((INT32,) + ctx, ty, d)))
        return Loop(IntLit(rng.randint(-2, 30)), body, name="n")


def well_typed_program(rng: random.Random, max_depth: int = 4, attempts: int = 200,
                       checker: Optional[Checker] = None) -> tuple[Term, Type]:
    """A closed program accepted by the checker at the returned type."""
    gen = ProgramGen(rng, max_depth)
    checker = checker or Checker()
    for _ in range(attempts):
        t, ty = gen.program()
        try:
            checker.check(EMPTY, t, ty)
        except TypeCheckError:
            continue
        return t, ty
    raise RuntimeError("no well-typed program found")
