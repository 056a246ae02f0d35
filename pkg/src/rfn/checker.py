"""Bidirectional algorithmic typing and subtyping.

``infer`` synthesizes, ``check`` pushes an expected type into binding
forms and constructors and falls back to subsumption, retrying with a
selfified type when the plain attempt fails.  Predicate implication is
delegated to the e-graph solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .solver.entail import entails
from .syntax import (
    BOOL, BOT, FALSE, INT32, POSITIVE, TOP, TRUE, UNIT,
    ARITH_OPS, BOOL_OPS, COMPARE_OPS, EQUALITY_OPS,
    Abs, App, BinOp, BoolLit, Bot, Fact, Forall, If, Inl, Inr, Inter, IntLit,
    Let, Loop, MatchPair, MatchSum, Mu, Name, Op, Pair, Pi, Refine, Sigma, Sum,
    TAbs, TApp, TFalse, TInt, TName, TTrue, TUnit, TVar, Term, TermBind, Top,
    Type, TypeBound, Union, UnitLit, Var,
    avoid, firstorder, open_term, shift, shift_both, spos, subst_type, unfold,
)

ERROR_KINDS = (
    "unbound-variable", "not-a-function", "not-a-pair", "not-a-sum",
    "argument-not-variable", "bound-violation", "subtype-failure",
    "binop-incompat", "predicate-not-entailed", "ill-formed-mu",
)

_FRAGMENT = (UnitLit, BoolLit, IntLit, Var, Abs, App, TApp, Let, MatchPair, Pair, Inl, Inr, BinOp)


def in_fragment(term: Term) -> bool:
    """Syntactic membership in the solver's predicate fragment."""
    stack = [term]
    while stack:
        t = stack.pop()
        match t:
            case UnitLit() | BoolLit() | IntLit() | Var():
                pass
            case Abs(body=b) | TApp(fn=b) | Inl(payload=b) | Inr(payload=b):
                stack.append(b)
            case App(fn=a, arg=b) | Let(bound=a, body=b) | MatchPair(scrutinee=a, body=b) \
                    | Pair(first=a, second=b) | BinOp(lhs=a, rhs=b):
                stack.extend((a, b))
            case _:
                return False
    return True


class TypeCheckError(Exception):
    def __init__(self, kind: str, message: str, span=None,
                 expected: Optional[Type] = None, actual: Optional[Type] = None):
        assert kind in ERROR_KINDS, kind
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span
        self.expected = expected
        self.actual = actual

    def __repr__(self):
        return f"TypeCheckError({self.kind!r}, {self.message!r})"


# ---------------------------------------------------------------- contexts


@dataclass(frozen=True)
class Context:
    """Ordered context entries plus the current term and type binder counts."""

    entries: tuple = ()
    depth: int = 0
    tdepth: int = 0

    def bind(self, ty: Type, name: str = "x") -> "Context":
        entry = TermBind(ty, self.depth, self.tdepth, name)
        return Context(self.entries + (entry,), self.depth + 1, self.tdepth)

    def bound(self, lower: Type, upper: Type, name: str = "X") -> "Context":
        entry = TypeBound(lower, upper, self.depth, self.tdepth, name)
        return Context(self.entries + (entry,), self.depth, self.tdepth + 1)

    def fact(self, lhs: Term, rhs: Term, lhs_depth: Optional[int] = None,
             rhs_depth: Optional[int] = None) -> "Context":
        ld = self.depth if lhs_depth is None else lhs_depth
        rd = self.depth if rhs_depth is None else rhs_depth
        entry = Fact(lhs, ld, rhs, rd, self.tdepth)
        return Context(self.entries + (entry,), self.depth, self.tdepth)

    def lookup(self, i: int) -> Type:
        level = self.depth - 1 - i
        if i < 0 or level < 0:
            raise TypeCheckError("unbound-variable", f"term variable #{i} is not bound")
        for entry in reversed(self.entries):
            if isinstance(entry, TermBind) and entry.depth == level:
                return shift_both(entry.type, self.depth - level, self.tdepth - entry.tdepth)
        raise TypeCheckError("unbound-variable", f"term variable #{i} is not bound")

    def name_of(self, i: int) -> str:
        level = self.depth - 1 - i
        for entry in self.entries:
            if isinstance(entry, TermBind) and entry.depth == level:
                return entry.name
        return f"#{i}"

    def bounds(self, j: int) -> tuple[Type, Type]:
        level = self.tdepth - 1 - j
        if j < 0 or level < 0:
            raise TypeCheckError("unbound-variable", f"type variable #{j} is not bound")
        for entry in reversed(self.entries):
            if isinstance(entry, TypeBound) and entry.tdepth == level:
                dt, de = self.depth - entry.depth, self.tdepth - level
                return shift_both(entry.lower, dt, de), shift_both(entry.upper, dt, de)
        raise TypeCheckError("unbound-variable", f"type variable #{j} is not bound")


EMPTY = Context()


def join(a: Type, b: Type) -> Type:
    if a == b or isinstance(b, Bot):
        return a
    if isinstance(a, Bot):
        return b
    return Union(a, b)


def _conj(p: Optional[Term], q: Optional[Term]) -> Optional[Term]:
    if p is None:
        return q
    if q is None:
        return p
    return BinOp(Op.AND, p, q)


def predicates_of(ctx: Context, ty: Type, subject: Term, fuel: int = 16) -> Optional[Term]:
    """The refinement information of ``ty`` instantiated at ``subject``."""
    if fuel <= 0:
        return None
    match ty:
        case Refine(base=b, pred=p):
            return _conj(open_term(p, subject), predicates_of(ctx, b, subject, fuel - 1))
        case Inter(left=a, right=b):
            return _conj(predicates_of(ctx, a, subject, fuel - 1), predicates_of(ctx, b, subject, fuel - 1))
        case Union(left=a, right=b):
            pa = predicates_of(ctx, a, subject, fuel - 1)
            pb = predicates_of(ctx, b, subject, fuel - 1)
            if pa is None or pb is None:
                return None
            return BinOp(Op.OR, pa, pb)
        case TTrue():
            return BinOp(Op.EQ, subject, BoolLit(True))
        case TFalse():
            return BinOp(Op.EQ, subject, BoolLit(False))
        case TVar(index=j):
            try:
                _, upper = ctx.bounds(j)
            except TypeCheckError:
                return None
            return predicates_of(ctx, upper, subject, fuel - 1)
    return None


def solver_facts(ctx: Context) -> list[Term]:
    """Every fact in scope, as predicates scoped at the context's depth."""
    d = ctx.depth
    out: list[Term] = []
    seen = set()
    for entry in ctx.entries:
        fact = None
        match entry:
            case Fact(lhs=l, lhs_depth=ld, rhs=r, rhs_depth=rd):
                fact = BinOp(Op.EQ, shift(l, d - ld), shift(r, d - rd))
            case TermBind(type=ty, depth=level, tdepth=te):
                here = shift_both(ty, d - level, ctx.tdepth - te)
                fact = predicates_of(ctx, here, Var(d - 1 - level))
        if fact is not None and fact not in seen and in_fragment(fact):
            seen.add(fact)
            out.append(fact)
    return out


# ---------------------------------------------------------------- operators

_KIND = {TUnit: "unit", TTrue: "bool", TFalse: "bool", TInt: "int", Bot: "bot"}


def operand_kind(ctx: Optional[Context], ty: Type, fuel: int = 16) -> Optional[str]:
    if fuel <= 0:
        return None
    match ty:
        case Refine(base=b):
            return operand_kind(ctx, b, fuel - 1)
        case TVar(index=j) if ctx is not None:
            try:
                return operand_kind(ctx, ctx.bounds(j)[1], fuel - 1)
            except TypeCheckError:
                return None
        case Union(left=a, right=b):
            ka, kb = operand_kind(ctx, a, fuel - 1), operand_kind(ctx, b, fuel - 1)
            if ka == "bot":
                return kb
            if kb == "bot":
                return ka
            return ka if ka == kb else None
        case Inter(left=a, right=b):
            ka, kb = operand_kind(ctx, a, fuel - 1), operand_kind(ctx, b, fuel - 1)
            if "bot" in (ka, kb):
                return "bot"
            return ka or kb
        case Mu(body=b) if spos(0, b):
            return operand_kind(ctx, unfold(ty), fuel - 1)
    return _KIND.get(type(ty))


def compat_result(op: Op, operand: Type, ctx: Optional[Context] = None) -> Optional[Type]:
    """Result type of ``op`` on an operand of type ``operand``; ``None`` if incompatible."""
    kind = operand_kind(ctx, operand)
    if kind is None:
        return None
    if op in ARITH_OPS:
        return INT32 if kind in ("int", "bot") else None
    if op in COMPARE_OPS:
        return BOOL if kind in ("int", "bot") else None
    if op in BOOL_OPS:
        return BOOL if kind in ("bool", "bot") else None
    if op in EQUALITY_OPS:
        return BOOL
    return None


def _binop_result(ctx: Context, op: Op, a: Type, b: Type) -> Optional[Type]:
    ka, kb = operand_kind(ctx, a), operand_kind(ctx, b)
    if ka is None or kb is None:
        return None
    if op in EQUALITY_OPS:
        return BOOL
    if ka != kb and "bot" not in (ka, kb):
        return None
    return compat_result(op, a if ka != "bot" else b, ctx)


# ---------------------------------------------------------------- the checker


@dataclass
class Failure:
    lhs: Type
    rhs: Type
    reason: str
    depth: int


@dataclass
class Checker:
    """One checking session: solver options, statistics and the last failure."""

    merge_cap: int = 10_000
    mu_cap: int = 32
    trace: Optional[Callable[[str], None]] = None
    queries: int = 0
    failure: Optional[Failure] = None
    _unfolds: int = field(default=0, repr=False)

    # ------------------------------------------------------------ exposure

    def _expose(self, ctx: Context, ty: Type, cls, fuel: int = 32):
        if fuel <= 0:
            return None
        if isinstance(ty, cls):
            return ty
        match ty:
            case Refine(base=b):
                return self._expose(ctx, b, cls, fuel - 1)
            case TVar(index=j):
                return self._expose(ctx, ctx.bounds(j)[1], cls, fuel - 1)
            case Inter(left=a, right=b):
                return self._expose(ctx, a, cls, fuel - 1) or self._expose(ctx, b, cls, fuel - 1)
            case Mu(body=b):
                if not spos(0, b):
                    raise TypeCheckError("ill-formed-mu", "recursive type is not strictly positive", actual=ty)
                return self._expose(ctx, unfold(ty), cls, fuel - 1)
            case Bot():
                if cls is Pi:
                    return Pi(TOP, BOT)
                if cls is Sigma:
                    return Sigma(BOT, BOT)
                if cls is Sum:
                    return Sum(BOT, BOT)
                return Forall(BOT, TOP, BOT)
            case Union(left=a, right=b):
                ea = self._expose(ctx, a, cls, fuel - 1)
                eb = self._expose(ctx, b, cls, fuel - 1)
                if ea is None or eb is None:
                    return None
                if cls is Sum:
                    return Sum(join(ea.left, eb.left), join(ea.right, eb.right))
                if cls is Sigma:
                    return Sigma(join(ea.first, eb.first), join(ea.second, eb.second))
                if cls is Pi:
                    return Pi(Inter(ea.domain, eb.domain), join(ea.codomain, eb.codomain))
        return None

    def _need(self, ctx: Context, ty: Type, cls, kind: str, term) -> Type:
        found = self._expose(ctx, ty, cls)
        if found is None:
            what = {Pi: "function", Sigma: "pair", Sum: "sum", Forall: "polymorphic value"}[cls]
            raise TypeCheckError(kind, f"expected a {what}", span=term.span, actual=ty)
        return found

    # ------------------------------------------------------------ inference

    def infer(self, ctx: Context, t: Term) -> Type:
        match t:
            case UnitLit():
                return UNIT
            case BoolLit(value=b):
                return TRUE if b else FALSE
            case IntLit():
                return INT32
            case Var(index=i):
                try:
                    return ctx.lookup(i)
                except TypeCheckError as e:
                    e.span = t.span
                    raise
            case Name(name=n):
                raise TypeCheckError("unbound-variable", f"unbound variable {n}", span=t.span)
            case Abs(annotation=a, body=b):
                self.wf(ctx, a, t)
                return Pi(a, self.infer(ctx.bind(a, t.name), b), name=t.name)
            case App(fn=f, arg=y):
                if not isinstance(y, Var):
                    raise TypeCheckError("argument-not-variable",
                                         "the argument of an application must be a variable", span=y.span)
                pi = self._need(ctx, self.infer(ctx, f), Pi, "not-a-function", f)
                self.check(ctx, y, pi.domain)
                return open_term(pi.codomain, y)
            case TAbs(lower=lo, upper=hi, body=b):
                self.wf(ctx, lo, t)
                self.wf(ctx, hi, t)
                return Forall(lo, hi, self.infer(ctx.bound(lo, hi, t.name), b), name=t.name)
            case TApp(fn=f, arg=a):
                self.wf(ctx, a, t)
                fa = self._need(ctx, self.infer(ctx, f), Forall, "not-a-function", f)
                for lhs, rhs in ((fa.lower, a), (a, fa.upper)):
                    if not self.subtype(ctx, lhs, rhs):
                        raise TypeCheckError("bound-violation", "type argument violates the bounds",
                                             span=t.span, expected=rhs, actual=lhs)
                return subst_type(fa.body, 0, a)
            case Let(body=b):
                inner, _ = self._let_context(ctx, t)
                return avoid(self.infer(inner, b), 0, POSITIVE)
            case Pair(first=y, second=b):
                if not isinstance(y, Var):
                    raise TypeCheckError("argument-not-variable",
                                         "the first component of a pair must be a variable", span=y.span)
                return Sigma(self.infer(ctx, y), shift(self.infer(ctx, b), 1))
            case MatchPair(body=b):
                inner = self._match_pair_context(ctx, t)
                return avoid(avoid(self.infer(inner, b), 0, POSITIVE), 0, POSITIVE)
            case MatchSum(left=l, right=r):
                lctx, rctx = self._match_sum_contexts(ctx, t)
                bl = avoid(self.infer(lctx, l), 0, POSITIVE)
                br = avoid(self.infer(rctx, r), 0, POSITIVE)
                return join(bl, br)
            case Inl(other=o, payload=a):
                self.wf(ctx, o, t)
                return Sum(self.infer(ctx, a), o)
            case Inr(other=o, payload=a):
                self.wf(ctx, o, t)
                return Sum(o, self.infer(ctx, a))
            case BinOp(op=op, lhs=a, rhs=b):
                ta, tb = self.infer(ctx, a), self.infer(ctx, b)
                res = _binop_result(ctx, op, ta, tb)
                if res is None:
                    raise TypeCheckError("binop-incompat", f"operator {op} does not apply to these operands",
                                         span=t.span, expected=ta, actual=tb)
                return res
            case If(cond=c, then=a, orelse=b):
                self.check(ctx, c, BOOL)
                ta = self.infer(ctx.fact(c, BoolLit(True)), a)
                tb = self.infer(ctx.fact(c, BoolLit(False)), b)
                return join(ta, tb)
            case Loop(init=a, body=b):
                state = self.infer(ctx, a)
                inner = ctx.bind(state, t.name)
                out = self._need(inner, self.infer(inner, b), Sum, "not-a-sum", b)
                if not self.subtype(inner, out.left, shift(state, 1)):
                    self._raise_subtype(b, shift(state, 1), out.left)
                return avoid(out.right, 0, POSITIVE)
        raise TypeError(f"not a term: {t!r}")

    def _let_context(self, ctx: Context, t: Let) -> tuple[Context, Type]:
        if t.annotation is not None:
            self.wf(ctx, t.annotation, t)
            self.check(ctx, t.bound, t.annotation)
            ty = t.annotation
        else:
            ty = self.infer(ctx, t.bound)
        inner = ctx.bind(ty, t.name)
        if in_fragment(t.bound):
            inner = inner.fact(Var(0), t.bound, rhs_depth=ctx.depth)
        return inner, ty

    def _match_pair_context(self, ctx: Context, t: MatchPair) -> Context:
        sig = self._need(ctx, self.infer(ctx, t.scrutinee), Sigma, "not-a-pair", t.scrutinee)
        inner = ctx.bind(sig.first, t.names[0]).bind(sig.second, t.names[1])
        if in_fragment(t.scrutinee):
            inner = inner.fact(t.scrutinee, Pair(Var(1), Var(0)), lhs_depth=ctx.depth)
        return inner

    def _match_sum_contexts(self, ctx: Context, t: MatchSum) -> tuple[Context, Context]:
        sm = self._need(ctx, self.infer(ctx, t.scrutinee), Sum, "not-a-sum", t.scrutinee)
        lctx = ctx.bind(sm.left, t.names[0])
        rctx = ctx.bind(sm.right, t.names[1])
        if in_fragment(t.scrutinee):
            lctx = lctx.fact(t.scrutinee, Inl(TOP, Var(0)), lhs_depth=ctx.depth)
            rctx = rctx.fact(t.scrutinee, Inr(TOP, Var(0)), lhs_depth=ctx.depth)
        return lctx, rctx

    # ------------------------------------------------------------ checking

    def check(self, ctx: Context, t: Term, expected: Type) -> None:
        match expected:
            case Top():
                self.infer(ctx, t)
                return
            case Inter(left=a, right=b):
                self.check(ctx, t, a)
                self.check(ctx, t, b)
                return
        match t:
            case Let(body=b):
                inner, _ = self._let_context(ctx, t)
                self.check(inner, b, shift(expected, 1))
                return
            case If(cond=c, then=a, orelse=b):
                self.check(ctx, c, BOOL)
                self.check(ctx.fact(c, BoolLit(True)), a, expected)
                self.check(ctx.fact(c, BoolLit(False)), b, expected)
                return
            case MatchPair(body=b):
                self.check(self._match_pair_context(ctx, t), b, shift(expected, 2))
                return
            case MatchSum(left=l, right=r):
                lctx, rctx = self._match_sum_contexts(ctx, t)
                self.check(lctx, l, shift(expected, 1))
                self.check(rctx, r, shift(expected, 1))
                return
            case Loop(init=a, body=b):
                state = self.infer(ctx, a)
                self.check(ctx.bind(state, t.name), b, Sum(shift(state, 1), shift(expected, 1)))
                return
        if isinstance(expected, Union) and not isinstance(t, Var):
            for side in (expected.left, expected.right):
                try:
                    self.check(ctx, t, side)
                    return
                except TypeCheckError:
                    pass
        shape = expected
        if isinstance(shape, Mu) and isinstance(t, (Abs, TAbs, Pair, Inl, Inr)) and spos(0, shape.body):
            shape = unfold(shape)
        match t, shape:
            case Abs(annotation=a, body=b), Pi(domain=d, codomain=c):
                self.wf(ctx, a, t)
                if not self.subtype(ctx, d, a):
                    self._raise_subtype(t, a, d)
                self.check(ctx.bind(d, t.name), b, c)
                return
            case TAbs(lower=lo, upper=hi, body=b), Forall(lower=lo2, upper=hi2, body=c):
                if not (self.subtype(ctx, lo, lo2) and self.subtype(ctx, hi2, hi)):
                    raise TypeCheckError("bound-violation", "type abstraction bounds are incompatible",
                                         span=t.span, expected=shape, actual=self.infer(ctx, t))
                self.check(ctx.bound(lo2, hi2, t.name), b, c)
                return
            case Pair(first=y, second=b), Sigma(first=a, second=c):
                if not isinstance(y, Var):
                    raise TypeCheckError("argument-not-variable",
                                         "the first component of a pair must be a variable", span=y.span)
                self.check(ctx, y, a)
                self.check(ctx, b, open_term(c, y))
                return
            case Inl(other=o, payload=a), Sum(left=l, right=r):
                self.wf(ctx, o, t)
                self.check(ctx, a, l)
                if not self.subtype(ctx, o, r):
                    self._raise_subtype(t, r, o)
                return
            case Inr(other=o, payload=a), Sum(left=l, right=r):
                self.wf(ctx, o, t)
                self.check(ctx, a, r)
                if not self.subtype(ctx, o, l):
                    self._raise_subtype(t, l, o)
                return
        actual = self.infer(ctx, t)
        if self.subtype(ctx, actual, expected):
            return
        first = self.failure
        if (firstorder(actual) and in_fragment(t)) or isinstance(t, Var):
            if self.subtype(ctx, actual, expected, self_term=t):
                return
        self.failure = first or self.failure
        self._raise_subtype(t, expected, actual)

    def _raise_subtype(self, t, expected: Type, actual: Type):
        reason = self.failure.reason if self.failure else "subtype"
        kind = "predicate-not-entailed" if reason == "predicate" else "subtype-failure"
        msg = "predicate not entailed" if kind == "predicate-not-entailed" else "type mismatch"
        raise TypeCheckError(kind, msg, span=getattr(t, "span", None), expected=expected, actual=actual)

    def wf(self, ctx: Context, ty: Type, where) -> None:
        """Annotations must mention only bound type variables."""
        stack = [(ty, 0)]
        while stack:
            node, e = stack.pop()
            match node:
                case TVar(index=j):
                    if j - e >= ctx.tdepth:
                        raise TypeCheckError("unbound-variable", f"type variable #{j - e} is not bound",
                                             span=where.span)
                case TName(name=n):
                    raise TypeCheckError("unbound-variable", f"unbound type variable {n}", span=where.span)
                case Forall(lower=lo, upper=hi, body=b):
                    stack.extend(((lo, e), (hi, e), (b, e + 1)))
                case Mu(body=b):
                    stack.append((b, e + 1))
                case Pi(domain=a, codomain=b) | Sigma(first=a, second=b) | Sum(left=a, right=b) \
                        | Union(left=a, right=b) | Inter(left=a, right=b):
                    stack.extend(((a, e), (b, e)))
                case Refine(base=b):
                    stack.append((b, e))

    # ------------------------------------------------------------ subtyping

    def subtype(self, ctx: Context, lhs: Type, rhs: Type, self_term: Optional[Term] = None) -> bool:
        """Algorithmic ``ctx |- lhs <: rhs``.  On failure ``self.failure`` names an obligation."""
        self._unfolds = 0
        self.failure = None
        ok = self._sub(ctx, lhs, rhs, self_term, (), ())
        if ok:
            self.failure = None
        return ok

    def _fail(self, ctx: Context, a: Type, b: Type, reason: str) -> bool:
        if self.failure is None:
            self.failure = Failure(a, b, reason, ctx.depth)
        return False

    def _assumed(self, ctx: Context, a: Type, b: Type, active: tuple) -> bool:
        for d, e, x, y in active:
            dd, de = ctx.depth - d, ctx.tdepth - e
            if dd < 0 or de < 0:
                continue
            if shift_both(x, dd, de) == a and shift_both(y, dd, de) == b:
                return True
        return False

    def _sub(self, ctx: Context, a: Type, b: Type, st: Optional[Term], active: tuple, pending: tuple) -> bool:
        if a == b or isinstance(b, Top) or isinstance(a, Bot):
            return True
        sub = self._sub
        if isinstance(a, Union):
            return sub(ctx, a.left, b, st, active, pending) and sub(ctx, a.right, b, st, active, pending)
        if isinstance(b, Inter):
            return sub(ctx, a, b.left, st, active, pending) and sub(ctx, a, b.right, st, active, pending)
        if isinstance(b, Union):
            if sub(ctx, a, b.left, st, active, pending) or sub(ctx, a, b.right, st, active, pending):
                return True
        if isinstance(b, Refine):
            if not sub(ctx, a, b.base, st, active, pending):
                return False
            return self._entails(ctx, a, b.pred, st) or self._fail(ctx, a, b, "predicate")
        if isinstance(a, Refine):
            return sub(ctx, a.base, b, st, active, pending)
        if isinstance(a, Inter):
            if sub(ctx, a.left, b, st, active, pending) or sub(ctx, a.right, b, st, active, pending):
                return True
        if isinstance(a, Mu) or isinstance(b, Mu):
            return self._sub_mu(ctx, a, b, st, active, pending)
        if isinstance(a, TVar):
            if sub(ctx, ctx.bounds(a.index)[1], b, st, active, pending):
                return True
        if isinstance(b, TVar):
            if sub(ctx, a, ctx.bounds(b.index)[0], st, active, pending):
                return True
        # structural rules; coinductive assumptions become usable below a constructor
        act = active + pending
        match a, b:
            case Pi(domain=a1, codomain=a2), Pi(domain=b1, codomain=b2):
                return sub(ctx, b1, a1, None, act, ()) and sub(ctx.bind(b1, b.name), a2, b2, None, act, ())
            case Sigma(first=a1, second=a2), Sigma(first=b1, second=b2):
                return sub(ctx, a1, b1, None, act, ()) and sub(ctx.bind(a1, a.name), a2, b2, None, act, ())
            case Sum(left=a1, right=a2), Sum(left=b1, right=b2):
                return sub(ctx, a1, b1, None, act, ()) and sub(ctx, a2, b2, None, act, ())
            case Forall(lower=l1, upper=u1, body=a1), Forall(lower=l2, upper=u2, body=b1):
                return (sub(ctx, l1, l2, None, act, ()) and sub(ctx, u2, u1, None, act, ())
                        and sub(ctx.bound(l2, u2, b.name), a1, b1, None, act, ()))
        return self._fail(ctx, a, b, "structure")

    def _sub_mu(self, ctx, a, b, st, active, pending) -> bool:
        if self._assumed(ctx, a, b, active):
            return True
        if self._unfolds >= self.mu_cap:
            return self._fail(ctx, a, b, "mu-cap")
        self._unfolds += 1
        pending = pending + ((ctx.depth, ctx.tdepth, a, b),)
        if isinstance(a, Mu) and spos(0, a.body):
            if self._sub(ctx, unfold(a), b, st, active, pending):
                return True
        if isinstance(b, Mu) and spos(0, b.body):
            if self._sub(ctx, a, unfold(b), st, active, pending):
                return True
        if (isinstance(a, Mu) and not spos(0, a.body)) or (isinstance(b, Mu) and not spos(0, b.body)):
            return self._fail(ctx, a, b, "not-strictly-positive")
        return self._fail(ctx, a, b, "structure")

    def _entails(self, ctx: Context, lhs: Type, pred: Term, st: Optional[Term]) -> bool:
        if not in_fragment(pred):
            return False
        inner = ctx.bind(lhs, "v")
        if st is not None:
            inner = inner.fact(Var(0), st, rhs_depth=ctx.depth)
        self.queries += 1
        names = self._names(inner)
        return entails(solver_facts(inner), BoolLit(True), pred, depth=inner.depth,
                       names=names, merge_cap=self.merge_cap, trace=self.trace)

    @staticmethod
    def _names(ctx: Context) -> list[str]:
        names = [None] * ctx.depth
        for entry in ctx.entries:
            if isinstance(entry, TermBind):
                names[entry.depth] = f"{entry.name}@{entry.depth}"
        return names


# ---------------------------------------------------------------- conveniences


def infer(ctx: Context, t: Term, checker: Optional[Checker] = None) -> Type:
    return (checker or Checker()).infer(ctx, t)


def check(ctx: Context, t: Term, expected: Type, checker: Optional[Checker] = None) -> None:
    (checker or Checker()).check(ctx, t, expected)


def subtype(ctx: Context, lhs: Type, rhs: Type, checker: Optional[Checker] = None) -> bool:
    return (checker or Checker()).subtype(ctx, lhs, rhs)


def well_typed(t: Term, expected: Optional[Type] = None) -> bool:
    try:
        if expected is None:
            infer(EMPTY, t)
        else:
            check(EMPTY, t, expected)
    except TypeCheckError:
        return False
    return True
