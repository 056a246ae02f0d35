"""Terms, types and context entries of the core calculus.

Binding uses de Bruijn indices with two independent namespaces: term
variables (``Var``) and type variables (``TVar``).  A binder of one kind
never shifts indices of the other kind.

Every node carries an opaque ``span`` for diagnostics and binders carry a
display ``name``; neither takes part in equality or hashing, so structural
equality is alpha-equivalence.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union as _U

INT32_MIN = -(2**31)
INT32_MAX = 2**31 - 1

TERM = "term"
TYPE = "type"


class Op(str, enum.Enum):
    EQ = "=="
    NE = "!="
    LT = "<"
    LE = "<="
    GE = ">="
    GT = ">"
    AND = "&&"
    OR = "||"
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    MOD = "%"

    def __str__(self) -> str:
        return self.value


ARITH_OPS = frozenset({Op.ADD, Op.SUB, Op.MUL, Op.DIV, Op.MOD})
COMPARE_OPS = frozenset({Op.LT, Op.LE, Op.GE, Op.GT})
BOOL_OPS = frozenset({Op.AND, Op.OR})
EQUALITY_OPS = frozenset({Op.EQ, Op.NE})


class Polarity(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> Polarity:
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


POSITIVE = Polarity.POSITIVE
NEGATIVE = Polarity.NEGATIVE


def _span():
    return field(default=None, compare=False, repr=False, kw_only=True)


def _name(default: str):
    return field(default=default, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Node:
    span: Optional[tuple[int, int]] = _span()


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class UnitLit(Node):
    pass


@dataclass(frozen=True)
class BoolLit(Node):
    value: bool


@dataclass(frozen=True)
class IntLit(Node):
    value: int

    def __post_init__(self):
        if not INT32_MIN <= self.value <= INT32_MAX:
            raise ValueError(f"integer literal {self.value} outside the signed 32-bit range")


@dataclass(frozen=True)
class Var(Node):
    index: int


@dataclass(frozen=True)
class Name(Node):
    """An unresolved term-variable reference (surface syntax only)."""

    name: str


@dataclass(frozen=True)
class Abs(Node):
    annotation: "Type"
    body: "Term"
    name: str = _name("x")


@dataclass(frozen=True)
class App(Node):
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class TAbs(Node):
    lower: "Type"
    upper: "Type"
    body: "Term"
    name: str = _name("X")


@dataclass(frozen=True)
class TApp(Node):
    fn: "Term"
    arg: "Type"


@dataclass(frozen=True)
class Let(Node):
    # None means "synthesize the type of the bound term"
    annotation: Optional["Type"]
    bound: "Term"
    body: "Term"
    name: str = _name("x")


@dataclass(frozen=True)
class Pair(Node):
    first: "Term"
    second: "Term"


@dataclass(frozen=True)
class MatchPair(Node):
    scrutinee: "Term"
    body: "Term"
    names: tuple[str, str] = field(default=("x", "y"), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class MatchSum(Node):
    scrutinee: "Term"
    left: "Term"
    right: "Term"
    names: tuple[str, str] = field(default=("x", "y"), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Inl(Node):
    other: "Type"
    payload: "Term"


@dataclass(frozen=True)
class Inr(Node):
    other: "Type"
    payload: "Term"


@dataclass(frozen=True)
class BinOp(Node):
    op: Op
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class If(Node):
    cond: "Term"
    then: "Term"
    orelse: "Term"


@dataclass(frozen=True)
class Loop(Node):
    init: "Term"
    body: "Term"
    name: str = _name("s")


Term = _U[
    UnitLit, BoolLit, IntLit, Var, Name, Abs, App, TAbs, TApp, Let, Pair,
    MatchPair, MatchSum, Inl, Inr, BinOp, If, Loop,
]
CONSTANTS = (UnitLit, BoolLit, IntLit)

# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class TVar(Node):
    index: int


@dataclass(frozen=True)
class TName(Node):
    """An unresolved type-variable reference (surface syntax only)."""

    name: str


@dataclass(frozen=True)
class TUnit(Node):
    pass


@dataclass(frozen=True)
class TTrue(Node):
    pass


@dataclass(frozen=True)
class TFalse(Node):
    pass


@dataclass(frozen=True)
class TInt(Node):
    pass


@dataclass(frozen=True)
class Top(Node):
    pass


@dataclass(frozen=True)
class Bot(Node):
    pass


@dataclass(frozen=True)
class Pi(Node):
    domain: "Type"
    codomain: "Type"
    name: str = _name("x")


@dataclass(frozen=True)
class Forall(Node):
    lower: "Type"
    upper: "Type"
    body: "Type"
    name: str = _name("X")


@dataclass(frozen=True)
class Sigma(Node):
    first: "Type"
    second: "Type"
    name: str = _name("x")


@dataclass(frozen=True)
class Sum(Node):
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Refine(Node):
    base: "Type"
    pred: "Term"
    name: str = _name("v")


@dataclass(frozen=True)
class Union(Node):
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Inter(Node):
    left: "Type"
    right: "Type"


@dataclass(frozen=True)
class Mu(Node):
    body: "Type"
    name: str = _name("X")


Type = _U[
    TVar, TName, TUnit, TTrue, TFalse, TInt, Top, Bot, Pi, Forall, Sigma, Sum,
    Refine, Union, Inter, Mu,
]
BASE_TYPES = (TUnit, TTrue, TFalse, TInt, Top, Bot)

UNIT = TUnit()
TRUE = TTrue()
FALSE = TFalse()
INT32 = TInt()
TOP = Top()
BOT = Bot()
BOOL = Union(TRUE, FALSE)

# ---------------------------------------------------------------- context entries


@dataclass(frozen=True)
class TermBind:
    """``x : A``.  ``depth``/``tdepth`` are the binder counts the type is scoped at."""

    type: Type
    depth: int
    tdepth: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class TypeBound:
    """``X :> lower <: upper``."""

    lower: Type
    upper: Type
    depth: int
    tdepth: int
    name: str = field(default="X", compare=False)


@dataclass(frozen=True)
class Fact:
    """``lhs ~ rhs``; each side is scoped at its own term depth tag."""

    lhs: Term
    lhs_depth: int
    rhs: Term
    rhs_depth: int
    tdepth: int


ContextEntry = _U[TermBind, TypeBound, Fact]

# ---------------------------------------------------------------- traversal


def _map(node, fv, ftv, c: int, e: int):
    """Rebuild ``node``, replacing ``Var(i)`` by ``fv(i, c, e)`` and ``TVar(j)``
    by ``ftv(j, c, e)`` where ``c``/``e`` count the term/type binders crossed."""
    match node:
        case Var(index=i):
            return fv(i, c, e)
        case TVar(index=j):
            return ftv(j, c, e)
        case UnitLit() | BoolLit() | IntLit() | Name() | TName():
            return node
        case TUnit() | TTrue() | TFalse() | TInt() | Top() | Bot():
            return node
        case Abs(annotation=a, body=b):
            return Abs(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case App(fn=f, arg=a):
            return App(_map(f, fv, ftv, c, e), _map(a, fv, ftv, c, e), span=node.span)
        case TAbs(lower=lo, upper=hi, body=b):
            return TAbs(_map(lo, fv, ftv, c, e), _map(hi, fv, ftv, c, e), _map(b, fv, ftv, c, e + 1),
                        name=node.name, span=node.span)
        case TApp(fn=f, arg=a):
            return TApp(_map(f, fv, ftv, c, e), _map(a, fv, ftv, c, e), span=node.span)
        case Let(annotation=a, bound=x, body=b):
            ann = None if a is None else _map(a, fv, ftv, c, e)
            return Let(ann, _map(x, fv, ftv, c, e), _map(b, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case Pair(first=a, second=b):
            return Pair(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), span=node.span)
        case MatchPair(scrutinee=s, body=b):
            return MatchPair(_map(s, fv, ftv, c, e), _map(b, fv, ftv, c + 2, e), names=node.names, span=node.span)
        case MatchSum(scrutinee=s, left=l, right=r):
            return MatchSum(_map(s, fv, ftv, c, e), _map(l, fv, ftv, c + 1, e), _map(r, fv, ftv, c + 1, e),
                            names=node.names, span=node.span)
        case Inl(other=t, payload=a):
            return Inl(_map(t, fv, ftv, c, e), _map(a, fv, ftv, c, e), span=node.span)
        case Inr(other=t, payload=a):
            return Inr(_map(t, fv, ftv, c, e), _map(a, fv, ftv, c, e), span=node.span)
        case BinOp(op=op, lhs=a, rhs=b):
            return BinOp(op, _map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), span=node.span)
        case If(cond=a, then=b, orelse=d):
            return If(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), _map(d, fv, ftv, c, e), span=node.span)
        case Loop(init=a, body=b):
            return Loop(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case Pi(domain=a, codomain=b):
            return Pi(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case Forall(lower=lo, upper=hi, body=b):
            return Forall(_map(lo, fv, ftv, c, e), _map(hi, fv, ftv, c, e), _map(b, fv, ftv, c, e + 1),
                          name=node.name, span=node.span)
        case Sigma(first=a, second=b):
            return Sigma(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case Sum(left=a, right=b):
            return Sum(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), span=node.span)
        case Union(left=a, right=b):
            return Union(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), span=node.span)
        case Inter(left=a, right=b):
            return Inter(_map(a, fv, ftv, c, e), _map(b, fv, ftv, c, e), span=node.span)
        case Refine(base=a, pred=p):
            return Refine(_map(a, fv, ftv, c, e), _map(p, fv, ftv, c + 1, e), name=node.name, span=node.span)
        case Mu(body=b):
            return Mu(_map(b, fv, ftv, c, e + 1), name=node.name, span=node.span)
    raise TypeError(f"not a term or type: {node!r}")


def children(node) -> Iterator[tuple[object, int, int]]:
    """Yield ``(child, term_binders, type_binders)`` for the immediate children."""
    match node:
        case Abs(annotation=a, body=b):
            yield a, 0, 0
            yield b, 1, 0
        case App(fn=f, arg=a) | TApp(fn=f, arg=a):
            yield f, 0, 0
            yield a, 0, 0
        case TAbs(lower=lo, upper=hi, body=b) | Forall(lower=lo, upper=hi, body=b):
            yield lo, 0, 0
            yield hi, 0, 0
            yield b, 0, 1
        case Let(annotation=a, bound=x, body=b):
            if a is not None:
                yield a, 0, 0
            yield x, 0, 0
            yield b, 1, 0
        case Pair(first=a, second=b) | BinOp(lhs=a, rhs=b) | Sum(left=a, right=b) \
                | Union(left=a, right=b) | Inter(left=a, right=b):
            yield a, 0, 0
            yield b, 0, 0
        case MatchPair(scrutinee=s, body=b):
            yield s, 0, 0
            yield b, 2, 0
        case MatchSum(scrutinee=s, left=l, right=r):
            yield s, 0, 0
            yield l, 1, 0
            yield r, 1, 0
        case Inl(other=t, payload=a) | Inr(other=t, payload=a):
            yield t, 0, 0
            yield a, 0, 0
        case If(cond=a, then=b, orelse=d):
            yield a, 0, 0
            yield b, 0, 0
            yield d, 0, 0
        case Loop(init=a, body=b):
            yield a, 0, 0
            yield b, 1, 0
        case Pi(domain=a, codomain=b) | Sigma(first=a, second=b):
            yield a, 0, 0
            yield b, 1, 0
        case Refine(base=a, pred=p):
            yield a, 0, 0
            yield p, 1, 0
        case Mu(body=b):
            yield b, 0, 1


def free_vars(node, ns: str = TERM) -> set[int]:
    """Free indices of the given namespace, relative to the node's scope."""
    out: set[int] = set()
    stack = [(node, 0, 0)]
    while stack:
        n, c, e = stack.pop()
        if ns == TERM and isinstance(n, Var):
            if n.index >= c:
                out.add(n.index - c)
        elif ns == TYPE and isinstance(n, TVar):
            if n.index >= e:
                out.add(n.index - e)
        else:
            for child, dc, de in children(n):
                stack.append((child, c + dc, e + de))
    return out


def free_in(index: int, subject, ns: str = TERM) -> bool:
    return index in free_vars(subject, ns)


def is_closed(node) -> bool:
    return not free_vars(node, TERM) and not free_vars(node, TYPE)


# ---------------------------------------------------------------- shifting / substitution


def shift(subject, amount: int = 1, cutoff: int = 0, ns: str = TERM):
    """Add ``amount`` to every free index >= ``cutoff`` of namespace ``ns``."""
    if amount == 0:
        return subject
    if ns == TERM:
        def fv(i, c, e):
            if i < cutoff + c:
                return Var(i)
            if i + amount < cutoff + c:
                raise ValueError(f"negative shift underflows index {i - c}")
            return Var(i + amount)
        return _map(subject, fv, lambda j, c, e: TVar(j), 0, 0)

    def ftv(j, c, e):
        if j < cutoff + e:
            return TVar(j)
        if j + amount < cutoff + e:
            raise ValueError(f"negative shift underflows type index {j - e}")
        return TVar(j + amount)
    return _map(subject, lambda i, c, e: Var(i), ftv, 0, 0)


def shift_both(subject, terms: int, types: int):
    return shift(shift(subject, terms, ns=TERM), types, ns=TYPE)


def subst_term(subject, index: int, replacement, close: bool = True):
    """Replace term variable ``index`` by ``replacement``.

    ``close=True`` removes the variable from scope (indices above it drop by
    one; ``replacement`` is scoped outside it).  ``close=False`` keeps the
    scope unchanged (``replacement`` is scoped at the subject's level).
    """

    def fv(i, c, e):
        if i == index + c:
            return shift_both(replacement, c, e)
        if close and i > index + c:
            return Var(i - 1)
        return Var(i)

    return _map(subject, fv, lambda j, c, e: TVar(j), 0, 0)


def subst_type(subject, index: int, replacement: Type, close: bool = True):
    """Replace type variable ``index`` by ``replacement``; see :func:`subst_term`."""

    def ftv(j, c, e):
        if j == index + e:
            return shift_both(replacement, c, e)
        if close and j > index + e:
            return TVar(j - 1)
        return TVar(j)

    return _map(subject, lambda i, c, e: Var(i), ftv, 0, 0)


def open_term(body, replacement):
    """Instantiate the innermost term binder of ``body`` with ``replacement``."""
    return subst_term(body, 0, replacement, close=True)


def unfold(mu: Mu) -> Type:
    """``A[X := mu X. A]``."""
    return subst_type(mu.body, 0, mu, close=True)


# ---------------------------------------------------------------- syntactic judgments


def spos(index: int, ty: Type) -> bool:
    """Strict positivity of type variable ``index`` in ``ty``."""
    match ty:
        case TVar() | TUnit() | TTrue() | TFalse() | TInt() | Top() | Bot():
            return True
        case Pi(domain=a, codomain=b):
            return not free_in(index, a, TYPE) and spos(index, b)
        case Forall(lower=lo, upper=hi, body=b):
            return (not free_in(index, lo, TYPE) and not free_in(index, hi, TYPE)
                    and spos(index + 1, b))
        case Mu(body=b):
            return spos(0, b) and not free_in(index + 1, b, TYPE)
        case Sigma(first=a, second=b) | Sum(left=a, right=b) | Inter(left=a, right=b):
            return spos(index, a) and spos(index, b)
        case Refine(base=a):
            return spos(index, a)
        case Union(left=a, right=b):
            return not free_in(index, a, TYPE) and not free_in(index, b, TYPE)
    raise TypeError(f"not a type: {ty!r}")


def firstorder(ty: Type) -> bool:
    match ty:
        case TUnit() | TTrue() | TFalse() | TInt():
            return True
        case Refine(base=b):
            return firstorder(b)
    return False


def avoid(ty: Type, index: int, polarity: Polarity = POSITIVE) -> Type:
    """Remove term variable ``index`` from ``ty``.

    The result is scoped without that variable.  Positive polarity yields a
    supertype, negative a subtype.
    """
    pos = polarity is POSITIVE
    match ty:
        case Refine(base=b, pred=p):
            base = avoid(b, index, polarity)
            if free_in(index + 1, p):
                pred = BoolLit(pos)
            else:
                pred = shift(p, -1, cutoff=index + 1)
            return Refine(base, pred, name=ty.name, span=ty.span)
        case Pi(domain=a, codomain=b):
            return Pi(avoid(a, index, polarity.flip()), avoid(b, index + 1, polarity), name=ty.name)
        case Forall(lower=lo, upper=hi, body=b):
            return Forall(avoid(lo, index, polarity), avoid(hi, index, polarity.flip()),
                          avoid(b, index, polarity), name=ty.name)
        case Sigma(first=a, second=b):
            return Sigma(avoid(a, index, polarity), avoid(b, index + 1, polarity), name=ty.name)
        case Sum(left=a, right=b):
            return Sum(avoid(a, index, polarity), avoid(b, index, polarity))
        case Union(left=a, right=b):
            return Union(avoid(a, index, polarity), avoid(b, index, polarity))
        case Inter(left=a, right=b):
            return Inter(avoid(a, index, polarity), avoid(b, index, polarity))
        case Mu(body=b):
            if not free_in(index, ty):
                return shift(ty, -1, cutoff=index)
            if spos(0, b):
                return Mu(avoid(b, index, polarity), name=ty.name)
            return TOP if pos else BOT
        case TVar() | TUnit() | TTrue() | TFalse() | TInt() | Top() | Bot():
            return ty
    raise TypeError(f"not a type: {ty!r}")


def strip_refinements(ty: Type) -> Type:
    while isinstance(ty, Refine):
        ty = ty.base
    return ty


def erase_annotations(term, replacement: Type = TOP):
    """Replace every type annotation inside ``term`` by ``replacement``."""
    match term:
        case Abs(body=b):
            return Abs(replacement, erase_annotations(b, replacement), name=term.name)
        case TAbs(body=b):
            return TAbs(replacement, replacement, erase_annotations(b, replacement), name=term.name)
        case TApp(fn=f):
            return TApp(erase_annotations(f, replacement), replacement)
        case Let(annotation=a, bound=x, body=b):
            return Let(None if a is None else replacement, erase_annotations(x, replacement),
                       erase_annotations(b, replacement), name=term.name)
        case Inl(payload=a):
            return Inl(replacement, erase_annotations(a, replacement))
        case Inr(payload=a):
            return Inr(replacement, erase_annotations(a, replacement))
        case App(fn=f, arg=a):
            return App(erase_annotations(f, replacement), erase_annotations(a, replacement))
        case Pair(first=a, second=b):
            return Pair(erase_annotations(a, replacement), erase_annotations(b, replacement))
        case BinOp(op=op, lhs=a, rhs=b):
            return BinOp(op, erase_annotations(a, replacement), erase_annotations(b, replacement))
        case MatchPair(scrutinee=s, body=b):
            return MatchPair(erase_annotations(s, replacement), erase_annotations(b, replacement))
        case MatchSum(scrutinee=s, left=l, right=r):
            return MatchSum(erase_annotations(s, replacement), erase_annotations(l, replacement),
                            erase_annotations(r, replacement))
        case If(cond=a, then=b, orelse=d):
            return If(erase_annotations(a, replacement), erase_annotations(b, replacement),
                      erase_annotations(d, replacement))
        case Loop(init=a, body=b):
            return Loop(erase_annotations(a, replacement), erase_annotations(b, replacement))
    return term


def contains_op(term, ops) -> bool:
    stack = [term]
    while stack:
        n = stack.pop()
        if isinstance(n, BinOp) and n.op in ops:
            return True
        stack.extend(child for child, _, _ in children(n))
    return False


def size(node) -> int:
    return 1 + sum(size(child) for child, _, _ in children(node))
