"""Fuel-bounded big-step definitional interpreter.

Fuel bounds the *depth* of evaluation: every sub-evaluation of one syntax
node receives the same fuel, decremented once.  The result is one of
``TIMEOUT``, ``STUCK`` or ``Val(v)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union as _U

from .syntax import (
    INT32_MIN, Abs, App, BinOp, BoolLit, If, Inl, Inr, IntLit, Let,
    Loop, MatchPair, MatchSum, Op, Pair, TAbs, TApp, Term, UnitLit, Var,
)

# ---------------------------------------------------------------- values


@dataclass(frozen=True)
class VUnit:
    def __str__(self):
        return "unit"


@dataclass(frozen=True)
class VBool:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class VInt:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class VPair:
    first: "Value"
    second: "Value"

    def __str__(self):
        return f"({self.first}, {self.second})"


@dataclass(frozen=True)
class VInl:
    value: "Value"

    def __str__(self):
        return f"inl({self.value})"


@dataclass(frozen=True)
class VInr:
    value: "Value"

    def __str__(self):
        return f"inr({self.value})"


@dataclass(frozen=True)
class Closure:
    env: "Env"
    body: Term

    def __str__(self):
        return "<closure>"


@dataclass(frozen=True)
class TClosure:
    env: "Env"
    body: Term

    def __str__(self):
        return "<type closure>"


Value = _U[VUnit, VBool, VInt, VPair, VInl, VInr, Closure, TClosure]
# most-recent binding first; index i is env[i]
Env = tuple

V_UNIT = VUnit()
V_TRUE = VBool(True)
V_FALSE = VBool(False)

# ---------------------------------------------------------------- outcomes


class _Timeout:
    __slots__ = ()

    def __repr__(self):
        return "Timeout"

    def __str__(self):
        return "timeout"


class _Stuck:
    __slots__ = ()

    def __repr__(self):
        return "Stuck"

    def __str__(self):
        return "stuck"


TIMEOUT = _Timeout()
STUCK = _Stuck()


@dataclass(frozen=True)
class Val:
    value: Value

    def __str__(self):
        return str(self.value)


EvalOutcome = _U[_Timeout, _Stuck, Val]

# ---------------------------------------------------------------- primitives


def wrap32(n: int) -> int:
    return ((n - INT32_MIN) & 0xFFFFFFFF) + INT32_MIN


def div32(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return wrap32(q if (a >= 0) == (b >= 0) else -q)


def mod32(a: int, b: int) -> int:
    r = abs(a) % abs(b)
    return r if a >= 0 else -r


def is_first_order(v: Value) -> bool:
    match v:
        case VUnit() | VBool() | VInt():
            return True
        case VPair(first=a, second=b):
            return is_first_order(a) and is_first_order(b)
        case VInl(value=a) | VInr(value=a):
            return is_first_order(a)
    return False


def delta(op: Op, lhs: Value, rhs: Value) -> Optional[Value]:
    """Primitive operation table; ``None`` means the operation is stuck."""
    if type(lhs) is VInt and type(rhs) is VInt:
        a, b = lhs.value, rhs.value
        match op:
            case Op.ADD:
                return VInt(wrap32(a + b))
            case Op.SUB:
                return VInt(wrap32(a - b))
            case Op.MUL:
                return VInt(wrap32(a * b))
            case Op.DIV:
                return None if b == 0 else VInt(div32(a, b))
            case Op.MOD:
                return None if b == 0 else VInt(mod32(a, b))
            case Op.LT:
                return VBool(a < b)
            case Op.LE:
                return VBool(a <= b)
            case Op.GT:
                return VBool(a > b)
            case Op.GE:
                return VBool(a >= b)
    if op in (Op.AND, Op.OR):
        if type(lhs) is VBool and type(rhs) is VBool:
            if op is Op.AND:
                return VBool(lhs.value and rhs.value)
            return VBool(lhs.value or rhs.value)
        return None
    if op in (Op.EQ, Op.NE):
        if not (is_first_order(lhs) and is_first_order(rhs)):
            return None
        same = lhs == rhs
        return VBool(same if op is Op.EQ else not same)
    return None


# ---------------------------------------------------------------- evaluation


def eval_term(fuel: int, env: Env, term: Term) -> EvalOutcome:
    if fuel <= 0:
        return TIMEOUT
    n = fuel - 1
    match term:
        case UnitLit():
            return Val(V_UNIT)
        case BoolLit(value=b):
            return Val(V_TRUE if b else V_FALSE)
        case IntLit(value=z):
            return Val(VInt(z))
        case Var(index=i):
            if 0 <= i < len(env):
                return Val(env[i])
            return STUCK
        case Abs(body=b):
            return Val(Closure(env, b))
        case TAbs(body=b):
            return Val(TClosure(env, b))
        case App(fn=f, arg=a):
            rf = eval_term(n, env, f)
            if type(rf) is not Val:
                return rf
            if type(rf.value) is not Closure:
                return STUCK
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            clo = rf.value
            return eval_term(n, (ra.value,) + clo.env, clo.body)
        case TApp(fn=f):
            rf = eval_term(n, env, f)
            if type(rf) is not Val:
                return rf
            if type(rf.value) is not TClosure:
                return STUCK
            return eval_term(n, rf.value.env, rf.value.body)
        case Let(bound=a, body=b):
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            return eval_term(n, (ra.value,) + env, b)
        case Pair(first=a, second=b):
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            rb = eval_term(n, env, b)
            if type(rb) is not Val:
                return rb
            return Val(VPair(ra.value, rb.value))
        case MatchPair(scrutinee=s, body=b):
            rs = eval_term(n, env, s)
            if type(rs) is not Val:
                return rs
            if type(rs.value) is not VPair:
                return STUCK
            p = rs.value
            # x is bound first, so y (the second component) is index 0
            return eval_term(n, (p.second, p.first) + env, b)
        case MatchSum(scrutinee=s, left=l, right=r):
            rs = eval_term(n, env, s)
            if type(rs) is not Val:
                return rs
            v = rs.value
            if type(v) is VInl:
                return eval_term(n, (v.value,) + env, l)
            if type(v) is VInr:
                return eval_term(n, (v.value,) + env, r)
            return STUCK
        case Inl(payload=a):
            ra = eval_term(n, env, a)
            return Val(VInl(ra.value)) if type(ra) is Val else ra
        case Inr(payload=a):
            ra = eval_term(n, env, a)
            return Val(VInr(ra.value)) if type(ra) is Val else ra
        case BinOp(op=op, lhs=a, rhs=b):
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            rb = eval_term(n, env, b)
            if type(rb) is not Val:
                return rb
            r = delta(op, ra.value, rb.value)
            return STUCK if r is None else Val(r)
        case If(cond=a, then=b, orelse=d):
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            if ra.value == V_TRUE:
                return eval_term(n, env, b)
            if ra.value == V_FALSE:
                return eval_term(n, env, d)
            return STUCK
        case Loop(init=a, body=b):
            ra = eval_term(n, env, a)
            if type(ra) is not Val:
                return ra
            state = ra.value
            # iteration k runs at fuel - k; re-entering loop(v1) costs one level
            level = fuel
            while True:
                rb = eval_term(level - 1, (state,) + env, b)
                if type(rb) is not Val:
                    return rb
                out = rb.value
                if type(out) is VInr:
                    return Val(out.value)
                if type(out) is not VInl:
                    return STUCK
                level -= 1
                if level <= 0:
                    return TIMEOUT
                state = out.value
    return STUCK


def run(max_fuel: int, env: Env, term: Term) -> EvalOutcome:
    if max_fuel < 1:
        raise ValueError("max_fuel must be at least 1")
    return eval_term(max_fuel, env, term)


# ---------------------------------------------------------------- conversions


def to_value(x) -> Value:
    """Lift a Python value (None, bool, int, tuple, ('inl', v)/('inr', v)) into a Value."""
    if x is None:
        return V_UNIT
    if isinstance(x, bool):
        return VBool(x)
    if isinstance(x, int):
        return VInt(wrap32(x))
    if isinstance(x, tuple) and len(x) == 2 and x[0] in ("inl", "inr"):
        return VInl(to_value(x[1])) if x[0] == "inl" else VInr(to_value(x[1]))
    if isinstance(x, tuple) and len(x) == 2:
        return VPair(to_value(x[0]), to_value(x[1]))
    raise TypeError(f"cannot convert {x!r} to a value")


def list_value(items) -> Value:
    """Encode a Python list as ``inl(unit)`` / ``inr((hd, tl))`` cells."""
    out: Value = VInl(V_UNIT)
    for item in reversed(list(items)):
        out = VInr(VPair(to_value(item), out))
    return out


def decode_list(v: Value) -> Optional[list]:
    items = []
    while True:
        match v:
            case VInl(value=VUnit()):
                return items
            case VInr(value=VPair(first=hd, second=tl)):
                items.append(hd.value if isinstance(hd, (VInt, VBool)) else hd)
                v = tl
            case _:
                return None
