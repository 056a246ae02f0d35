"""Pure-Python predicate kernel (fallback for the compiled extension).

A compiled predicate is a flat list ``[opcode, arg, opcode, arg, ...]`` in
postfix order.  Values are ``(tag, payload)`` pairs; evaluation mirrors the
interpreter's primitive table exactly.
"""
from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

PUSH_INT, PUSH_BOOL, PUSH_UNIT, LOAD, BINOP = 0, 1, 2, 3, 4
T_INT, T_BOOL, T_UNIT, T_STUCK = 0, 1, 2, 3
EQ, NE, LT, LE, GE, GT, AND, OR, ADD, SUB, MUL, DIV, MOD = range(13)


def _wrap(n: int) -> int:
    return ((n + 0x80000000) & 0xFFFFFFFF) - 0x80000000


def _apply(op: int, ta: int, a: int, tb: int, b: int) -> tuple[int, int]:
    if op == EQ or op == NE:
        same = ta == tb and a == b
        return T_BOOL, int(same if op == EQ else not same)
    if op == AND or op == OR:
        if ta != T_BOOL or tb != T_BOOL:
            return T_STUCK, 0
        return T_BOOL, int((a and b) if op == AND else (a or b))
    if ta != T_INT or tb != T_INT:
        return T_STUCK, 0
    if op == ADD:
        return T_INT, _wrap(a + b)
    if op == SUB:
        return T_INT, _wrap(a - b)
    if op == MUL:
        return T_INT, _wrap(a * b)
    if op == DIV or op == MOD:
        if b == 0:
            return T_STUCK, 0
        q = abs(a) // abs(b)
        if op == DIV:
            return T_INT, _wrap(q if (a >= 0) == (b >= 0) else -q)
        r = abs(a) % abs(b)
        return T_INT, r if a >= 0 else -r
    if op == LT:
        return T_BOOL, int(a < b)
    if op == LE:
        return T_BOOL, int(a <= b)
    if op == GE:
        return T_BOOL, int(a >= b)
    return T_BOOL, int(a > b)


def run_code(code: Sequence[int], env: Sequence[int]) -> tuple[int, int]:
    """Evaluate one compiled predicate; ``env[i]`` is the value of slot ``i``."""
    tags: list[int] = []
    vals: list[int] = []
    for pc in range(0, len(code), 2):
        op, arg = code[pc], code[pc + 1]
        if op == PUSH_INT:
            tags.append(T_INT)
            vals.append(arg)
        elif op == PUSH_BOOL:
            tags.append(T_BOOL)
            vals.append(arg)
        elif op == PUSH_UNIT:
            tags.append(T_UNIT)
            vals.append(0)
        elif op == LOAD:
            tags.append(T_INT)
            vals.append(env[arg])
        else:
            tb, b = tags.pop(), vals.pop()
            ta, a = tags.pop(), vals.pop()
            t, v = _apply(arg, ta, a, tb, b)
            if t == T_STUCK:
                return T_STUCK, 0
            tags.append(t)
            vals.append(v)
    return tags[-1], vals[-1]


def _true(code, env) -> bool:
    t, v = run_code(code, env)
    return t == T_BOOL and v == 1


def find_countermodel(facts: Sequence[Sequence[int]], goal: Sequence[int], k: int,
                      lo: int, hi: int) -> Optional[tuple[int, ...]]:
    """First assignment in ``[lo, hi]^k`` satisfying every fact but not the goal."""
    for env in product(range(lo, hi + 1), repeat=k):
        if all(_true(f, env) for f in facts) and not _true(goal, env):
            return env
    return None


def count_models(facts: Sequence[Sequence[int]], k: int, lo: int, hi: int) -> int:
    return sum(1 for env in product(range(lo, hi + 1), repeat=k) if all(_true(f, env) for f in facts))
