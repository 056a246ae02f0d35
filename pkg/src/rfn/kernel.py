"""Predicate kernel: compile arithmetic/boolean terms to postfix code and
enumerate assignments.

The compiled extension ``_kernel`` is used when it imports; otherwise (or
when ``RFN_PURE_PYTHON=1``) the pure-Python twin ``_kernel_py`` is used.
Both backends share one contract and are cross-checked by the tests.
"""
from __future__ import annotations

import os
from typing import Optional

from . import _kernel_py
from .syntax import BinOp, BoolLit, IntLit, Op, Term, UnitLit, Var

OPCODES = {
    Op.EQ: 0, Op.NE: 1, Op.LT: 2, Op.LE: 3, Op.GE: 4, Op.GT: 5, Op.AND: 6, Op.OR: 7,
    Op.ADD: 8, Op.SUB: 9, Op.MUL: 10, Op.DIV: 11, Op.MOD: 12,
}

_compiled = None
if not os.environ.get("RFN_PURE_PYTHON"):
    try:
        from . import _kernel as _compiled  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

backend = _compiled if _compiled is not None else _kernel_py
BACKEND = "cython" if _compiled is not None else "python"


def available_backends() -> dict:
    out = {"python": _kernel_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


class Compiled:
    """Postfix code for one predicate plus its evaluation depth."""

    __slots__ = ("code", "depth")

    def __init__(self, code: list[int], depth: int):
        self.code = code
        self.depth = depth


def compile_predicate(term: Term, nvars: int) -> Optional[Compiled]:
    """Compile ``term`` over ``nvars`` int atoms, or ``None`` outside the fragment.

    ``Var(i)`` is loaded from slot ``nvars - 1 - i`` so slots follow atom
    order (outermost binding first).
    """
    code: list[int] = []

    def go(t) -> Optional[int]:
        match t:
            case IntLit(value=z):
                code.extend((0, z))
                return 1
            case BoolLit(value=b):
                code.extend((1, int(b)))
                return 1
            case UnitLit():
                code.extend((2, 0))
                return 1
            case Var(index=i) if 0 <= i < nvars:
                code.extend((3, nvars - 1 - i))
                return 1
            case BinOp(op=op, lhs=a, rhs=b):
                da = go(a)
                if da is None:
                    return None
                db = go(b)
                if db is None:
                    return None
                code.extend((4, OPCODES[op]))
                return 1 + max(da, db)
        return None

    depth = go(term)
    if depth is None:
        return None
    return Compiled(code, depth)


def find_countermodel(facts: list[Compiled], goal: Compiled, k: int, lo: int, hi: int,
                      fuel: int, impl=None) -> Optional[tuple[int, ...]]:
    """Like the backend's search, with fuel: a predicate deeper than ``fuel`` times out.

    A timed-out fact never holds; a timed-out goal never holds either.
    """
    impl = impl or backend
    if any(f.depth > fuel for f in facts):
        return None
    live = [f.code for f in facts]
    if goal.depth > fuel:
        # the goal never evaluates to true: any model of the facts is a countermodel
        goal_code = [1, 0]
    else:
        goal_code = goal.code
    return impl.find_countermodel(live, goal_code, k, lo, hi)
