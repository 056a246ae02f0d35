"""Desk-scale semantic oracle for first-order types.

``vmember`` decides value membership in a type's interpretation with three
outcomes: ``True``, ``False`` or ``None`` (inconclusive, when a refinement
predicate runs out of fuel).  Recursive types are approximated by their
first ``mu_depth`` unfoldings, starting from the full value space.

``brute_entails`` checks an implication between int predicates by
enumerating every assignment in a small integer box.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import kernel
from .interp import (
    TIMEOUT, V_TRUE, Env, Val, Value, VBool, VInl, VInr, VInt, VPair, VUnit, eval_term,
)
from .syntax import (
    Bot, Forall, Inter, Mu, Pi, Refine, Sigma, Sum, TFalse, TInt, TTrue, TUnit,
    TVar, Term, Top, Type, Union,
)

Tri = Optional[bool]


@dataclass(frozen=True)
class OracleConfig:
    predicate_fuel: int = 256
    mu_depth: int = 8
    int_domain: tuple[int, int] = (-8, 8)

    def __post_init__(self):
        if self.mu_depth < 1:
            raise ValueError("mu_depth must be at least 1")
        lo, hi = self.int_domain
        if lo > hi:
            raise ValueError("int_domain must be nonempty")


DEFAULT = OracleConfig()


def and3(a: Tri, b: Tri) -> Tri:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def or3(a: Tri, b: Tri) -> Tri:
    if a is True or b is True:
        return True
    if a is None or b is None:
        return None
    return False


def all3(items) -> Tri:
    out: Tri = True
    for x in items:
        out = and3(out, x)
        if out is False:
            return False
    return out


class HigherOrderType(ValueError):
    """The oracle only interprets first-order types."""


def vmember(cfg: OracleConfig, ty: Type, value: Value, env: Env = (),
            tenv: tuple[Callable[[Value], Tri], ...] = ()) -> Tri:
    """Membership of ``value`` in the value interpretation of ``ty``."""
    match ty:
        case Top():
            return True
        case Bot():
            return False
        case TUnit():
            return isinstance(value, VUnit)
        case TTrue():
            return value == V_TRUE
        case TFalse():
            return isinstance(value, VBool) and not value.value
        case TInt():
            return isinstance(value, VInt)
        case Refine(base=a, pred=p):
            base = vmember(cfg, a, value, env, tenv)
            if base is False:
                return False
            out = eval_term(cfg.predicate_fuel, (value,) + env, p)
            if out is TIMEOUT:
                return None
            if isinstance(out, Val) and out.value == V_TRUE:
                return base
            return False
        case Sigma(first=a, second=b):
            if not isinstance(value, VPair):
                return False
            first = vmember(cfg, a, value.first, env, tenv)
            if first is False:
                return False
            return and3(first, vmember(cfg, b, value.second, (value.first,) + env, tenv))
        case Sum(left=a, right=b):
            if isinstance(value, VInl):
                return vmember(cfg, a, value.value, env, tenv)
            if isinstance(value, VInr):
                return vmember(cfg, b, value.value, env, tenv)
            return False
        case Union(left=a, right=b):
            return or3(vmember(cfg, a, value, env, tenv), vmember(cfg, b, value, env, tenv))
        case Inter(left=a, right=b):
            return and3(vmember(cfg, a, value, env, tenv), vmember(cfg, b, value, env, tenv))
        case TVar(index=j):
            if j >= len(tenv):
                raise HigherOrderType(f"free type variable #{j}")
            return tenv[j](value)
        case Mu(body=b):
            return all3(_approx(cfg, b, env, tenv, n)(value) for n in range(1, cfg.mu_depth + 1))
        case Pi() | Forall():
            raise HigherOrderType(f"{type(ty).__name__} is not first-order")
    raise TypeError(f"not a type: {ty!r}")


def _approx(cfg: OracleConfig, body: Type, env: Env, tenv: tuple, n: int) -> Callable[[Value], Tri]:
    """The n-th approximation of ``mu X. body``; the 0-th admits every value."""
    if n == 0:
        return lambda v: True
    prev = _approx(cfg, body, env, tenv, n - 1)
    return lambda v: vmember(cfg, body, v, env, (prev,) + tenv)


def env_of(values: Sequence[int]) -> Env:
    """An evaluation environment for int atoms listed outermost first."""
    return tuple(VInt(v) for v in reversed(values))


def _holds(cfg: OracleConfig, term: Term, env: Env) -> bool:
    out = eval_term(cfg.predicate_fuel, env, term)
    return isinstance(out, Val) and out.value == V_TRUE


def countermodel(cfg: OracleConfig, atoms: Sequence[str], facts: Sequence[Term], goal: Term,
                 impl=None) -> Optional[tuple[int, ...]]:
    """An assignment of the atoms (outermost first) satisfying the facts but not the goal.

    Facts that are stuck or time out under an assignment do not hold there;
    such a goal fails.  Terms are scoped over the atoms: ``Var(0)`` is the
    last atom.
    """
    k = len(atoms)
    lo, hi = cfg.int_domain
    compiled = [kernel.compile_predicate(f, k) for f in facts]
    compiled_goal = kernel.compile_predicate(goal, k)
    if all(c is not None for c in compiled) and compiled_goal is not None:
        return kernel.find_countermodel(compiled, compiled_goal, k, lo, hi, cfg.predicate_fuel, impl)
    for values in itertools.product(range(lo, hi + 1), repeat=k):
        env = env_of(values)
        if all(_holds(cfg, f, env) for f in facts) and not _holds(cfg, goal, env):
            return values
    return None


def brute_entails(cfg: OracleConfig, atoms: Sequence[str], facts: Sequence[Term], goal: Term) -> bool:
    return countermodel(cfg, atoms, facts, goal) is None
