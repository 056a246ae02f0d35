import ctypes

import pytest
from hypothesis import given, strategies as st

from rfn.interp import (
    STUCK, TIMEOUT, V_TRUE, V_UNIT, Closure, Val, VBool, VInl, VInr, VInt, VPair,
    decode_list, delta, div32, eval_term, list_value, mod32, run, to_value, wrap32,
)
from rfn.syntax import (
    INT32, TOP, Abs, App, BinOp, BoolLit, If, Inl, Inr, IntLit, Let, Loop, MatchPair,
    MatchSum, Op, Pair, TAbs, TApp, UnitLit, Var,
)

from strategies import int32s, terms


def c_int32(n):
    return ctypes.c_int32(n & 0xFFFFFFFF).value


def ev(t, fuel=100, env=()):
    return eval_term(fuel, env, t)


def test_wrap_boundaries():
    assert delta(Op.ADD, VInt(2**31 - 1), VInt(1)) == VInt(-(2**31))
    assert delta(Op.SUB, VInt(-(2**31)), VInt(1)) == VInt(2**31 - 1)
    assert delta(Op.MUL, VInt(65536), VInt(65536)) == VInt(0)


@given(int32s, int32s)
def test_arith_matches_c_semantics(a, b):
    assert delta(Op.ADD, VInt(a), VInt(b)) == VInt(c_int32(a + b))
    assert delta(Op.SUB, VInt(a), VInt(b)) == VInt(c_int32(a - b))
    assert delta(Op.MUL, VInt(a), VInt(b)) == VInt(c_int32(a * b))


@given(int32s, int32s.filter(lambda b: b != 0))
def test_division_truncates_toward_zero(a, b):
    q, r = div32(a, b), mod32(a, b)
    assert wrap32(q * b + r) == a
    assert abs(r) < abs(b)
    assert r == 0 or (r > 0) == (a > 0)


def test_int_min_over_minus_one_wraps():
    assert div32(-(2**31), -1) == -(2**31)
    assert mod32(-(2**31), -1) == 0


def test_division_by_zero_is_stuck():
    assert delta(Op.DIV, VInt(1), VInt(0)) is None
    assert ev(BinOp(Op.MOD, IntLit(1), IntLit(0))) is STUCK


def test_equality_is_structural_on_first_order_values():
    assert delta(Op.EQ, to_value((1, True)), to_value((1, True))) == V_TRUE
    assert delta(Op.EQ, VInt(1), VBool(True)) == VBool(False)
    assert delta(Op.EQ, Closure((), Var(0)), VInt(1)) is None


def test_ill_typed_primitives_stick():
    assert delta(Op.ADD, VInt(1), VBool(True)) is None
    assert delta(Op.AND, VInt(1), VBool(True)) is None
    assert delta(Op.LT, V_UNIT, V_UNIT) is None


def test_beta():
    t = App(Abs(INT32, BinOp(Op.ADD, Var(0), IntLit(1))), IntLit(41))
    assert ev(t) == Val(VInt(42))


def test_let_and_pairs():
    t = Let(None, Pair(IntLit(1), IntLit(2)), MatchPair(Var(0), BinOp(Op.SUB, Var(1), Var(0))))
    assert ev(t) == Val(VInt(-1))


def test_match_sum():
    t = MatchSum(Inr(TOP, IntLit(5)), IntLit(0), BinOp(Op.MUL, Var(0), IntLit(2)))
    assert ev(t) == Val(VInt(10))
    assert ev(MatchSum(IntLit(1), IntLit(0), IntLit(0))) is STUCK


def test_if_requires_bool():
    assert ev(If(BoolLit(False), IntLit(1), IntLit(2))) == Val(VInt(2))
    assert ev(If(IntLit(0), IntLit(1), IntLit(2))) is STUCK


def test_type_application():
    assert ev(TApp(TAbs(TOP, TOP, IntLit(7)), INT32)) == Val(VInt(7))
    assert ev(TApp(IntLit(7), INT32)) is STUCK


def test_countdown_loop():
    body = If(BinOp(Op.GT, Var(0), IntLit(0)), Inl(TOP, BinOp(Op.SUB, Var(0), IntLit(1))), Inr(TOP, Var(0)))
    assert ev(Loop(IntLit(10), body), fuel=50) == Val(VInt(0))
    assert ev(Loop(IntLit(10), body), fuel=5) is TIMEOUT
    assert ev(Loop(UnitLit(), IntLit(3))) is STUCK


def test_diverging_loop_times_out():
    assert ev(Loop(UnitLit(), Inl(TOP, Var(0))), fuel=500) is TIMEOUT


def test_unbound_variable_is_stuck():
    assert ev(Var(3)) is STUCK


def test_zero_fuel_times_out():
    assert eval_term(0, (), IntLit(1)) is TIMEOUT
    with pytest.raises(ValueError):
        run(0, (), IntLit(1))


def test_list_encoding():
    v = list_value([3, 4, 5])
    assert v == VInr(VPair(VInt(3), VInr(VPair(VInt(4), VInr(VPair(VInt(5), VInl(V_UNIT)))))))
    assert decode_list(v) == [3, 4, 5]
    assert decode_list(VInt(1)) is None


def test_values_render():
    assert str(list_value([1])) == "inr((1, inl(unit)))"


@given(terms(depth=5), st.integers(1, 60), st.integers(1, 60))
def test_fuel_monotone(t, n, extra):
    small = eval_term(n, (), t)
    if small is not TIMEOUT:
        assert eval_term(n + extra, (), t) == small
