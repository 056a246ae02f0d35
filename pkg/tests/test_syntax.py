import pytest
from hypothesis import given, strategies as st

from rfn.syntax import (
    BOOL, BOT, INT32, NEGATIVE, POSITIVE, TOP, UNIT, TYPE,
    Abs, App, BinOp, BoolLit, Forall, IntLit, Inter, Let, MatchPair, Mu, Op, Pi, Refine,
    Sigma, Sum, TVar, Union, Var,
    avoid, firstorder, free_in, free_vars, is_closed, open_term, shift, size, spos,
    subst_term, subst_type, unfold,
)

from strategies import fo_types, terms

LIST = Mu(Sum(UNIT, Sigma(INT32, TVar(0))))
GT0 = Refine(INT32, BinOp(Op.GT, Var(0), IntLit(0)))


def test_nodes_are_frozen_and_hashable():
    t = App(Var(0), Var(1))
    with pytest.raises(Exception):
        t.fn = Var(2)
    assert hash(t) == hash(App(Var(0), Var(1)))


def test_names_and_spans_do_not_affect_equality():
    assert Abs(INT32, Var(0), name="x") == Abs(INT32, Var(0), name="y")
    assert IntLit(3, span=(0, 1)) == IntLit(3)


def test_free_vars_respect_binders():
    t = Abs(INT32, App(Var(0), Var(2)))
    assert free_vars(t) == {1}
    assert free_vars(MatchPair(Var(0), BinOp(Op.ADD, Var(1), Var(3)))) == {0, 1}
    assert free_vars(LIST, TYPE) == set()
    assert is_closed(Abs(INT32, Var(0)))


def test_shift_skips_bound_and_underflow_raises():
    t = Abs(INT32, App(Var(0), Var(1)))
    assert shift(t, 2) == Abs(INT32, App(Var(0), Var(3)))
    with pytest.raises(ValueError):
        shift(Var(0), -1)


def test_refinement_binds_its_subject():
    ty = Refine(INT32, BinOp(Op.LT, Var(0), Var(1)))
    assert free_vars(ty) == {0}
    assert shift(ty, 1) == Refine(INT32, BinOp(Op.LT, Var(0), Var(2)))


def test_subst_closes_scope():
    t = BinOp(Op.ADD, Var(0), Var(1))
    assert subst_term(t, 0, IntLit(5)) == BinOp(Op.ADD, IntLit(5), Var(0))
    assert open_term(Abs(INT32, Var(1)), IntLit(5)) == Abs(INT32, IntLit(5))


def test_subst_under_binder_shifts_replacement():
    body = Abs(INT32, App(Var(1), Var(0)))
    assert subst_term(body, 0, Var(3)) == Abs(INT32, App(Var(4), Var(0)))


def test_unfold_list():
    assert unfold(LIST) == Sum(UNIT, Sigma(INT32, LIST))


def test_subst_type_leaves_term_indices_alone():
    ty = Refine(TVar(0), BinOp(Op.EQ, Var(0), Var(1)))
    assert subst_type(ty, 0, INT32) == Refine(INT32, BinOp(Op.EQ, Var(0), Var(1)))


def test_strict_positivity():
    assert spos(0, LIST.body)
    assert not spos(0, Pi(TVar(0), INT32))
    assert spos(0, Pi(INT32, TVar(0)))
    assert not spos(0, Union(TVar(0), UNIT))
    assert not spos(0, Forall(TVar(0), TOP, INT32))
    assert spos(0, Forall(BOT, TOP, TVar(1)))
    assert spos(0, Refine(TVar(0), BoolLit(True)))


def test_firstorder():
    assert firstorder(INT32) and firstorder(GT0)
    assert not firstorder(BOOL)
    assert not firstorder(Pi(INT32, INT32))


def test_avoid_positive_widens_predicate():
    ty = Refine(INT32, BinOp(Op.LT, Var(0), Var(1)))
    assert avoid(ty, 0, POSITIVE) == Refine(INT32, BoolLit(True))
    assert avoid(ty, 0, NEGATIVE) == Refine(INT32, BoolLit(False))


def test_avoid_flips_in_domain():
    dom = Refine(INT32, BinOp(Op.LT, Var(0), Var(1)))
    got = avoid(Pi(dom, INT32), 0, POSITIVE)
    assert got == Pi(Refine(INT32, BoolLit(False)), INT32)


def test_avoid_keeps_unrelated_variables():
    ty = Refine(INT32, BinOp(Op.LT, Var(0), Var(2)))
    assert avoid(ty, 0) == Refine(INT32, BinOp(Op.LT, Var(0), Var(1)))


def test_avoid_non_positive_mu():
    bad = Mu(Union(TVar(0), Refine(INT32, BinOp(Op.LT, Var(0), Var(1)))))
    assert avoid(bad, 0, POSITIVE) == TOP
    assert avoid(bad, 0, NEGATIVE) == BOT


@given(terms(nvars=2, depth=4), st.integers(min_value=0, max_value=3))
def test_shift_roundtrip(t, k):
    assert shift(shift(t, k), -k) == t


@given(terms(nvars=2, depth=4))
def test_subst_of_fresh_var_is_identity(t):
    # substituting Var(0) for Var(0) without closing leaves the term unchanged
    assert subst_term(t, 0, Var(0), close=False) == t


@given(fo_types(nvars=2, depth=3))
def test_avoid_removes_the_variable(ty):
    for pol in (POSITIVE, NEGATIVE):
        out = avoid(ty, 0, pol)
        assert not free_in(0, shift(out, 1))
        assert size(out) <= size(ty)


@given(fo_types(nvars=1, depth=3))
def test_avoid_is_identity_when_variable_unused(ty):
    lifted = shift(ty, 1)
    assert avoid(lifted, 0) == ty
    assert avoid(lifted, 0, NEGATIVE) == ty


def test_operator_tables():
    assert {o.value for o in Op} >= {"+", "-", "*", "/", "%", "==", "!=", "<", "<=", ">", ">=", "&&", "||"}
    assert Inter(INT32, INT32) != Union(INT32, INT32)
    assert Let(None, IntLit(1), Var(0)).annotation is None
