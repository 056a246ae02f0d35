import pytest
from hypothesis import given, settings, strategies as st

from rfn import gen
from rfn.interp import VBool, VInl, VInt, VPair, list_value
from rfn.oracle import (
    DEFAULT, HigherOrderType, OracleConfig, and3, brute_entails, countermodel, or3, vmember,
)
from rfn.parser import parse_term, resolve_names
from rfn.syntax import (
    BOOL, INT32, UNIT, BinOp, Inter, IntLit, Loop, Mu, Op, Pi, Refine, Sigma, Sum, TVar, Union,
    UnitLit, Var, Inl, TOP,
)

from strategies import fo_types, rngs

LIST = Mu(Sum(UNIT, Sigma(INT32, TVar(0))))
POS = Refine(INT32, BinOp(Op.GT, Var(0), IntLit(0)))


def atoms_term(text, atoms):
    return resolve_names(parse_term(text), tuple(reversed(atoms)))


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(mu_depth=0)
    with pytest.raises(ValueError):
        OracleConfig(int_domain=(3, 2))


def test_three_valued_connectives():
    assert and3(None, False) is False and and3(None, True) is None
    assert or3(None, True) is True and or3(None, False) is None


def test_base_membership():
    assert vmember(DEFAULT, INT32, VInt(5)) is True
    assert vmember(DEFAULT, POS, VInt(-1)) is False
    assert vmember(DEFAULT, BOOL, VBool(False)) is True
    assert vmember(DEFAULT, UNIT, VInt(0)) is False


def test_list_membership():
    assert vmember(DEFAULT, LIST, list_value([1, 2])) is True
    assert vmember(DEFAULT, LIST, VInl(VInt(1))) is False


def test_mu_truncation_misses_deep_defects():
    # a bool hidden in the ninth cell is invisible to three unfoldings
    bad = list_value(list(range(8)) + [True])
    assert vmember(OracleConfig(mu_depth=3), LIST, bad) is True
    assert vmember(OracleConfig(mu_depth=12), LIST, bad) is False


def test_dependent_pair_membership():
    succ = Sigma(INT32, Refine(INT32, BinOp(Op.EQ, Var(0), BinOp(Op.ADD, Var(1), IntLit(1)))))
    assert vmember(DEFAULT, succ, VPair(VInt(1), VInt(2))) is True
    assert vmember(DEFAULT, succ, VPair(VInt(1), VInt(3))) is False


def test_diverging_predicate_is_inconclusive():
    spin = Refine(INT32, Loop(UnitLit(), Inl(TOP, Var(0))))
    assert vmember(DEFAULT, spin, VInt(0)) is None


def test_higher_order_is_a_contract_error():
    with pytest.raises(HigherOrderType):
        vmember(DEFAULT, Pi(INT32, INT32), VInt(0))
    with pytest.raises(HigherOrderType):
        vmember(DEFAULT, TVar(0), VInt(0))


def test_brute_entails_examples():
    assert brute_entails(DEFAULT, ["x"], [atoms_term("x > 1", ["x"])], atoms_term("x > 0", ["x"]))
    assert countermodel(DEFAULT, ["x"], [atoms_term("x > 0", ["x"])], atoms_term("x > 1", ["x"])) == (1,)
    xy = ["x", "y"]
    assert brute_entails(DEFAULT, xy, [atoms_term("y == 2*x + 3*x", xy)], atoms_term("y == 5*x", xy))


def test_stuck_goal_fails_and_stuck_fact_is_skipped():
    x = ["x"]
    assert not brute_entails(DEFAULT, x, [], atoms_term("10 / x == 10 / x", x))
    assert brute_entails(DEFAULT, x, [atoms_term("10 / x > 100", x)], atoms_term("false", x))


def test_interpreter_fallback_agrees():
    # a Let is outside the kernel, forcing the interpreter path
    x = ["x"]
    fact = atoms_term("let y = x + 1 in y > 3", x)
    assert countermodel(DEFAULT, x, [fact], atoms_term("x > 2", x)) is None
    assert countermodel(DEFAULT, x, [fact], atoms_term("x > 3", x)) == (3,)


@given(fo_types(nvars=0, depth=3), rngs)
def test_refinement_implies_base(a, rng):
    p = gen.bool_expr(rng, 1, 1)
    v = gen.value_of(rng, a)
    if vmember(DEFAULT, Refine(a, p), v) is True:
        assert vmember(DEFAULT, a, v) is True


@given(fo_types(nvars=0, depth=2), fo_types(nvars=0, depth=2), rngs)
def test_lattice_pointwise(a, b, rng):
    v = gen.value_of(rng, rng.choice((a, b)))
    ma, mb = vmember(DEFAULT, a, v), vmember(DEFAULT, b, v)
    assert vmember(DEFAULT, Inter(a, b), v) == and3(ma, mb)
    assert vmember(DEFAULT, Union(a, b), v) == or3(ma, mb)


@given(fo_types(nvars=0, depth=3), rngs, st.integers(1, 7))
def test_mu_truncation_is_monotone(a, rng, d):
    v = gen.value_of(rng, a, depth=6)
    deep = vmember(OracleConfig(mu_depth=d + 1), a, v)
    if deep is True:
        assert vmember(OracleConfig(mu_depth=d), a, v) is True


@settings(max_examples=60)
@given(rngs)
def test_brute_entails_reflexive_and_transitive(rng):
    atoms = ["x", "y"]
    p, q, r = (gen.bool_expr(rng, 2, 1) for _ in range(3))
    assert brute_entails(DEFAULT, atoms, [p], p)
    if brute_entails(DEFAULT, atoms, [p], q) and brute_entails(DEFAULT, atoms, [q], r):
        assert brute_entails(DEFAULT, atoms, [p], r)
