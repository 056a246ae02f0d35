import random

import pytest
from hypothesis import given, settings, strategies as st

from rfn import gen, oracle
from rfn.parser import free_names, parse_term, resolve_names
from rfn.solver import EGraph, NotInFragment, entails
from rfn.syntax import INT32, Abs, BinOp, BoolLit, IntLit, Op, Var

from egraph_stress import stress


def q(text, atoms):
    return resolve_names(parse_term(text), tuple(reversed(atoms)))


def ent(facts, goal, hyp="true"):
    named = [parse_term(f) for f in facts] + [parse_term(goal), parse_term(hyp)]
    atoms = []
    for n in named:
        atoms += [x for x in free_names(n) if x not in atoms]
    fs = [q(f, atoms) for f in facts]
    return entails(fs, q(hyp, atoms), q(goal, atoms), depth=len(atoms), names=atoms)


# ---------------------------------------------------------------- e-graph basics


def test_hashconsing():
    g = EGraph()
    x = g.atom("x")
    assert g.plus(x, g.const(1)) == g.plus(g.const(1), x)


def test_constant_folding():
    g = EGraph()
    assert g.find(g.plus(g.const(2), g.const(3))) == g.find(g.const(5))
    assert g.is_true(g.lt(g.const(0), g.const(1)))
    assert g.find(g.plus(g.const(2**31 - 1), g.const(1))) == g.find(g.const(-(2**31)))


def test_flat_sums_collect_like_terms():
    g = EGraph()
    x = g.atom("x")
    lhs = g.plus(g.times(g.const(2), x), g.times(g.const(3), x))
    assert g.find(lhs) == g.find(g.times(g.const(5), x))
    assert g.find(g.minus(x, x)) == g.find(g.const(0))


def test_products_of_atoms_stay_opaque():
    g = EGraph()
    x, y, z = g.atom("x"), g.atom("y"), g.atom("z")
    distributed = g.plus(g.times(x, y), g.times(x, z))
    assert g.find(g.times(x, g.plus(y, z))) != g.find(distributed)


def test_merge_repairs_parents():
    g = EGraph()
    x, y = g.atom("x"), g.atom("y")
    fx, fy = g.pair(x, g.const(1)), g.pair(y, g.const(1))
    g.merge(x, y)
    assert g.find(fx) == g.find(fy)


def test_representative_prefers_constants():
    g = EGraph()
    x = g.atom("x")
    g.merge(x, g.const(3))
    assert g.key(g.find(x)) == ("const", "int", 3)


def test_constructor_injectivity_and_clash():
    g = EGraph()
    a, b = g.atom("a"), g.atom("b")
    g.merge(g.inl(a), g.inl(b))
    assert g.find(a) == g.find(b)
    g2 = EGraph()
    g2.merge(g2.inl(g2.const(1)), g2.inr(g2.const(1)))
    assert g2.inconsistent


def test_truth_conflict_is_inconsistent():
    g = EGraph()
    x = g.atom("x")
    g.assert_true(g.lt(x, x))
    assert g.inconsistent


def test_bound_variables_are_never_merged():
    g = EGraph()
    b = g.bvar(0)
    g.merge(b, g.const(1))
    assert g.find(b) == b and g.refused >= 1
    assert not g.invariant_violations()


def test_beta_and_projection():
    g = EGraph()
    lam = g.lam(g.plus(g.bvar(0), g.const(1)))
    assert g.find(g.app(lam, g.const(2))) == g.find(g.const(3))
    p = g.pair(g.atom("a"), g.atom("b"))
    assert g.find(g.proj(2, p)) == g.find(g.atom("b"))


def test_linear_solving():
    g = EGraph()
    x, y = g.atom("x"), g.atom("y")
    g.merge(g.plus(x, g.const(1)), y)
    assert g.find(x) == g.find(g.minus(y, g.const(1)))


def test_merge_cap_marks_incomplete():
    g = EGraph(merge_cap=2)
    atoms = [g.atom(i) for i in range(6)]
    for a, b in zip(atoms, atoms[1:]):
        g.merge(a, b)
    assert g.incomplete


def test_trace_lines():
    lines = []
    g = EGraph(trace=lines.append)
    g.assert_true(g.lt(g.atom("x"), g.const(3)))
    assert lines and all(line.startswith("merge ") for line in lines)


def test_stress_invariants_short():
    for g in stress(seed=11, steps=1500):
        assert not g.invariant_violations()


# ---------------------------------------------------------------- entailment


@pytest.mark.parametrize("facts,goal", [
    (["y == 2*x + 3*x"], "y == 5*x"),
    (["x == 3"], "x + 1 == 4"),
    (["p && q"], "q"),
    (["x > 1"], "x > 0"),
    (["x < y", "y < z"], "x < z"),
    (["x == y"], "y == x"),
    (["x > 0 || x < -5"], "x != 0"),
    (["a == b", "b == c"], "a + 1 == c + 1"),
    ([], "x == x"),
    (["x != 0"], "x != 0"),
    (["s == (0, 10)"], "s._1 == 0"),
    (["s == inl[Int32] 3"], "s != inr[Int32] 3"),
    (["x + 1 == y"], "x == y - 1"),
    (["x == 42"], "x % 2 == 0"),
    (["false"], "x == 7"),
])
def test_entailed(facts, goal):
    assert ent(facts, goal)


@pytest.mark.parametrize("facts,goal", [
    (["x > 0"], "x > 1"),
    (["x + 1 > x"], "true == false"),
    ([], "x == y"),
    (["x > 0 || y > 0"], "x > 0"),
    (["x == 43"], "x % 2 == 0"),
])
def test_not_entailed(facts, goal):
    assert not ent(facts, goal)


def test_equality_with_boolean_subterm():
    facts = [BinOp(Op.EQ, Var(0), BinOp(Op.EQ, IntLit(0), IntLit(0)))]
    assert entails(facts, BoolLit(True), BinOp(Op.EQ, Var(0), BoolLit(True)), depth=1)


def test_lambda_hypothesis_opens_binder():
    hyp = Abs(INT32, BinOp(Op.GT, Var(0), IntLit(1)))
    goal = Abs(INT32, BinOp(Op.GT, Var(0), IntLit(0)))
    assert entails([], hyp, goal)
    assert not entails([], goal, hyp)


def test_case_split_cap():
    facts = [BinOp(Op.OR, BinOp(Op.EQ, Var(i % 2), IntLit(i)), BinOp(Op.EQ, Var(i % 2), IntLit(-i)))
             for i in range(1, 11)]
    assert not entails(facts, BoolLit(True), BoolLit(True), depth=2, max_splits=8)
    assert entails(facts[:3], BoolLit(True), BoolLit(True), depth=2)


def test_unsupported_terms_are_rejected():
    from rfn.syntax import Loop, UnitLit
    with pytest.raises(NotInFragment):
        entails([], BoolLit(True), Loop(UnitLit(), Var(0)), depth=0)


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=3))
def test_sound_against_enumeration(seed, k):
    facts, goal = gen.solver_query(random.Random(seed), k)
    atoms = [f"a{i}" for i in range(k)]
    if entails(facts, BoolLit(True), goal, depth=k):
        assert oracle.countermodel(oracle.DEFAULT, atoms, facts, goal) is None


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_sound_with_division_by_constants(seed):
    facts, goal = gen.solver_query(random.Random(seed), 2, division=True)
    if entails(facts, BoolLit(True), goal, depth=2):
        assert oracle.countermodel(oracle.DEFAULT, ["a", "b"], facts, goal) is None


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_entailment_is_reflexive(seed):
    p = gen.bool_expr(random.Random(seed), 2, 2)
    assert entails([p], BoolLit(True), p, depth=2)
