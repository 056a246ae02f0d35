"""Acceptance suite: one test per criterion, each reporting a pass/fail line."""
import ctypes
import io
import random
import statistics
import struct
import time

import pytest

from rfn import gen, oracle
from rfn.anf import anf
from rfn.checker import EMPTY, Checker, subtype
from rfn.cli import Reporter, check_program
from rfn.interp import STUCK, TIMEOUT, VInt, decode_list, delta, eval_term, list_value
from rfn.oracle import DEFAULT, vmember
from rfn.parser import free_names, load, parse_term, parse_type, resolve_names
from rfn.solver import entails
from rfn.syntax import (
    INT32, NEGATIVE, POSITIVE, UNIT, Abs, BoolLit, Let, Mu, Op, Refine, Sigma, Sum, TVar, UnitLit,
    avoid, contains_op, free_in, unfold,
)

from egraph_stress import stress

LIST = Mu(Sum(UNIT, Sigma(INT32, TVar(0))))


@pytest.fixture
def criterion(record_property):
    def declare(n, title):
        record_property("criterion", n)
        record_property("title", title)
        return lambda detail: record_property("detail", detail)
    return declare


def pred(text, atoms):
    return resolve_names(parse_term(text), tuple(reversed(atoms)))


def median_ms(fn, runs=5):
    times = []
    for _ in range(runs):
        start = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - start) * 1e3)
    return result, statistics.median(times)


# ---------------------------------------------------------------- 1


def test_criterion_01_collect_end_to_end(criterion):
    detail = criterion(1, "collect type-checks and evaluates on [3, -1, 4, -1, 5]")
    start = time.perf_counter()
    with open("corpus/collect.rfn", encoding="utf-8") as fh:
        text = fh.read()
    program = load(text)
    rep = Reporter(text, "collect.rfn", True, io.StringIO())
    assert check_program(program, rep), rep.diagnostics

    # the result type of main is a list refined by the predicate
    checker = Checker()
    ctx = EMPTY
    for name, ty, body in zip(program.names, program.types, program.bodies):
        ctx, _ = checker._let_context(ctx, Let(ty, anf(body), UnitLit(), name=name))
    result_ty = checker.infer(ctx, anf(program.main))
    positive_list = resolve_names(parse_type("mu X. Unit + (Sig(h: {v: Int32 with v > 0}) * X)"))
    assert checker.subtype(ctx, result_ty, positive_list)

    out = eval_term(1000, (), program.as_term())
    elapsed = time.perf_counter() - start
    # the accumulator conses each kept element onto the front, so the order is reversed
    assert out.value == list_value([5, 4, 3])
    assert sorted(decode_list(out.value)) == [3, 4, 5]
    assert elapsed < 1.0
    detail(f"result {decode_list(out.value)}, {elapsed * 1e3:.1f} ms")


# ---------------------------------------------------------------- 2

VIGNETTES = {
    "a": (["y == 2*x + 3*x"], "true", "y == 5*x"),
    "b": (["x == 3"], "true", "x + 1 == 4"),
    "c": (["p && q"], "true", "q"),
    "d": (["s == (0, 10)"], "true", "s._1 == 0"),
}


def test_criterion_02_solver_vignettes(criterion):
    detail = criterion(2, "solver normalization vignettes, each under 10 ms")
    timings = {}
    for key, (facts, hyp, goal) in VIGNETTES.items():
        atoms = []
        for text in facts + [goal]:
            atoms += [x for x in free_names(parse_term(text)) if x not in atoms]
        fs = [pred(f, atoms) for f in facts]
        ok, ms = median_ms(lambda: entails(fs, pred(hyp, atoms), pred(goal, atoms), depth=len(atoms)))
        assert ok, key
        timings[key] = ms
    # (e): the hypothesis x > 1 on a binder entails x > 0
    hyp = Abs(INT32, pred("x > 1", ["x"]))
    goal = Abs(INT32, pred("x > 0", ["x"]))
    ok, timings["e"] = median_ms(lambda: entails([], hyp, goal))
    assert ok
    assert max(timings.values()) < 10, timings
    detail(", ".join(f"{k} {v:.2f} ms" for k, v in timings.items()))


# ---------------------------------------------------------------- 3


def test_criterion_03_refinement_subtyping(criterion):
    detail = criterion(3, "refinement subtyping and countermodel for the converse")
    gt1 = resolve_names(parse_type("{x: Int32 with x > 1}"))
    gt0 = resolve_names(parse_type("{x: Int32 with x > 0}"))
    assert subtype(EMPTY, gt1, gt0)

    rng = random.Random(3)
    for _ in range(100):
        a = gen.first_order_type(rng, 0, 3)
        p = gen.bool_expr(rng, 1, 2)
        assert subtype(EMPTY, Refine(a, p), a)

    checker = Checker()
    assert not checker.subtype(EMPTY, gt0, gt1)
    assert checker.failure.reason == "predicate"
    cm = oracle.countermodel(DEFAULT, ["x"], [gt0.pred], gt1.pred)
    assert cm is not None
    detail(f"countermodel x = {cm[0]}")


# ---------------------------------------------------------------- 4


def test_criterion_04_equirecursive_fold_unfold(criterion):
    detail = criterion(4, "equi-recursive fold/unfold, rejected without strict positivity")
    assert subtype(EMPTY, LIST, unfold(LIST))
    assert subtype(EMPTY, unfold(LIST), LIST)
    # mu X. X | Unit: folding its unfolding needs the mu rule, which positivity forbids
    bad = resolve_names(parse_type("mu X. X | Unit"))
    checker = Checker()
    assert not checker.subtype(EMPTY, unfold(bad), bad)
    assert checker.failure.reason == "not-strictly-positive"
    rejected = 1
    for text in ("mu X. (X | Int32) + Unit", "mu X. Pi(x: X) -> Int32"):
        ty = resolve_names(parse_type(text))
        for lhs, rhs in ((ty, unfold(ty)), (unfold(ty), ty)):
            checker = Checker()
            assert not checker.subtype(EMPTY, lhs, rhs)
            assert checker.failure.reason == "not-strictly-positive"
            rejected += 1
    detail(f"{rejected} non-positive obligations rejected")


# ---------------------------------------------------------------- 5


def test_criterion_05_no_stuck_fuzz(criterion):
    detail = criterion(5, "well-typed programs never get stuck")
    rng = random.Random(5)
    checker = Checker()
    start = time.perf_counter()
    programs = outcomes = timeouts = 0
    while programs < 500:
        t, _ = gen.well_typed_program(rng, checker=checker)
        if contains_op(t, {Op.DIV, Op.MOD}):
            continue
        programs += 1
        for fuel in (1, 4, 16, 64, 256):
            out = eval_term(fuel, (), t)
            assert out is not STUCK, t
            timeouts += out is TIMEOUT
            outcomes += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    detail(f"{programs} programs, {outcomes} runs, {timeouts} timeouts, {elapsed:.1f} s")


# ---------------------------------------------------------------- 6


def test_criterion_06_fuel_monotonicity(criterion):
    detail = criterion(6, "fuel monotonicity")
    rng = random.Random(6)
    finished = 0
    for _ in range(1000):
        t = gen.random_term(rng, 0, 5)
        n = rng.randint(1, 40)
        m = rng.randint(n + 1, 120)
        small = eval_term(n, (), t)
        if small is not TIMEOUT:
            finished += 1
            assert eval_term(m, (), t) == small, t
    detail(f"{finished} of 1000 terminated at the smaller fuel")


# ---------------------------------------------------------------- 7


def test_criterion_07_avoidance_soundness(criterion):
    detail = criterion(7, "avoidance soundness against the value interpretation")
    rng = random.Random(7)
    checked = skipped = mentions = 0
    for _ in range(1000):
        a = gen.first_order_type(rng, 1, 3)
        mentions += free_in(0, a)
        v = gen.value_of(rng, a)
        env = (VInt(rng.randint(-8, 8)),)
        up, down = avoid(a, 0, POSITIVE), avoid(a, 0, NEGATIVE)
        inside = vmember(DEFAULT, a, v, env)
        widened = vmember(DEFAULT, up, v)
        narrowed = vmember(DEFAULT, down, v)
        if None in (inside, widened, narrowed):
            skipped += 1
            continue
        checked += 1
        if inside:
            assert widened, (a, v, env)
        if narrowed:
            assert inside, (a, v, env)
    detail(f"{checked} conclusive triples ({mentions} types mention the variable), {skipped} inconclusive skipped")


# ---------------------------------------------------------------- 8


def test_criterion_08_solver_soundness(criterion):
    detail = criterion(8, "solver soundness against enumeration on [-8, 8]")
    rng = random.Random(8)
    proved = incomplete = violations = 0
    for _ in range(2000):
        k = rng.randint(1, 3)
        facts, goal = gen.solver_query(rng, k)
        atoms = [f"a{i}" for i in range(k)]
        claimed = entails(facts, BoolLit(True), goal, depth=k)
        holds = oracle.brute_entails(DEFAULT, atoms, facts, goal)
        if claimed:
            proved += 1
            violations += not holds
        elif holds:
            incomplete += 1
    assert violations == 0
    detail(f"{proved} proved, 0 violations, {incomplete} true but unproved")


# ---------------------------------------------------------------- 9


def test_criterion_09_egraph_invariants(criterion):
    detail = criterion(9, "e-graph invariants through 10000 random operations")
    for g in stress(seed=9, steps=10_000):
        assert not g.invariant_violations()
    detail("idempotence, congruence and bound-variable isolation held at every step")


# ---------------------------------------------------------------- 10


def twos_complement(n):
    return struct.unpack("<i", struct.pack("<I", n & 0xFFFFFFFF))[0]


def test_criterion_10_int32_semantics(criterion):
    detail = criterion(10, "signed 32-bit wrapping arithmetic")
    assert delta(Op.ADD, VInt(2**31 - 1), VInt(1)) == VInt(-(2**31))
    rng = random.Random(10)
    ops = {Op.ADD: lambda a, b: a + b, Op.SUB: lambda a, b: a - b, Op.MUL: lambda a, b: a * b}
    for _ in range(100):
        a, b = rng.randint(-(2**31), 2**31 - 1), rng.randint(-(2**31), 2**31 - 1)
        op = rng.choice(list(ops))
        expected = twos_complement(ops[op](a, b))
        assert delta(op, VInt(a), VInt(b)) == VInt(expected)
        assert ctypes.c_int32(ops[op](a, b) & 0xFFFFFFFF).value == expected
    detail("100 random cases agree with struct and ctypes")
