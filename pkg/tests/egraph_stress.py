"""Randomized add/merge driver for e-graph invariant checks."""
import random

from rfn.solver.egraph import EGraph


def random_op(rng: random.Random, g: EGraph, nodes: list[int]) -> None:
    pick = lambda: rng.choice(nodes)
    k = rng.randrange(16)
    if k == 0:
        nodes.append(g.const(rng.randint(-3, 3)))
    elif k == 1:
        nodes.append(g.atom(("a", rng.randrange(4))))
    elif k == 2:
        nodes.append(g.bvar(rng.randrange(2)))
    elif k == 3:
        nodes.append(g.plus(pick(), pick()))
    elif k == 4:
        nodes.append(g.times(pick(), pick()))
    elif k == 5:
        nodes.append(g.eq(pick(), pick()))
    elif k == 6:
        nodes.append(g.lt(pick(), pick()))
    elif k == 7:
        nodes.append(g.pair(pick(), pick()))
    elif k == 8:
        nodes.append(rng.choice((g.inl, g.inr))(pick()))
    elif k == 9:
        nodes.append(g.proj(rng.choice((1, 2)), pick()))
    elif k == 10:
        nodes.append(g.app(g.lam(pick()), pick()))
    elif k == 11:
        nodes.append(g.not_(pick()))
    elif k == 12:
        nodes.append(rng.choice((g.and_, g.or_))(pick(), pick()))
    else:
        g.merge(pick(), pick(), "stress")


def stress(seed: int, steps: int, reset_every: int = 150):
    """Yield the graph after every step; a fresh graph starts on inconsistency or every ``reset_every`` steps."""
    rng = random.Random(seed)
    g = EGraph(merge_cap=2000)
    nodes = [g.true, g.false, g.unit]
    for step in range(steps):
        if g.inconsistent or g.incomplete or step % reset_every == 0:
            g = EGraph(merge_cap=2000)
            nodes = [g.true, g.false, g.unit]
        random_op(rng, g, nodes)
        yield g
