"""Predicate entailment via an acyclic e-graph."""
from .egraph import EGraph
from .entail import Builder, NotInFragment, disjuncts, entails, in_fragment

__all__ = ["EGraph", "Builder", "NotInFragment", "disjuncts", "entails", "in_fragment"]
