"""Hypothesis strategies wrapping the seeded generators."""
import random

from hypothesis import strategies as st

from rfn import gen

rngs = st.integers(min_value=0, max_value=2**32 - 1).map(random.Random)


@st.composite
def int_exprs(draw, nvars=2, depth=3):
    return gen.int_expr(draw(rngs), nvars, depth)


@st.composite
def predicates(draw, nvars=2, depth=2):
    return gen.bool_expr(draw(rngs), nvars, depth)


@st.composite
def fo_types(draw, nvars=1, depth=3):
    return gen.first_order_type(draw(rngs), nvars, depth)


@st.composite
def terms(draw, nvars=0, depth=4):
    return gen.random_term(draw(rngs), nvars, depth)


@st.composite
def programs(draw, depth=4):
    return gen.well_typed_program(draw(rngs), depth)


int32s = st.integers(min_value=-(2**31), max_value=2**31 - 1)
