from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from appl.domains import make_domain
from appl.domains.interval import EMPTY, INF, Interval, interval_domain
from appl.errors import CarrierMismatch, FastPathUnavailable, InfiniteBasisDecomposition, StarDidNotStabilize
from appl.laws import random_program
from appl.regcmd import parse_cmd
from appl.semantics import EvalContext, Exactness, bsem_eval, isem_eval, join_extension, sem_eval

from oracles import collecting_post, irreducible_points

IRR = make_domain("interval(irreducible)")
SIMPLE = make_domain("interval(simple)")
HOLE = parse_cmd("(x<>0?);(x=0?)")
Q = parse_cmd("(inc x + dec x);(x=0?)")
Q_SPLIT = parse_cmd("(inc x;(x=0?)) + (dec x;(x=0?))")
T_STAR = parse_cmd("((x mod 2 = 1?);x:=x-2 + x:=x+2)*")
R_STAR = parse_cmd("((x=1?);x:=x-2 + x:=x+2)*")


def ev(dom, r, d, **kw):
    return sem_eval(r, d, EvalContext(dom, **kw))


def test_hole_depends_on_basis():
    assert ev(IRR, HOLE, Interval(-1, 1)) == (EMPTY, Exactness.EXACT)
    assert ev(SIMPLE, HOLE, Interval(-1, 1)) == (Interval(0, 0), Exactness.EXACT)
    assert isem_eval(HOLE, Interval(-1, 1), EvalContext(SIMPLE)) == Interval(0, 0)


def test_right_distributivity_fails_on_intervals():
    assert ev(IRR, Q, Interval(0, 0))[0] == Interval(0, 0)
    assert ev(IRR, Q_SPLIT, Interval(0, 0))[0] == EMPTY


def test_basis_semantics_examples():
    ctx = EvalContext(IRR)
    assert bsem_eval(HOLE, Interval(-1, -1), ctx) == EMPTY
    assert bsem_eval(parse_cmd("1"), Interval(3, 3), ctx) == Interval(3, 3)
    assert bsem_eval(Q, Interval(0, 0), ctx) == Interval(0, 0)


def test_join_extension():
    ctx = EvalContext(IRR)
    f = lambda b: bsem_eval(parse_cmd("x=0?"), b, ctx)
    assert join_extension(f, Interval(-1, 1), ctx) == Interval(0, 0)
    assert join_extension(f, EMPTY, ctx) == EMPTY


def test_unbounded_input_has_no_decomposition():
    with pytest.raises(InfiniteBasisDecomposition):
        ev(IRR, HOLE, Interval(0, INF))


def test_stars_on_irreducible_intervals():
    assert ev(IRR, T_STAR, Interval(0, 0)) == (Interval(0, INF), Exactness.EXACT)
    assert ev(IRR, R_STAR, Interval(0, 0)) == (Interval(0, INF), Exactness.EXACT)
    assert ev(IRR, parse_cmd("(inc x)*"), Interval(0, 3))[0] == Interval(0, INF)
    assert ev(IRR, parse_cmd("while x<10 do inc x"), Interval(0, 0))[0] == Interval(10, 10)


def test_simple_interval_stars():
    # an unbounded widened result cannot be confirmed by finitely many iterates
    assert ev(SIMPLE, parse_cmd("(inc x)*"), Interval(0, 0)) == (Interval(0, INF), Exactness.WIDENED)
    # narrowing recovers the loop bound and the iterates confirm it
    value, flag = ev(SIMPLE, parse_cmd("while x<10 do inc x"), Interval(0, 0))
    assert (value, flag) == (Interval(10, 10), Exactness.EXACT)
    value, flag = ev(SIMPLE, parse_cmd("((x<50?);x:=x+1)*"), Interval(0, 0))
    assert (value, flag) == (Interval(0, 50), Exactness.EXACT)
    # without widening the iterates close on their own
    value, flag = ev(SIMPLE, parse_cmd("while x<10 do inc x"), Interval(0, 0), widening_enabled=False)
    assert (value, flag) == (Interval(10, 10), Exactness.EXACT)


def test_widening_off_fails_loudly():
    body = parse_cmd("((x>=0?);x:=x+1 + (x<0?);x:=x-1)*")
    with pytest.raises(StarDidNotStabilize):
        ev(SIMPLE, body, Interval(0, 0), star_budget=50, widening_enabled=False)


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        ev(IRR, HOLE, frozenset())


def test_fast_path_unavailable():
    with pytest.raises(FastPathUnavailable):
        isem_eval(HOLE, Interval(-1, 1), EvalContext(IRR))


def test_hyper_keeps_outcomes_apart():
    dom = make_domain("hyper(collecting(x:0..3))")
    value, flag = ev(dom, parse_cmd("1 + x:=x+1"), dom.parse_value("{{0},{2}}"))
    assert value == dom.parse_value("{{0,1},{2,3}}") and flag is Exactness.EXACT


def test_incorrectness_reaches_loop_targets():
    dom = make_domain("incorrectness(x:-2..1002)")
    r = parse_cmd("((x>0?);dec x + (x<1000?);inc x)*")
    value, _ = ev(dom, r, dom.parse_value("{0,999}"))
    assert value == frozenset((v,) for v in range(0, 1001))


# ---------------------------------------------------------------- oracles

SPACE = (-3, 3)
COLL = make_domain("collecting(x:-3..3)")


@given(st.integers(0, 10**6), st.integers(0, 3))
def test_collecting_matches_brute_force(seed, d):
    rng = random.Random(seed)
    r = random_program(rng, d)
    pre = frozenset((v,) for v in range(-3, 4) if rng.random() < 0.5)
    value, flag = ev(COLL, r, pre)
    assert flag is Exactness.EXACT
    assert value == frozenset((v,) for v in collecting_post(r, [s[0] for s in pre], *SPACE))


@given(st.integers(0, 10**6), st.integers(0, 3))
def test_collecting_fast_path_equals_basis_semantics(seed, d):
    rng = random.Random(seed)
    r = random_program(rng, d)
    pre = frozenset((v,) for v in range(-3, 4) if rng.random() < 0.5)
    fast = ev(COLL, r, pre)[0]
    slow = sem_eval(r, pre, EvalContext(COLL, fast_path=False))[0]
    assert fast == slow


def test_hyper_divergence_on_the_empty_hyperset():
    # divergence yields the sum's neutral element {empty} even from no sets
    dom = make_domain("hyper(collecting(x:-3..3))")
    assert ev(dom, parse_cmd("0"), frozenset())[0] == frozenset({frozenset()})
    assert ev(dom, parse_cmd("inc x"), frozenset())[0] == frozenset()


@given(st.integers(0, 10**6), st.integers(0, 3))
def test_hyper_acts_pointwise(seed, d):
    rng = random.Random(seed)
    dom = make_domain("hyper(collecting(x:-3..3))")
    r = random_program(rng, d)
    h = frozenset(
        frozenset((v,) for v in range(-3, 4) if rng.random() < 0.4) for _ in range(rng.randint(1, 3))
    )
    value = ev(dom, r, h)[0]
    expect = frozenset(
        frozenset((v,) for v in collecting_post(r, [s[0] for s in x], *SPACE)) for x in h
    )
    assert value == expect


@given(st.integers(0, 10**6), st.integers(0, 3))
def test_incorrectness_equals_basis_semantics(seed, d):
    rng = random.Random(seed)
    dom = make_domain("incorrectness(x:-3..3)")
    r = random_program(rng, d)
    pre = frozenset((v,) for v in range(-3, 4) if rng.random() < 0.5)
    assert ev(dom, r, pre)[0] == bsem_eval(r, pre, EvalContext(dom))
    assert ev(dom, r, pre)[0] == ev(COLL, r, pre)[0]


BOUNDED_IRR = interval_domain(True, -8, 8)


@given(st.integers(0, 10**6), st.integers(0, 3), st.integers(-4, 4), st.integers(0, 3))
def test_irreducible_intervals_match_brute_force(seed, d, lo, width):
    r = random_program(random.Random(seed), d)
    a = Interval(lo, lo + width)
    value, _ = ev(BOUNDED_IRR, r, a)
    pts = set()
    for z in range(lo, lo + width + 1):
        pts |= irreducible_points(r, z, -8, 8)
    expect = EMPTY if not pts else Interval(min(pts), max(pts))
    assert value == expect


@given(st.integers(0, 10**6), st.integers(0, 3), st.integers(-4, 4), st.integers(0, 3))
def test_simple_intervals_are_inductive(seed, d, lo, width):
    r = random_program(random.Random(seed), d, stars=False)
    a = Interval(lo, lo + width)
    assert ev(SIMPLE, r, a)[0] == isem_eval(r, a, EvalContext(SIMPLE))


@given(st.integers(0, 10**6), st.integers(0, 2), st.integers(-6, 6), st.integers(0, 5))
def test_unbounded_pumping_agrees_with_bounded_run(seed, d, z, _):
    # when the bounded run stays strictly inside its limits, the unbounded
    # evaluation must give the same interval
    r = random_program(random.Random(seed), d)
    wide = interval_domain(True, -40, 40)
    small, _f = ev(wide, r, Interval(z, z))
    if small.empty or (small.lo > -30 and small.hi < 30):
        big, flag = ev(IRR, r, Interval(z, z), star_budget=2000)
        if flag is Exactness.EXACT:
            assert big == small
