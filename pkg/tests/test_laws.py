from __future__ import annotations

import pytest

from appl.domains import make_domain, make_gi
from appl.laws import domain_laws, galois_laws, pointwise_completeness, product_completeness
from appl.monoid import check_monoid_laws
from appl.order import SamplePlan
from appl.regcmd import parse_cmd
from appl.semantics import EvalContext, sem_eval

PLAN = SamplePlan(seed=20240601, samples=200)

SUITE = [
    "collecting(x:0..2)",
    "incorrectness(x:0..2)",
    "interval(irreducible)",
    "interval(simple)",
    "hyper(collecting(x:0..2))",
    "pointwise(interval-over-powerset(x:0..3))",
    "product(interval-over-powerset(x:0..3))",
    "downclosed(hyper(interval))",
]


def failures(report) -> list:
    return [(e.name, e.counterexample) for e in report.entries if not e.passed]


@pytest.mark.parametrize("spec", SUITE)
def test_domain_law_suite(spec):
    report = domain_laws(make_domain(spec), PLAN, depth=3)
    assert failures(report) == []
    assert all(e.checked >= 200 for e in report.entries)
    names = {e.name for e in report.entries}
    assert {"sem monotonicity", "additivity on dense families", "left-expansion"} <= names


@pytest.mark.parametrize("seed", [1, 2])
def test_monoid_laws_other_seeds(seed):
    for spec in SUITE[:5]:
        dom = make_domain(spec)
        assert failures(check_monoid_laws(dom.monoid, dom.lattice, SamplePlan(seed=seed, samples=100))) == []


@pytest.mark.parametrize("space", ["x:0..2", "x:-1..3"])
def test_completeness_of_the_sums(space):
    bundle = make_gi(f"interval-over-powerset({space})")
    assert failures(pointwise_completeness(bundle, PLAN)) == []
    assert failures(product_completeness(bundle, PLAN)) == []


@pytest.mark.parametrize("gi", ["interval-over-powerset(x:-2..2)", "trivial-top(x:0..2)"])
def test_galois_laws(gi):
    report = galois_laws(make_gi(gi), PLAN)
    assert failures(report) == [] and report.entries


def test_pointwise_left_distributivity_is_only_an_inequality():
    # a pointwise transfer may send one basis element to several members,
    # and the selection sum then pairs results from different members
    dom = make_domain("pointwise(interval-over-powerset(x:0..2))")
    ctx = EvalContext(dom)
    d = dom.parse_value("{empty, [0,2]}")
    r, r1, r2 = "x mod 2 = 1?", "(x<=-1?)+(x<=2?)", "x:=x+1"
    lhs, _ = sem_eval(parse_cmd(f"({r});(({r1}) + {r2})"), d, ctx)
    rhs, _ = sem_eval(parse_cmd(f"({r});({r1}) + ({r});{r2}"), d, ctx)
    assert lhs == dom.parse_value("{[1,2], empty}")
    assert rhs == dom.parse_value("{[1,1], [1,2], [2,2], empty}")
    assert dom.leq(lhs, rhs) and not dom.leq(rhs, lhs)
    assert dom.meta["left_distributive"] is False
