"""The twelve acceptance criteria, one test each."""

from __future__ import annotations

import random
from collections import deque

from appl.domains import make_domain, make_gi
from appl.domains.interval import EMPTY, INF, Interval, point
from appl.domains.product import Pair, alpha_product
from appl.laws import domain_laws, galois_laws, pointwise_completeness, product_completeness
from appl.logic import Triple, certify_bca, check_script, check_validity, derive_strongest_post, format_script, load_script, with_post
from appl.order import SamplePlan
from appl.regcmd import parse_cmd
from appl.semantics import EvalContext, Exactness, sem_eval

from conftest import read_corpus
from test_fuzz import derivable, drop_one_element, random_instance

HOLE = "(x<>0?);(x=0?)"
LOOP = "((x>0?);dec x + (x<1000?);inc x)*"
PLAN = SamplePlan(seed=20240601, samples=200)


def evaluate(spec: str, cmd: str, literal: str):
    dom = make_domain(spec)
    value, flag = sem_eval(parse_cmd(cmd), dom.parse_value(literal), EvalContext(dom))
    return dom, value, flag


def test_criterion_01_interval_basis_sensitivity():
    _, irr, f1 = evaluate("interval(irreducible)", HOLE, "[-1,1]")
    _, simple, f2 = evaluate("interval(simple)", HOLE, "[-1,1]")
    assert (irr, f1) == (EMPTY, Exactness.EXACT)
    assert (simple, f2) == (point(0), Exactness.EXACT)


def test_criterion_02_right_distributivity_fails():
    _, grouped, f1 = evaluate("interval(irreducible)", "(inc x + dec x);(x=0?)", "[0,0]")
    _, split, f2 = evaluate("interval(irreducible)", "(inc x;(x=0?)) + (dec x;(x=0?))", "[0,0]")
    assert (grouped, f1) == (point(0), Exactness.EXACT)
    assert (split, f2) == (EMPTY, Exactness.EXACT)


def test_criterion_03_hole_script_and_simple_replay():
    text = read_corpus("intervals_hole.appl")
    assert check_script(text).accepted
    replay = check_script(text.replace("interval(irreducible)", "interval(simple)"))
    assert (replay.accepted, replay.path, replay.condition) == (False, "proof/join", "density")


def test_criterion_04_incorrectness_reach():
    assert check_script(read_corpus("incorrectness_reach.appl")).accepted
    # plain breadth-first reachability, independent of the library
    seen, todo = {0, 999}, deque([0, 999])
    while todo:
        v = todo.popleft()
        succ = ([v - 1] if v > 0 else []) + ([v + 1] if v < 1000 else [])
        for w in succ:
            if -2 <= w <= 1002 and w not in seen:
                seen.add(w)
                todo.append(w)
    assert {0, 2, 1000} <= seen
    dom, value, flag = evaluate("collecting(x:-2..1002)", LOOP, "{0,999}")
    assert flag is Exactness.EXACT and value == frozenset((v,) for v in seen)


def test_criterion_05_hyper_choice():
    assert check_script(read_corpus("hyper_choice.appl")).accepted
    dom, value, flag = evaluate("hyper(collecting(x:0..3))", "1 + x:=x+1", "{{0},{2}}")
    assert flag is Exactness.EXACT
    assert value == frozenset({frozenset({(0,), (1,)}), frozenset({(2,), (3,)})})


def test_criterion_06_incompleteness_example():
    _, t_star, f1 = evaluate("interval(irreducible)", "(x:=x+2)*", "[0,0]")
    _, r_star, f2 = evaluate("interval(irreducible)", "((x=1?);x:=x-2 + x:=x+2)*", "[0,0]")
    assert (t_star, f1) == (Interval(0, INF), Exactness.EXACT)
    assert (r_star, f2) == (Interval(0, INF), Exactness.EXACT)
    text = read_corpus("intervals_rec_inv.appl")
    assert check_script(text).accepted
    _, _, proof = load_script(text)
    assert {"rec", "inv"} <= proof.rules()


def test_criterion_07_downclosed_without_iter():
    text = read_corpus("downclosed_parity.appl")
    assert check_script(text).accepted
    _, _, proof = load_script(text)
    assert "iter" not in proof.rules() and "inv" in proof.rules()


def test_criterion_08_product_script_and_alpha():
    assert check_script(read_corpus("product_reach.appl")).accepted
    bundle = make_gi("interval-over-powerset(x:-2..1002)")
    family = [{1, 500, 999}, {1, 2, 495, 999}, {1, 100, 999}]
    h = frozenset(frozenset((v,) for v in xs) for xs in family)
    assert alpha_product(bundle, h) == Pair(frozenset({(1,), (999,)}), Interval(1, 999))


def test_criterion_09_bca_certification():
    bundle = make_gi("interval-over-powerset(x:-2..2)")
    p = certify_bca(parse_cmd(HOLE), Interval(-1, 1), bundle)
    q = certify_bca(parse_cmd("(inc x + dec x);(x=0?)"), point(0), bundle)
    assert (p.certified, p.value) == (True, EMPTY)
    assert q.certified is False
    assert check_script(read_corpus("bca_hole.appl")).accepted


def test_criterion_10_law_suites():
    specs = [
        "collecting(x:0..2)",
        "incorrectness(x:0..2)",
        "interval(irreducible)",
        "interval(simple)",
        "hyper(collecting(x:0..2))",
        "pointwise(interval-over-powerset(x:0..3))",
        "product(interval-over-powerset(x:0..3))",
    ]
    for spec in specs:
        report = domain_laws(make_domain(spec), PLAN, depth=3)
        bad = [(e.name, e.counterexample) for e in report.entries if not e.passed]
        assert bad == [], spec
        assert min(e.checked for e in report.entries) >= 200, spec


def test_criterion_11_validity_iff_derivable_and_mutants():
    dom = make_domain("collecting(x:0..2)")
    ctx = EvalContext(dom)
    rng = random.Random(2024)
    mutants = 0
    for _ in range(500):
        r, pre, post = random_instance(rng, dom, ctx)
        valid = check_validity(Triple(dom, pre, r, post), ctx).valid
        assert valid == derivable(dom, ctx, r, pre, post)
        if not valid:
            continue
        text = format_script(Triple(dom, pre, r, post), with_post(derive_strongest_post(r, pre, ctx), post))
        bad = drop_one_element(text, rng)
        if bad is not None:
            rep = check_script(bad)
            assert not rep.accepted and any(not t.ok for t in rep.traces)
            mutants += 1
    assert mutants >= 100


def test_criterion_12_completeness_and_galois():
    bundle = make_gi("interval-over-powerset(x:0..3)")
    reports = [
        pointwise_completeness(bundle, PLAN),
        product_completeness(bundle, PLAN),
        galois_laws(bundle, PLAN),
        galois_laws(make_gi("trivial-top(x:0..3)"), PLAN),
    ]
    for rep in reports:
        assert rep.entries
        assert [e.name for e in rep.entries if not e.passed] == []
        assert all(e.checked >= 200 for e in rep.entries)
