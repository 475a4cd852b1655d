"""Sampled law suites: monoid laws, identities of the full semantics on random
programs, completeness of the hyperset abstractions, and Galois laws.

Every suite is seeded and keeps drawing until each law has been checked the
requested number of times (draws that hit a widened star or an input without
a finite basis decomposition are skipped, up to a bounded number of tries).
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .domains.base import DomainDescriptor
from .domains.galois import GiBundle
from .domains.pointwise import abstract_pointwise, pointwise_domain
from .domains.product import alpha_product, product_domain
from .domains.specs import make_domain
from .errors import ApplError
from .monoid import check_monoid_laws
from .order import LawReport, SamplePlan, basis_below, check_galois, combine
from .regcmd import (
    CMP_OPS,
    DIVERGE,
    SKIP,
    Assign,
    Choice,
    Cmp,
    Const,
    Elc,
    Filter,
    Mod,
    Not,
    Seq,
    Shift,
    Star,
)
from .semantics import EvalContext, Exactness, sem_eval

LAW_STAR_BUDGET = 300
TRIES_PER_SAMPLE = 20


# ---------------------------------------------------------------- programs


def random_atom(rng: random.Random, var: str = "x", span: int = 2):
    roll = rng.random()
    if roll < 0.08:
        return SKIP
    if roll < 0.12:
        return DIVERGE
    if roll < 0.5:
        if rng.random() < 0.8:
            return Elc(Assign(var, Shift(var, rng.randint(-span, span))))
        return Elc(Assign(var, Const(rng.randint(-span, span))))
    if rng.random() < 0.2:
        test = Mod(var, 2, rng.randint(0, 1))
    else:
        test = Cmp(var, rng.choice(CMP_OPS), rng.randint(-span, span))
    if rng.random() < 0.15:
        test = Not(test)
    return Elc(Filter(test))


def random_program(rng: random.Random, depth: int = 3, var: str = "x", stars: bool = True):
    """A random command with at most ``depth`` nested constructors."""
    if depth <= 0 or rng.random() < 0.25:
        return random_atom(rng, var)
    kinds = ["seq", "choice", "star"] if stars else ["seq", "choice"]
    kind = rng.choice(kinds)
    if kind == "star":
        return Star(random_program(rng, depth - 1, var, stars))
    left = random_program(rng, depth - 1, var, stars)
    right = random_program(rng, depth - 1, var, stars)
    return Seq(left, right) if kind == "seq" else Choice(left, right)


# ---------------------------------------------------------------- helpers


class _Skip(Exception):
    pass


def _ctx(dom: DomainDescriptor) -> EvalContext:
    return EvalContext(dom, star_budget=LAW_STAR_BUDGET)


def _sem(dom: DomainDescriptor, r, d, ctx: Optional[EvalContext] = None):
    """Exact full semantics, or _Skip when it is widened or not computable.
    Both sides of one identity share ``ctx`` so their common subterms are
    evaluated once."""
    ctx = ctx or _ctx(dom)
    try:
        value, flag = sem_eval(r, d, ctx)
    except ApplError as exc:
        raise _Skip(str(exc)) from None
    if flag is not Exactness.EXACT:
        raise _Skip("widened")
    return value


def _eq(dom: DomainDescriptor, a, b) -> bool:
    return dom.leq(a, b) and dom.leq(b, a)


def _dense_family(dom: DomainDescriptor, rng: random.Random) -> list:
    """A few samples plus whatever basis elements below their join they miss."""
    lat = dom.lattice
    xs = [lat.sample(rng) for _ in range(rng.randint(1, 3))]
    top = combine("join", xs, lat)
    try:
        below = basis_below(top, lat)
    except ApplError as exc:
        raise _Skip(str(exc)) from None
    if len(below) > 64:
        raise _Skip("decomposition too large")
    for b in below:
        if not any(lat.leq(b, x) for x in xs):
            xs.append(b)
    return xs


def _fill(report: LawReport, name: str, plan: SamplePlan, rng: random.Random, draw: Callable):
    """Record ``plan.samples`` outcomes of ``draw`` for one law."""
    entry = report.law(name)
    tries = 0
    while entry.checked < plan.samples and tries < plan.samples * TRIES_PER_SAMPLE:
        tries += 1
        try:
            ok, witness = draw(rng)
        except _Skip:
            continue
        entry.record(ok, witness)


# ---------------------------------------------------------------- suites


def program_laws(dom: DomainDescriptor, plan: SamplePlan = SamplePlan(), depth: int = 3) -> LawReport:
    """Identities and inequalities of the full semantics on random programs."""
    if dom.lattice.sample is None:
        raise ValueError(f"{dom.spec} has no sampler")
    report = LawReport(dom.spec, plan.seed)
    rng = plan.rng()
    draw_elem = dom.lattice.sample
    var = dom.variables[0] if dom.variables else "x"
    exact_dist = dom.meta.get("left_distributive", True)

    def prog(d=depth):
        return random_program(rng, d, var)

    def monotone(rng):
        r, d, e = prog(), draw_elem(rng), draw_elem(rng)
        bigger = dom.lattice.join2(d, e)
        ctx = _ctx(dom)
        return dom.leq(_sem(dom, r, d, ctx), _sem(dom, r, bigger, ctx)), (r, d, bigger)

    def additive(rng):
        r, xs = prog(), _dense_family(dom, rng)
        ctx = _ctx(dom)
        whole = _sem(dom, r, combine("join", xs, dom.lattice), ctx)
        parts = combine("join", [_sem(dom, r, x, ctx) for x in xs], dom.lattice)
        return _eq(dom, whole, parts), (r, xs)

    def left_expansion(rng):
        body, d = prog(depth - 1), draw_elem(rng)
        star = Star(body)
        unrolled = Choice(SKIP, Seq(body, star))
        ctx = _ctx(dom)
        return _eq(dom, _sem(dom, star, d, ctx), _sem(dom, unrolled, d, ctx)), (star, d)

    def left_distributivity(rng):
        r, r1, r2 = prog(depth - 1), prog(depth - 1), prog(depth - 1)
        d = draw_elem(rng)
        ctx = _ctx(dom)
        lhs = _sem(dom, Seq(r, Choice(r1, r2)), d, ctx)
        rhs = _sem(dom, Choice(Seq(r, r1), Seq(r, r2)), d, ctx)
        if exact_dist:
            return _eq(dom, lhs, rhs), (r, r1, r2, d)
        return dom.leq(lhs, rhs), (r, r1, r2, d)

    def seq_bound(rng):
        r1, r2, d = prog(depth - 1), prog(depth - 1), draw_elem(rng)
        ctx = _ctx(dom)
        lhs = _sem(dom, Seq(r1, r2), d, ctx)
        return dom.leq(lhs, _sem(dom, r2, _sem(dom, r1, d, ctx), ctx)), (r1, r2, d)

    def choice_bound(rng):
        r1, r2, d = prog(depth - 1), prog(depth - 1), draw_elem(rng)
        ctx = _ctx(dom)
        lhs = _sem(dom, Choice(r1, r2), d, ctx)
        rhs = dom.monoid.oplus_pair(_sem(dom, r1, d, ctx), _sem(dom, r2, d, ctx))
        return dom.leq(lhs, rhs), (r1, r2, d)

    _fill(report, "sem monotonicity", plan, rng, monotone)
    _fill(report, "additivity on dense families", plan, rng, additive)
    _fill(report, "left-expansion", plan, rng, left_expansion)
    dist = "left-distributivity" if exact_dist else "left-distributivity (lhs below rhs)"
    _fill(report, dist, plan, rng, left_distributivity)
    _fill(report, "sequence bound", plan, rng, seq_bound)
    _fill(report, "choice bound", plan, rng, choice_bound)
    return report


def _family(rng: random.Random, draw: Callable, n_max: int = 3) -> list:
    return [draw(rng) for _ in range(rng.randint(1, n_max))]


def pointwise_completeness(bundle: GiBundle, plan: SamplePlan = SamplePlan()) -> LawReport:
    """alpha_p of a finite sum of hypersets equals the sum of the alpha_p's."""
    conc = make_domain(f"hyper(collecting({bundle.space}))")
    absd = pointwise_domain(bundle)
    report = LawReport(f"pointwise completeness over {bundle.spec}", plan.seed)
    rng = plan.rng()

    def draw(rng):
        hs = _family(rng, conc.lattice.sample)
        lhs = abstract_pointwise(bundle, _fold(hs, conc))
        rhs = _fold([abstract_pointwise(bundle, h) for h in hs], absd)
        return lhs == rhs, hs

    _fill(report, "alpha of sum", plan, rng, draw)
    return report


def product_completeness(bundle: GiBundle, plan: SamplePlan = SamplePlan()) -> LawReport:
    """The same equality for the product abstraction, on non-empty hypersets."""
    conc = make_domain(f"hyper(collecting({bundle.space}))")
    absd = product_domain(bundle)
    report = LawReport(f"product completeness over {bundle.spec}", plan.seed)
    rng = plan.rng()

    def nonempty(rng):
        h = conc.lattice.sample(rng)
        while not h:
            h = conc.lattice.sample(rng)
        return h

    def draw(rng):
        hs = _family(rng, nonempty)
        lhs = alpha_product(bundle, _fold(hs, conc))
        rhs = _fold([alpha_product(bundle, h) for h in hs], absd)
        return lhs == rhs, hs

    _fill(report, "alpha of sum", plan, rng, draw)
    return report


def _fold(items: list, dom: DomainDescriptor):
    acc = dom.monoid.neutral
    for x in items:
        acc = dom.monoid.oplus_pair(acc, x)
    return acc


def galois_laws(bundle: GiBundle, plan: SamplePlan = SamplePlan()) -> LawReport:
    return check_galois(bundle.gi, plan)


def domain_laws(
    dom: DomainDescriptor, plan: SamplePlan = SamplePlan(), depth: int = 3, programs: bool = True
) -> LawReport:
    """Monoid laws of the domain followed by the program laws."""
    report = check_monoid_laws(dom.monoid, dom.lattice, plan)
    report.subject = dom.spec
    if programs:
        report.entries.extend(program_laws(dom, plan, depth).entries)
    bundle: Optional[GiBundle] = dom.meta.get("gi")
    if bundle is not None:
        extra = pointwise_completeness if dom.spec.startswith("pointwise") else product_completeness
        report.entries.extend(extra(bundle, plan).entries)
        report.entries.extend(galois_laws(bundle, plan).entries)
    return report
