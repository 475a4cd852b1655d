"""Basis semantics, its join extension, and the inductive semantics.

Iteration is the only hard part. ``_star`` picks one of these strategies:

* orbit: with a trivial basis the basis semantics is a plain function, so we
  follow x, f(x), f(f(x)), ... until it cycles, or (when the sum is the
  lattice join) until the running join is closed under f;
* reach: when the sum is an idempotent lattice join over a listable basis,
  the infinite sum is the join of every basis element reachable from b;
* pumping: the same over unbounded singleton intervals, where reachable
  points are grouped into arithmetic progressions (see ``pumping``);
* table: otherwise the map b' -> bsem(r^i) b' is tabulated on the basis
  elements reachable from b, until the table repeats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Callable

from .domains.base import DomainDescriptor
from .domains.interval import INF, Interval
from .errors import CarrierMismatch, FastPathUnavailable, StarDidNotStabilize
from .monoid import EventuallyPeriodic, oplus
from .order import BasisKind, basis_below, combine
from .regcmd import Choice, Diverge, Elc, Seq, Skip, Star

DEFAULT_STAR_BUDGET = 4000
GROWTH_BEFORE_WIDENING = 3
NARROWING_STEPS = 8


class Exactness(enum.Enum):
    EXACT = "exact"
    WIDENED = "widened"

    def __str__(self):
        return self.value


@dataclass
class _Status:
    exact: bool = True
    notes: list = field(default_factory=list)


@dataclass
class EvalContext:
    domain: DomainDescriptor
    star_budget: int = DEFAULT_STAR_BUDGET
    widening_enabled: bool = True
    # use the compositional semantics where it provably agrees with the basis one
    fast_path: bool = True
    memo: dict = field(default_factory=dict)
    status: _Status = field(default_factory=_Status)
    _pins: list = field(default_factory=list, repr=False)

    @property
    def exactness(self) -> Exactness:
        return Exactness.EXACT if self.status.exact else Exactness.WIDENED

    def widened(self, why: str):
        self.status.exact = False
        self.status.notes.append(why)

    def derive(self, domain: DomainDescriptor) -> "EvalContext":
        """A context over another domain that reports into the same status."""
        return EvalContext(
            domain, self.star_budget, self.widening_enabled, self.fast_path, {}, self.status
        )


def _lat(ctx: EvalContext):
    return ctx.domain.lattice


def join_extension(f: Callable[[Any], Any], d, ctx: EvalContext):
    """The join of f over the basis elements below d."""
    lat = _lat(ctx)
    if lat.basis_kind is BasisKind.TRIVIAL:
        return f(d)
    out = lat.bot
    for b in basis_below(d, lat):
        out = lat.join2(out, f(b))
    return out


def bsem_eval(r, b, ctx: EvalContext):
    key = (id(r), b)
    hit = ctx.memo.get(key)
    if hit is not None:
        value, exact = hit
        if not exact:
            ctx.widened("reused a widened iteration")
        return value
    before = ctx.status.exact
    ctx.status.exact = True
    try:
        value = _bsem(r, b, ctx)
        exact = ctx.status.exact
    finally:
        ctx.status.exact = before and ctx.status.exact
    ctx.memo[key] = (value, exact)
    ctx._pins.append(r)
    return value


def _bsem(r, b, ctx: EvalContext):
    dom = ctx.domain
    if isinstance(r, Elc):
        if isinstance(r.atom, Diverge):
            return dom.monoid.neutral
        if isinstance(r.atom, Skip):
            return b
        return dom.transfer(r.atom, b)
    if isinstance(r, Seq):
        first = bsem_eval(r.left, b, ctx)
        return join_extension(lambda b2: bsem_eval(r.right, b2, ctx), first, ctx)
    if isinstance(r, Choice):
        return dom.monoid.oplus_pair(bsem_eval(r.left, b, ctx), bsem_eval(r.right, b, ctx))
    if isinstance(r, Star):
        return _star(r.body, b, ctx)
    raise TypeError(f"not a command: {r!r}")


def sem_eval(r, d, ctx: EvalContext) -> tuple:
    """Full semantics: (value, Exactness)."""
    before = ctx.status.exact
    ctx.status.exact = True
    try:
        value = _sem(r, d, ctx)
        flag = ctx.exactness
    finally:
        ctx.status.exact = before and ctx.status.exact
    return value, flag


def _sem(r, d, ctx: EvalContext):
    dom = ctx.domain
    if not dom.lattice.member(d):
        raise CarrierMismatch(dom.lattice.carrier_tag, d)
    if dom.full_sem is not None:
        value, how = dom.full_sem(r, d, ctx)
        if how is Exactness.WIDENED:
            ctx.widened("component semantics widened")
        return value
    if ctx.fast_path and dom.flags.additive_semantics:
        return isem_eval(r, d, ctx)
    if dom.basis_kind is BasisKind.TRIVIAL:
        return bsem_eval(r, d, ctx)
    return join_extension(lambda b: bsem_eval(r, b, ctx), d, ctx)


def isem_eval(r, c, ctx: EvalContext):
    """Inductive semantics: atoms by their closed-form transfer, composition
    by function composition, choice by the sum."""
    dom = ctx.domain
    if dom.basis_kind is BasisKind.TRIVIAL:
        return bsem_eval(r, c, ctx)
    if not dom.flags.additive_semantics:
        raise FastPathUnavailable(
            f"{dom.spec}: the inductive semantics is only available when it provably agrees "
            "with the basis semantics"
        )
    return _isem(r, c, ctx)


def _isem(r, c, ctx: EvalContext):
    dom = ctx.domain
    if isinstance(r, Elc):
        if isinstance(r.atom, Diverge):
            return dom.monoid.neutral
        return dom.transfer_full(r.atom, c)
    if isinstance(r, Seq):
        return _isem(r.right, _isem(r.left, c, ctx), ctx)
    if isinstance(r, Choice):
        return dom.monoid.oplus_pair(_isem(r.left, c, ctx), _isem(r.right, c, ctx))
    if isinstance(r, Star):
        # the sum is an idempotent join here, so the star is a least fixpoint
        lat = dom.lattice
        acc = c
        for _ in range(ctx.star_budget):
            nxt = lat.join2(acc, _isem(r.body, acc, ctx))
            if lat.leq(nxt, acc):
                return acc
            acc = nxt
        raise StarDidNotStabilize(f"no fixpoint within {ctx.star_budget} rounds")
    raise TypeError(f"not a command: {r!r}")


# ---------------------------------------------------------------- iteration


def _star(body, b, ctx: EvalContext):
    dom = ctx.domain
    lat = dom.lattice
    if lat.basis_kind is BasisKind.TRIVIAL:
        return _star_orbit(body, b, ctx)
    if dom.monoid.idempotent and dom.monoid.equals_lattice_join:
        if dom.widening == "singletons" and not _bounded_limits(dom):
            from .pumping import star_by_pumping

            return star_by_pumping(body, b, ctx)
        return _star_reach(body, b, ctx)
    return _star_table(body, b, ctx)


def _bounded_limits(dom: DomainDescriptor) -> bool:
    lim = dom.meta.get("limits")
    return lim is not None and lim.bounded


def widen_interval(a: Interval, b: Interval) -> Interval:
    if a.empty:
        return b
    if b.empty:
        return a
    lo = a.lo if b.lo >= a.lo else -INF
    hi = a.hi if b.hi <= a.hi else INF
    return Interval(lo, hi)


def _star_orbit(body, b, ctx: EvalContext):
    dom = ctx.domain
    lat, mon = dom.lattice, dom.monoid
    f = lambda x: bsem_eval(body, x, ctx)  # noqa: E731
    is_join = mon.idempotent and mon.equals_lattice_join
    seen = {b: 0}
    orbit = [b]
    total = b
    growth = 0
    x = b
    for _ in range(ctx.star_budget):
        if is_join and lat.leq(f(total), total):
            # every later iterate stays below the running join
            return total
        x = f(x)
        if x in seen:
            mu = seen[x]
            return oplus(EventuallyPeriodic(tuple(orbit[:mu]), tuple(orbit[mu:])), mon)
        seen[x] = len(orbit)
        orbit.append(x)
        if is_join:
            nxt = lat.join2(total, x)
            growth = growth + 1 if nxt != total else 0
            total = nxt
            if dom.widening == "interval" and growth >= GROWTH_BEFORE_WIDENING and ctx.widening_enabled:
                return _widen_orbit(f, b, x, total, ctx)
    if is_join and ctx.widening_enabled:
        ctx.widened("iteration budget exhausted, result is top")
        return lat.top
    raise StarDidNotStabilize(f"iterates did not repeat within {ctx.star_budget} steps")


def _widen_orbit(f, b, x, total, ctx: EvalContext):
    """Widen the running join, narrow it back, and call the result exact only
    if the plain iterates from x actually climb up to it."""
    lat = ctx.domain.lattice
    w = widen_interval(total, lat.join2(total, f(total)))
    w = lat.meet2(w, lat.top)
    if not (lat.leq(f(w), w) and lat.leq(total, w)):
        ctx.widened("interval widening did not give an invariant")
        return lat.top
    # decreasing iteration stays above the least fixpoint
    p = w
    for _ in range(NARROWING_STEPS):
        q = lat.join2(b, f(p))
        if q == p:
            break
        p = q
    if p.bounded:
        acc = total
        for _ in range(ctx.star_budget):
            if lat.leq(p, acc):
                return p
            x = f(x)
            acc = lat.join2(acc, x)
    ctx.widened(f"interval widening to {p}")
    return p


def _star_reach(body, b, ctx: EvalContext):
    lat = ctx.domain.lattice
    seen = {b}
    frontier = [b]
    total = b
    while frontier:
        if len(seen) > ctx.star_budget:
            if ctx.widening_enabled:
                ctx.widened("too many reachable basis elements, result is top")
                return lat.top
            raise StarDidNotStabilize(f"more than {ctx.star_budget} reachable basis elements")
        nxt = []
        for x in frontier:
            img = bsem_eval(body, x, ctx)
            total = lat.join2(total, img)
            for y in basis_below(img, lat):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return total


def _star_table(body, b, ctx: EvalContext):
    dom = ctx.domain
    lat, mon = dom.lattice, dom.monoid
    # basis elements reachable from b, with the decomposition of each image
    succ = {}
    order = [b]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        below = basis_below(bsem_eval(body, x, ctx), lat)
        succ[x] = below
        for y in below:
            if y not in succ and y not in order:
                order.append(y)
        if len(order) > ctx.star_budget:
            raise StarDidNotStabilize(f"more than {ctx.star_budget} reachable basis elements")
    table = tuple(order)
    seen = {table: 0}
    firsts = [b]
    # F_{i+1}(x) = join over the decomposition of bsem(body) x of F_i
    for _ in range(ctx.star_budget):
        pos = {x: v for x, v in zip(order, table)}
        table = tuple(combine("join", (pos[y] for y in succ[x]), lat) for x in order)
        first = table[0]
        if table in seen:
            mu = seen[table]
            return oplus(EventuallyPeriodic(tuple(firsts[:mu]), tuple(firsts[mu:])), mon)
        seen[table] = len(firsts)
        firsts.append(first)
    raise StarDidNotStabilize(f"the iterate table did not repeat within {ctx.star_budget} steps")


__all__ = [
    "EvalContext",
    "Exactness",
    "bsem_eval",
    "isem_eval",
    "join_extension",
    "sem_eval",
    "widen_interval",
]
