"""Infinitary monoidal sums over finitely encoded families, plus law sampling."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Optional, Sequence, Union

from .errors import UnsupportedInfiniteSum
from .order import LatticeDescriptor, LawReport, SamplePlan, combine


@dataclass(frozen=True)
class MonoidDescriptor:
    carrier_tag: str
    oplus_pair: Callable[[Any, Any], Any]
    neutral: Any
    omega_sum: Optional[Callable[[Any], Any]] = None
    idempotent: bool = False
    equals_lattice_join: bool = False


@dataclass(frozen=True)
class Finite:
    items: tuple


@dataclass(frozen=True)
class ConstantInfinite:
    item: Any


@dataclass(frozen=True)
class EventuallyPeriodic:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period of an eventually periodic family must be non-empty")


FamilySpec = Union[Finite, ConstantInfinite, EventuallyPeriodic]


def _fold(items: Sequence[Any], mon: MonoidDescriptor):
    return reduce(mon.oplus_pair, items, mon.neutral)


def _omega(m, mon: MonoidDescriptor):
    if mon.omega_sum is None:
        raise UnsupportedInfiniteSum(f"{mon.carrier_tag} has no closed form for an infinite sum")
    return mon.omega_sum(m)


def oplus(family: FamilySpec, mon: MonoidDescriptor):
    if isinstance(family, Finite):
        return _fold(family.items, mon)
    if isinstance(family, ConstantInfinite):
        return _omega(family.item, mon)
    if isinstance(family, EventuallyPeriodic):
        # infinitely many copies of the period: each member is repeated forever
        tail = _fold([_omega(m, mon) for m in family.period], mon)
        return mon.oplus_pair(_fold(family.prefix, mon), tail)
    raise TypeError(f"not a family: {family!r}")


def check_monoid_laws(
    mon: MonoidDescriptor,
    lat: LatticeDescriptor,
    plan: SamplePlan = SamplePlan(),
    sample: Optional[Callable[[random.Random], Any]] = None,
    cycle_bound: int = 16,
) -> LawReport:
    """Sampled ordered-complete-monoid and quantale distributivity laws."""
    draw = sample or lat.sample
    if draw is None:
        raise ValueError("no sampler for this carrier")
    rng = plan.rng()
    report = LawReport(mon.carrier_tag, plan.seed)
    add, leq = mon.oplus_pair, lat.leq
    for _ in range(plan.samples):
        x, y, z = draw(rng), draw(rng), draw(rng)
        report.law("associativity").record(add(add(x, y), z) == add(x, add(y, z)), (x, y, z))
        report.law("commutativity").record(add(x, y) == add(y, x), (x, y))
        report.law("neutrality").record(add(mon.neutral, x) == x, x)
        bigger = lat.join2(x, y)
        report.law("monotonicity").record(leq(add(x, z), add(bigger, z)), (x, bigger, z))

        # distributivity with |I| and every |J_i| drawn from {1, 2}
        rows = [[draw(rng) for _ in range(rng.randint(1, 2))] for _ in range(rng.randint(1, 2))]
        lhs = _fold([combine("join", row, lat) for row in rows], mon)
        rhs = combine("join", [_fold(list(pick), mon) for pick in itertools.product(*rows)], lat)
        report.law("distributivity").record(lhs == rhs, rows)

        items = [draw(rng) for _ in range(rng.randint(0, 4))]
        cut = rng.randint(0, len(items))
        grouped = add(_fold(items[:cut], mon), _fold(items[cut:], mon))
        report.law("partition associativity").record(grouped == _fold(items, mon), items)

        if mon.idempotent:
            report.law("idempotence").record(add(x, x) == x, x)
        if mon.equals_lattice_join:
            report.law("sum is join").record(_fold(items, mon) == combine("join", items, lat), items)
        if mon.omega_sum is not None:
            partial, seen = x, [x]
            for _ in range(cycle_bound):
                partial = add(partial, x)
                if partial == seen[-1]:
                    break
                seen.append(partial)
            stable = partial == seen[-1]
            report.law("omega sum consistency").record(
                not stable or partial == mon.omega_sum(x), x
            )
    return report
