"""Complete lattices with pointed bases, density, weight and Galois insertions."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Optional, Sequence

from .errors import CarrierMismatch, InfiniteBasisDecomposition

DEFAULT_SEED = 1729
WEIGHT_SEARCH_BOUND = 12


class BasisKind(enum.Enum):
    TRIVIAL = "trivial"
    IRREDUCIBLE = "irreducible"
    EXPLICIT = "explicit"


class _Omega:
    """Marker for an infinite weight."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Omega"


OMEGA = _Omega()


@dataclass(frozen=True)
class LatticeDescriptor:
    """A complete lattice together with a pointed basis.

    ``basis_below`` returns the basis elements under an element, or raises
    InfiniteBasisDecomposition when that set cannot be listed. With a trivial
    basis it returns the element itself (plus bottom).
    """

    carrier_tag: str
    leq: Callable[[Any, Any], bool]
    bot: Any
    top: Any
    join2: Callable[[Any, Any], Any]
    meet2: Callable[[Any, Any], Any]
    basis_kind: BasisKind
    member: Callable[[Any], bool]
    enumerate_basis_below: Optional[Callable[[Any], Sequence[Any]]] = None
    dense_fast_path: bool = False
    sample: Optional[Callable[[random.Random], Any]] = field(default=None, compare=False)

    def eq(self, a, b) -> bool:
        return self.leq(a, b) and self.leq(b, a)


def _check_members(family: Iterable[Any], lat: LatticeDescriptor) -> list:
    items = list(family)
    for x in items:
        if not lat.member(x):
            raise CarrierMismatch(lat.carrier_tag, x)
    return items


def combine(kind: str, family: Iterable[Any], lat: LatticeDescriptor):
    """Join or meet of a finite family; the empty family gives bot or top."""
    items = _check_members(family, lat)
    if kind == "join":
        return reduce(lat.join2, items, lat.bot)
    if kind == "meet":
        return reduce(lat.meet2, items, lat.top)
    raise ValueError(f"unknown combiner {kind!r}")


def basis_below(d, lat: LatticeDescriptor) -> list:
    _check_members([d], lat)
    if lat.basis_kind is BasisKind.TRIVIAL:
        # any other basis element below d is dominated by d itself
        return [d]
    if lat.enumerate_basis_below is None:
        raise InfiniteBasisDecomposition(d, f"{lat.carrier_tag} has no basis enumerator")
    return list(lat.enumerate_basis_below(d))


def is_dense(family: Sequence[Any], lat: LatticeDescriptor) -> bool:
    items = _check_members(family, lat)
    if not items:
        return False
    if lat.dense_fast_path:
        return True
    return is_dense_direct(items, lat)


def is_dense_direct(family: Sequence[Any], lat: LatticeDescriptor) -> bool:
    """Density checked straight from the definition, ignoring fast paths."""
    if not family:
        return False
    top = combine("join", family, lat)
    return all(any(lat.leq(b, x) for x in family) for b in basis_below(top, lat))


def weight_of(d, lat: LatticeDescriptor, bound: int = WEIGHT_SEARCH_BOUND):
    """Smallest Y inside ebase(d) generating the same down-set.

    Bottom needs no generator, so it is left out of both sides. For a finite
    basis decomposition the minimal Y is the set of maximal elements.
    """
    below = [b for b in basis_below(d, lat) if b != lat.bot]
    maximal = []
    for b in below:
        if any(lat.leq(b, c) and not lat.leq(c, b) for c in below):
            continue
        if any(lat.eq(b, m) for m in maximal):
            continue
        maximal.append(b)
    if len(maximal) > bound:
        return OMEGA
    return len(maximal)


@dataclass(frozen=True)
class GaloisInsertion:
    lower: LatticeDescriptor
    upper: LatticeDescriptor
    alpha: Callable[[Any], Any]
    gamma: Callable[[Any], Any]
    reflects_density: bool = False
    name: str = "gi"


@dataclass(frozen=True)
class SamplePlan:
    seed: int = DEFAULT_SEED
    samples: int = 200

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass
class LawResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: Any = None

    def record(self, ok: bool, witness: Any = None):
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = witness


@dataclass
class LawReport:
    subject: str
    seed: int
    entries: list = field(default_factory=list)

    def law(self, name: str) -> LawResult:
        for entry in self.entries:
            if entry.name == name:
                return entry
        entry = LawResult(name)
        self.entries.append(entry)
        return entry

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]


def check_galois(gi: GaloisInsertion, plan: SamplePlan = SamplePlan()) -> LawReport:
    lo, up = gi.lower, gi.upper
    if lo.sample is None or up.sample is None:
        raise ValueError("both lattices need a sampler")
    rng = plan.rng()
    report = LawReport(gi.name, plan.seed)
    for _ in range(plan.samples):
        h1, h2 = lo.sample(rng), lo.sample(rng)
        a1, a2 = up.sample(rng), up.sample(rng)
        report.law("insertion").record(gi.alpha(gi.gamma(a1)) == a1, a1)
        left = up.leq(gi.alpha(h1), a1)
        right = lo.leq(h1, gi.gamma(a1))
        report.law("adjunction").record(left == right, (h1, a1))
        hj = lo.join2(h1, h2)
        report.law("alpha monotone").record(up.leq(gi.alpha(h1), gi.alpha(hj)), (h1, hj))
        report.law("alpha preserves joins").record(
            gi.alpha(hj) == up.join2(gi.alpha(h1), gi.alpha(h2)), (h1, h2)
        )
        report.law("order embedding").record(
            up.leq(a1, a2) == lo.leq(gi.gamma(a1), gi.gamma(a2)), (a1, a2)
        )
    return report
