"""The hyper monoid: sets of elements of a base lattice, summed by selection."""

from __future__ import annotations

import itertools
import random
from functools import reduce

from ..errors import CarrierMismatch, InfiniteBasisDecomposition, UnsupportedGeneratorAlgebra
from ..monoid import MonoidDescriptor
from ..order import BasisKind, LatticeDescriptor
from ..regcmd import Diverge
from .base import DomainDescriptor, DomainFlags
from .literals import LSet, LWord, read_literal

EXPLICIT_TOP_LIMIT = 4096


class _All:
    """Every element of an infinite (or very large) base carrier."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL"

    def __reduce__(self):
        return (_All, ())


ALL = _All()


def selection_sum(h1, h2, join2) -> frozenset:
    """{c1 v c2 | c1 in h1, c2 in h2}."""
    if h1 is ALL or h2 is ALL:
        if h1 == frozenset() or h2 == frozenset():
            return frozenset()
        raise UnsupportedGeneratorAlgebra("sum with the full hyperset is not representable")
    return frozenset(join2(a, b) for a in h1 for b in h2)


def join_closure(h, join2) -> frozenset:
    """{v S | S a non-empty subset of h}: the sum of infinitely many copies of h."""
    if h is ALL:
        raise UnsupportedGeneratorAlgebra("infinite sum of the full hyperset")
    closed = set(h)
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(closed):
                c = join2(a, b)
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return frozenset(closed)


def hyper_domain(base: DomainDescriptor, top_elements=None, name: str = "") -> DomainDescriptor:
    """Hyper monoid over ``base``, whose full semantics gives the inductive
    semantics on each member.

    ``top_elements`` lists every element of the base carrier when it is small
    enough to spell out; otherwise top is the ALL marker.
    """
    blat = base.lattice
    join2 = blat.join2
    top = frozenset(top_elements) if top_elements is not None else ALL

    def leq(a, b) -> bool:
        if b is ALL:
            return True
        if a is ALL:
            return False
        return a <= b

    def join(a, b):
        if a is ALL or b is ALL:
            return ALL
        return a | b

    def meet(a, b):
        if a is ALL:
            return b
        if b is ALL:
            return a
        return a & b

    def member(x) -> bool:
        return x is ALL or (isinstance(x, frozenset) and all(blat.member(c) for c in x))

    def singletons(h) -> list:
        if h is ALL:
            raise InfiniteBasisDecomposition("ALL", "the full hyperset has no finite decomposition")
        return [frozenset()] + [frozenset([c]) for c in sorted(h, key=base.format_value)]

    def sample(rng: random.Random):
        return frozenset(blat.sample(rng) for _ in range(rng.randint(0, 3)))

    lattice = LatticeDescriptor(
        carrier_tag=f"hyper[{blat.carrier_tag}]",
        leq=leq,
        bot=frozenset(),
        top=top,
        join2=join,
        meet2=meet,
        basis_kind=BasisKind.IRREDUCIBLE,
        member=member,
        enumerate_basis_below=singletons,
        dense_fast_path=True,
        sample=sample if blat.sample is not None else None,
    )
    neutral = frozenset([blat.bot])
    monoid = MonoidDescriptor(
        carrier_tag=lattice.carrier_tag,
        oplus_pair=lambda a, b: selection_sum(a, b, join2),
        neutral=neutral,
        omega_sum=lambda h: join_closure(h, join2),
    )

    def transfer(e, b):
        if isinstance(e, Diverge):
            return neutral
        if not b:
            return frozenset()
        (c,) = tuple(b)
        return frozenset([base.transfer_full(e, c)])

    def transfer_full(e, h):
        if isinstance(e, Diverge):
            return neutral
        if h is ALL:
            raise InfiniteBasisDecomposition("ALL", "transfer over the full hyperset")
        return frozenset(base.transfer_full(e, c) for c in h)

    def from_tree(tree):
        if isinstance(tree, LWord):
            if tree.word in ("top", "all"):
                return top
            if tree.word in ("empty", "bot"):
                return frozenset()
        if not isinstance(tree, LSet):
            raise CarrierMismatch(lattice.carrier_tag, tree)
        return frozenset(base_from_tree(item) for item in tree.items)

    base_from_tree = base.meta["from_tree"]

    def show(h) -> str:
        if h is ALL:
            return "all"
        parts = sorted(base.format_value(c) for c in h)
        return "{" + ", ".join(parts) + "}"

    return DomainDescriptor(
        spec=name or f"hyper({base.spec})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer_full,
        flags=DomainFlags(dense_fast_path=True),
        variables=base.variables,
        parse_value=lambda text: from_tree(read_literal(text)),
        format_value=show,
        meta={"base": base, "from_tree": from_tree},
    )


def powerset_elements(states) -> list:
    """Every subset of a finite set of states."""
    items = sorted(states)
    return [frozenset(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)]


def fold_sum(hs, mon: MonoidDescriptor):
    return reduce(mon.oplus_pair, hs, mon.neutral)
