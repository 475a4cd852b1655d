"""Galois insertions from state sets and the best-correct-approximation lift."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..monoid import MonoidDescriptor
from ..order import BasisKind, GaloisInsertion, LatticeDescriptor, basis_below
from .base import DomainDescriptor, DomainFlags
from .interval import Interval, alpha, interval_domain
from .literals import LWord, read_literal
from .powerset import collecting
from .space import FinStateSpace


class _TopPoint:
    """The only element of the one-point lattice."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "top"

    def __reduce__(self):
        return (_TopPoint, ())


TT = _TopPoint()


def point_domain() -> DomainDescriptor:
    """The one-point interpretation monoid {top}."""
    lattice = LatticeDescriptor(
        carrier_tag="point",
        leq=lambda a, b: True,
        bot=TT,
        top=TT,
        join2=lambda a, b: TT,
        meet2=lambda a, b: TT,
        basis_kind=BasisKind.TRIVIAL,
        member=lambda x: x is TT,
        sample=lambda rng: TT,
    )
    monoid = MonoidDescriptor("point", lambda a, b: TT, TT, lambda m: TT, True, True)

    def from_tree(tree):
        if isinstance(tree, LWord):
            return TT
        raise ValueError(f"the one-point lattice only has 'top', not {tree!r}")

    return DomainDescriptor(
        spec="point",
        lattice=lattice,
        monoid=monoid,
        transfer=lambda e, a: TT,
        transfer_full=lambda e, a: TT,
        flags=DomainFlags(oplus_idempotent=True, equals_lattice_join=True, additive_semantics=True),
        variables=(),
        parse_value=lambda text: from_tree(read_literal(text)),
        format_value=lambda a: "top",
        meta={"from_tree": from_tree},
    )


@dataclass(frozen=True)
class GiBundle:
    """A Galois insertion from the collecting domain of a finite space, with
    the abstract domain whose semantics runs on the upper side."""

    spec: str
    space: FinStateSpace
    gi: GaloisInsertion
    concrete: DomainDescriptor
    abstract: DomainDescriptor


def interval_gi(space: FinStateSpace) -> GiBundle:
    """Tightest interval of the values of the (single) variable."""
    if not space.single():
        raise ValueError("the interval insertion needs a single-variable space")
    _, lo, hi = space.variables[0]
    conc = collecting(space)
    absd = interval_domain(True, lo, hi)

    def alpha_states(states) -> Interval:
        return alpha(s[0] for s in states)

    def gamma(a: Interval) -> frozenset:
        return frozenset((v,) for v in a)

    gi = GaloisInsertion(
        lower=conc.lattice,
        upper=absd.lattice,
        alpha=alpha_states,
        gamma=gamma,
        reflects_density=False,
        name=f"interval-over-powerset({space})",
    )
    return GiBundle(gi.name, space, gi, conc, absd)


def trivial_top_gi(space: FinStateSpace) -> GiBundle:
    conc = collecting(space)
    absd = point_domain()
    sigma = space.states()
    gi = GaloisInsertion(
        lower=conc.lattice,
        upper=absd.lattice,
        alpha=lambda c: TT,
        gamma=lambda a: sigma,
        reflects_density=True,
        name=f"trivial-top({space})",
    )
    return GiBundle(gi.name, space, gi, conc, absd)


def identity_gi(lattice: LatticeDescriptor) -> GaloisInsertion:
    return GaloisInsertion(lattice, lattice, lambda x: x, lambda x: x, True, "identity")


def bca_lift(
    gi: GaloisInsertion, base: DomainDescriptor, upper: Optional[DomainDescriptor] = None
) -> DomainDescriptor:
    """Descriptor over the abstract carrier whose operations are the best
    correct approximations alpha . op . gamma of the operations of ``base``."""
    a, g = gi.alpha, gi.gamma
    up = gi.upper

    def abstract_basis(x) -> list:
        seen = []
        for b in basis_below(g(x), base.lattice):
            ab = a(b)
            if ab not in seen:
                seen.append(ab)
        return seen

    lattice = LatticeDescriptor(
        carrier_tag=up.carrier_tag,
        leq=up.leq,
        bot=up.bot,
        top=up.top,
        join2=up.join2,
        meet2=up.meet2,
        basis_kind=BasisKind.TRIVIAL if base.basis_kind is BasisKind.TRIVIAL else BasisKind.EXPLICIT,
        member=up.member,
        enumerate_basis_below=abstract_basis,
        dense_fast_path=False,
        sample=up.sample,
    )
    mon = base.monoid
    omega = None if mon.omega_sum is None else (lambda x: a(mon.omega_sum(g(x))))
    monoid = MonoidDescriptor(
        carrier_tag=up.carrier_tag,
        oplus_pair=lambda x, y: a(mon.oplus_pair(g(x), g(y))),
        neutral=a(mon.neutral),
        omega_sum=omega,
        idempotent=mon.idempotent,
        equals_lattice_join=mon.equals_lattice_join,
    )

    def transfer(e, x):
        return a(base.transfer_full(e, g(x)))

    flags = DomainFlags(
        oplus_idempotent=base.flags.oplus_idempotent,
        equals_lattice_join=base.flags.equals_lattice_join,
        reflects_density=gi.reflects_density,
        additive_semantics=base.flags.additive_semantics and base.basis_kind is BasisKind.TRIVIAL,
    )
    parse = upper.parse_value if upper is not None else base.parse_value
    show = upper.format_value if upper is not None else str
    meta = {"gi": gi, "base": base}
    if upper is not None:
        meta["from_tree"] = upper.meta.get("from_tree")
    return DomainDescriptor(
        spec=f"bca[{gi.name}]({base.spec})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer,
        flags=flags,
        variables=base.variables,
        parse_value=parse,
        format_value=show,
        widening=None,
        meta=meta,
    )


def sample_interval(space: FinStateSpace, rng: random.Random) -> Interval:
    _, lo, hi = space.variables[0]
    if rng.random() < 0.15:
        return Interval(1, 0)
    u, v = sorted((rng.randint(lo, hi), rng.randint(lo, hi)))
    return Interval(u, v)
