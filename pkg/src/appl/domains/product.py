"""Pairs of a must-reach state set and an abstract over-approximation.

A pair <c, a> describes the hypersets whose members all contain c and are
all covered by gamma(a). Order, sum and atoms are taken componentwise: the
left component under reverse inclusion (more required states is lower), the
right under the abstract order. The full semantics is the pair of the
collecting semantics of c and the abstract semantics of a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import CarrierMismatch
from ..monoid import MonoidDescriptor
from ..order import BasisKind, LatticeDescriptor, basis_below
from ..regcmd import Diverge
from .base import DomainDescriptor, DomainFlags
from .galois import GiBundle
from .literals import LPair, LWord, read_literal
from .powerset import sample_stateset


@dataclass(frozen=True)
class Pair:
    c: frozenset
    a: object


def product_domain(bundle: GiBundle) -> DomainDescriptor:
    space = bundle.space
    conc, absd = bundle.concrete, bundle.abstract
    alat = absd.lattice
    sigma = space.states()
    c_from, a_from = conc.meta["from_tree"], absd.meta["from_tree"]

    def leq(x: Pair, y: Pair) -> bool:
        return y.c <= x.c and alat.leq(x.a, y.a)

    bot = Pair(sigma, alat.bot)
    top = Pair(frozenset(), alat.top)

    def join(x: Pair, y: Pair) -> Pair:
        return Pair(x.c & y.c, alat.join2(x.a, y.a))

    def meet(x: Pair, y: Pair) -> Pair:
        return Pair(x.c | y.c, alat.meet2(x.a, y.a))

    def member(x) -> bool:
        return isinstance(x, Pair) and conc.lattice.member(x.c) and alat.member(x.a)

    def basis(x: Pair) -> list:
        out = [bot]
        if x.c != sigma:
            out.append(Pair(x.c, alat.bot))
        for b in basis_below(x.a, alat):
            if b != alat.bot:
                out.append(Pair(sigma, b))
        return out

    def sample(rng: random.Random) -> Pair:
        return Pair(sample_stateset(space, rng), alat.sample(rng))

    lattice = LatticeDescriptor(
        carrier_tag=f"product[{alat.carrier_tag}]",
        leq=leq,
        bot=bot,
        top=top,
        join2=join,
        meet2=meet,
        basis_kind=BasisKind.EXPLICIT,
        member=member,
        enumerate_basis_below=basis,
        dense_fast_path=False,
        sample=sample,
    )
    amon = absd.monoid
    monoid = MonoidDescriptor(
        carrier_tag=lattice.carrier_tag,
        oplus_pair=lambda x, y: Pair(x.c | y.c, amon.oplus_pair(x.a, y.a)),
        neutral=Pair(frozenset(), amon.neutral),
        omega_sum=lambda x: Pair(x.c, amon.omega_sum(x.a)),
        idempotent=True,
    )

    def transfer(e, x: Pair) -> Pair:
        if isinstance(e, Diverge):
            return monoid.neutral
        return Pair(conc.transfer_full(e, x.c), absd.transfer_full(e, x.a))

    def full_sem(r, x: Pair, ctx):
        from ..semantics import isem_eval, sem_eval

        c = isem_eval(r, x.c, ctx.derive(conc))
        a, how = sem_eval(r, x.a, ctx.derive(absd))
        return Pair(c, a), how

    def from_tree(tree) -> Pair:
        if isinstance(tree, LWord):
            if tree.word in ("empty", "bot"):
                return bot
            if tree.word in ("top", "all"):
                return top
        if not isinstance(tree, LPair):
            raise CarrierMismatch(lattice.carrier_tag, tree)
        return Pair(c_from(tree.left), a_from(tree.right))

    def show(x: Pair) -> str:
        return f"<{conc.format_value(x.c)} | {absd.format_value(x.a)}>"

    return DomainDescriptor(
        spec=f"product({bundle.spec})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer,
        flags=DomainFlags(oplus_idempotent=True),
        variables=space.names,
        parse_value=lambda text: from_tree(read_literal(text)),
        format_value=show,
        full_sem=full_sem,
        meta={"gi": bundle, "space": space, "from_tree": from_tree},
    )


def alpha_product(bundle: GiBundle, h) -> Pair:
    """Abstraction of a finite hyperset: what every member reaches and what
    some member may reach."""
    gi = bundle.gi
    c = bundle.space.states()
    a = gi.upper.bot
    for member in h:
        c = c & member
        a = gi.upper.join2(a, gi.alpha(member))
    return Pair(c, a)


def gamma_product(bundle: GiBundle, x: Pair) -> frozenset:
    """Concretization, only for tiny spaces: every c' with c <= c' <= gamma(a)."""
    from .hyper import powerset_elements

    cover = bundle.gi.gamma(x.a)
    if not x.c <= cover:
        return frozenset()
    rest = cover - x.c
    if len(rest) > 12:
        raise ValueError("concretization too large to list")
    return frozenset(x.c | s for s in powerset_elements(rest))
