"""Powerset carriers over a finite state space: collecting and incorrectness."""

from __future__ import annotations

import random

from ..errors import CarrierMismatch
from ..monoid import MonoidDescriptor
from ..order import BasisKind, LatticeDescriptor
from .base import DomainDescriptor, DomainFlags
from .literals import LInt, LSet, LState, LWord, read_literal
from .space import FinStateSpace, post_elementary

EMPTY_SET: frozenset = frozenset()


def stateset_from_tree(tree, space: FinStateSpace) -> frozenset:
    """Turn a literal tree into a set of states of ``space``."""
    if isinstance(tree, LWord):
        if tree.word in ("all", "top"):
            return space.states()
        if tree.word in ("empty", "bot"):
            return EMPTY_SET
    if not isinstance(tree, LSet):
        raise CarrierMismatch("stateset", tree)
    states = set()
    for item in tree.items:
        if isinstance(item, LInt):
            if not space.single():
                raise CarrierMismatch("stateset", "bare integers need a single-variable space")
            state = (item.value,)
        elif isinstance(item, LState):
            binding = dict(item.bindings)
            if set(binding) != set(space.names):
                raise CarrierMismatch("stateset", f"state must bind exactly {space.names}")
            state = tuple(binding[n] for n in space.names)
        else:
            raise CarrierMismatch("stateset", item)
        for i, v in enumerate(state):
            if not space.in_range(i, v):
                raise CarrierMismatch("stateset", f"{space.names[i]}={v} outside {space}")
        states.add(state)
    return frozenset(states)


def format_stateset(s: frozenset, space: FinStateSpace) -> str:
    if space.single():
        return "{" + ",".join(str(v[0]) for v in sorted(s)) + "}"
    body = ",".join(
        "(" + ",".join(f"{n}={v}" for n, v in zip(space.names, st)) + ")" for st in sorted(s)
    )
    return "{" + body + "}"


def sample_stateset(space: FinStateSpace, rng: random.Random, max_size: int = 6) -> frozenset:
    universe = sorted(space.states()) if len(space) <= 64 else None
    if universe is not None:
        return frozenset(s for s in universe if rng.random() < 0.5)
    out = set()
    for _ in range(rng.randint(0, max_size)):
        out.add(tuple(rng.randint(lo, hi) for _, lo, hi in space.variables))
    return frozenset(out)


def _is_stateset(space: FinStateSpace):
    n = len(space.variables)

    def member(x) -> bool:
        return isinstance(x, frozenset) and all(
            isinstance(s, tuple) and len(s) == n and all(space.in_range(i, v) for i, v in enumerate(s))
            for s in x
        )

    return member


def _parse(space: FinStateSpace):
    return lambda text: stateset_from_tree(read_literal(text), space)


def collecting(space: FinStateSpace) -> DomainDescriptor:
    """Sets of states under inclusion, singletons as basis, union as sum."""
    sigma = space.states()

    def singletons(d: frozenset) -> list:
        return [EMPTY_SET] + [frozenset([s]) for s in sorted(d)]

    lattice = LatticeDescriptor(
        carrier_tag="stateset",
        leq=lambda a, b: a <= b,
        bot=EMPTY_SET,
        top=sigma,
        join2=frozenset.union,
        meet2=frozenset.intersection,
        basis_kind=BasisKind.IRREDUCIBLE,
        member=_is_stateset(space),
        enumerate_basis_below=singletons,
        dense_fast_path=True,
        sample=lambda rng: sample_stateset(space, rng),
    )
    monoid = MonoidDescriptor(
        carrier_tag="stateset",
        oplus_pair=frozenset.union,
        neutral=EMPTY_SET,
        omega_sum=lambda m: m,
        idempotent=True,
        equals_lattice_join=True,
    )

    def transfer(e, b):
        return post_elementary(e, b, space)

    return DomainDescriptor(
        spec=f"collecting({space})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer,
        flags=DomainFlags(
            dense_fast_path=True,
            oplus_idempotent=True,
            equals_lattice_join=True,
            additive_semantics=True,
        ),
        variables=space.names,
        parse_value=_parse(space),
        format_value=lambda s: format_stateset(s, space),
        meta={"space": space, "from_tree": lambda t: stateset_from_tree(t, space)},
    )


def incorrectness(space: FinStateSpace) -> DomainDescriptor:
    """Sets of states ordered by reverse inclusion; every element is a basis element.

    Bottom is the whole space and top is the empty set, while the sum stays
    union, which is not the lattice join (intersection).
    """
    sigma = space.states()
    lattice = LatticeDescriptor(
        carrier_tag="stateset",
        leq=lambda a, b: b <= a,
        bot=sigma,
        top=EMPTY_SET,
        join2=frozenset.intersection,
        meet2=frozenset.union,
        basis_kind=BasisKind.TRIVIAL,
        member=_is_stateset(space),
        sample=lambda rng: sample_stateset(space, rng),
    )
    monoid = MonoidDescriptor(
        carrier_tag="stateset",
        oplus_pair=frozenset.union,
        neutral=EMPTY_SET,
        omega_sum=lambda m: m,
        idempotent=True,
        equals_lattice_join=False,
    )

    def transfer(e, b):
        return post_elementary(e, b, space)

    def show(s):
        if s == sigma and len(sigma) > 16:
            return "all"
        return format_stateset(s, space)

    return DomainDescriptor(
        spec=f"incorrectness({space})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer,
        flags=DomainFlags(oplus_idempotent=True),
        variables=space.names,
        parse_value=_parse(space),
        format_value=show,
        meta={"space": space, "from_tree": lambda t: stateset_from_tree(t, space)},
    )
