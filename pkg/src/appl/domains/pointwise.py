"""Hypersets of abstract values, with each atom lifted member by member.

An abstract value a stands for the state sets c with alpha(c) = a. The image
of {a} under an atom collects alpha(post c) over exactly those c, computed by
brute force since a value can hide many concretizations.
"""

from __future__ import annotations

import itertools
from dataclasses import replace
from functools import lru_cache

from ..errors import UnsupportedGeneratorAlgebra
from ..regcmd import Diverge
from .base import DomainDescriptor, DomainFlags
from .galois import GiBundle
from .hyper import hyper_domain

# the number of free interior values we are willing to enumerate subsets of
INTERIOR_CAP = 12


def _concretizations(bundle: GiBundle, a):
    """Every state set whose abstraction is exactly a."""
    gi = bundle.gi
    full = sorted(gi.gamma(a))
    must = [s for s in full if _extreme(a, s)]
    free = [s for s in full if s not in must]
    if len(free) > INTERIOR_CAP:
        raise UnsupportedGeneratorAlgebra(
            f"{len(free)} interior values under {bundle.abstract.format_value(a)} is too many to enumerate"
        )
    base = frozenset(must)
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            c = base | frozenset(extra)
            if gi.alpha(c) == a:
                yield c


def _extreme(a, s) -> bool:
    # for intervals the two end points must be present; other insertions
    # fall back to a plain filter on alpha
    lo, hi = getattr(a, "lo", None), getattr(a, "hi", None)
    return lo is not None and s[0] in (lo, hi)


def pointwise_domain(bundle: GiBundle) -> DomainDescriptor:
    absd = bundle.abstract
    gi = bundle.gi
    space = bundle.space
    conc = bundle.concrete

    @lru_cache(maxsize=None)
    def image(e, a) -> frozenset:
        return frozenset(gi.alpha(conc.transfer_full(e, c)) for c in _concretizations(bundle, a))

    hyp = hyper_domain(absd, name=f"pointwise({bundle.spec})")
    neutral = hyp.monoid.neutral

    def transfer_full(e, h):
        if isinstance(e, Diverge):
            return neutral
        out = set()
        for a in h:
            out |= image(e, a)
        return frozenset(out)

    def transfer(e, b):
        if isinstance(e, Diverge):
            return neutral
        return transfer_full(e, b)

    meta = dict(hyp.meta)
    # one abstract point may have concretizations with different images, so a
    # basis element can map to several; sums then pick across them and
    # r;(r1+r2) only stays below r;r1 + r;r2
    meta.update({"gi": bundle, "space": space, "left_distributive": False})
    return replace(
        hyp,
        transfer=transfer,
        transfer_full=transfer_full,
        flags=DomainFlags(dense_fast_path=True),
        meta=meta,
    )


def abstract_pointwise(bundle: GiBundle, h) -> frozenset:
    """The pointwise abstraction of a concrete hyperset."""
    return frozenset(bundle.gi.alpha(c) for c in h)
