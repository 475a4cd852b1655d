"""Integer intervals and their exact elementary transfers."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from ..errors import InfiniteBasisDecomposition
from ..order import BasisKind, LatticeDescriptor
from ..regcmd import Assign, Cmp, Const, Diverge, ElcAtom, Filter, Mod, Neg, Not, Shift, Skip, holds

INF = math.inf


@dataclass(frozen=True)
class Interval:
    """A closed integer interval; bounds may be infinite. lo > hi means empty."""

    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            object.__setattr__(self, "lo", INF)
            object.__setattr__(self, "hi", -INF)
        for b in (self.lo, self.hi):
            if not (isinstance(b, int) or b in (INF, -INF)):
                raise TypeError(f"interval bound must be an int or infinite: {b!r}")

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def bounded(self) -> bool:
        return self.empty or (self.lo != -INF and self.hi != INF)

    def __contains__(self, z: int) -> bool:
        return self.lo <= z <= self.hi

    def __iter__(self):
        if not self.bounded:
            raise InfiniteBasisDecomposition(self)
        if not self.empty:
            yield from range(int(self.lo), int(self.hi) + 1)

    def __len__(self):
        if not self.bounded:
            raise InfiniteBasisDecomposition(self)
        return 0 if self.empty else int(self.hi - self.lo + 1)

    def __str__(self):
        if self.empty:
            return "empty"
        left = "(-inf" if self.lo == -INF else f"[{self.lo}"
        right = "+inf)" if self.hi == INF else f"{self.hi}]"
        return f"{left},{right}"

    def __repr__(self):
        return f"Interval({self})"


EMPTY = Interval(INF, -INF)
TOP = Interval(-INF, INF)


def point(z: int) -> Interval:
    return Interval(z, z)


def hull(*parts: Interval) -> Interval:
    live = [p for p in parts if not p.empty]
    if not live:
        return EMPTY
    return Interval(min(p.lo for p in live), max(p.hi for p in live))


def meet(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), min(a.hi, b.hi))


def leq(a: Interval, b: Interval) -> bool:
    return a.empty or (b.lo <= a.lo and a.hi <= b.hi)


def alpha(values) -> Interval:
    """Tightest interval around a set of integers."""
    vals = list(values)
    if not vals:
        return EMPTY
    return Interval(min(vals), max(vals))


def _residue_up(lo, m: int, r: int):
    """Least value >= lo congruent to r mod m (lo finite)."""
    return lo + (r - lo) % m


def _residue_down(hi, m: int, r: int):
    return hi - (hi - r) % m


def _filter(test, a: Interval) -> Interval:
    if a.empty:
        return a
    if isinstance(test, Cmp):
        c = test.const
        op = test.op
        if op == "<":
            return meet(a, Interval(-INF, c - 1))
        if op == "<=":
            return meet(a, Interval(-INF, c))
        if op == ">":
            return meet(a, Interval(c + 1, INF))
        if op == ">=":
            return meet(a, Interval(c, INF))
        if op == "=":
            return meet(a, point(c))
        # x <> c only trims an endpoint
        if a.lo == a.hi == c:
            return EMPTY
        lo = a.lo + 1 if a.lo == c else a.lo
        hi = a.hi - 1 if a.hi == c else a.hi
        return Interval(lo, hi)
    if isinstance(test, Mod):
        m, r = test.modulus, test.residue % test.modulus
        lo = a.lo if a.lo == -INF else _residue_up(a.lo, m, r)
        hi = a.hi if a.hi == INF else _residue_down(a.hi, m, r)
        return Interval(lo, hi)
    # negated tests: complement of a comparison is a comparison; of a parity, a union
    inner = test.arg
    if isinstance(inner, Not):
        return _filter(inner.arg, a)
    if isinstance(inner, Cmp):
        flipped = {"<": ">=", "<=": ">", ">": "<=", ">=": "<", "=": "<>", "<>": "="}[inner.op]
        return _filter(Cmp(inner.var, flipped, inner.const), a)
    m = inner.modulus
    others = [Mod(inner.var, m, r) for r in range(m) if r != inner.residue % m]
    return hull(*(_filter(t, a) for t in others))


def interval_transfer(e: ElcAtom, a: Interval) -> Interval:
    """Exact best approximation of a catalog atom on a single-variable interval."""
    if isinstance(e, Skip):
        return a
    if isinstance(e, Diverge) or a.empty:
        return EMPTY
    if isinstance(e, Filter):
        return _filter(e.test, a)
    if isinstance(e, Assign):
        exp = e.exp
        if isinstance(exp, Const):
            return point(exp.value)
        if isinstance(exp, Shift):
            return Interval(a.lo + exp.offset, a.hi + exp.offset)
        if isinstance(exp, Neg):
            return Interval(-a.hi, -a.lo)
    raise TypeError(f"not an elementary command: {e!r}")


def _singletons_below(a: Interval) -> list:
    if not a.bounded:
        raise InfiniteBasisDecomposition(a, "unbounded interval under the singleton basis")
    return [EMPTY] + [point(z) for z in a]


def interval_lattice(irreducible: bool, lo=-INF, hi=INF, sample_range: int = 4) -> LatticeDescriptor:
    """Intervals inside [lo, hi] (the whole of Int by default)."""
    top = Interval(lo, hi)

    def member(x) -> bool:
        return isinstance(x, Interval) and leq(x, top)

    def sample(rng: random.Random) -> Interval:
        if rng.random() < 0.15:
            return EMPTY
        a_lo = lo if lo != -INF else -sample_range
        a_hi = hi if hi != INF else sample_range
        u, v = sorted((rng.randint(a_lo, a_hi), rng.randint(a_lo, a_hi)))
        return Interval(u, v)

    return LatticeDescriptor(
        carrier_tag="interval",
        leq=leq,
        bot=EMPTY,
        top=top,
        join2=lambda a, b: hull(a, b),
        meet2=meet,
        basis_kind=BasisKind.IRREDUCIBLE if irreducible else BasisKind.TRIVIAL,
        member=member,
        enumerate_basis_below=_singletons_below if irreducible else None,
        dense_fast_path=False,
        sample=sample,
    )


def parse_interval(text: str) -> Interval:
    t = text.strip().replace(" ", "")
    if t in ("empty", "{}", "bot"):
        return EMPTY
    if len(t) < 5 or t[0] not in "[(" or t[-1] not in "])" or "," not in t:
        raise ValueError(f"not an interval literal: {text!r}")
    left, right = t[1:-1].split(",", 1)

    def bound(s: str):
        if s in ("-inf", "-oo"):
            return -INF
        if s in ("+inf", "inf", "+oo"):
            return INF
        return int(s)

    return Interval(bound(left), bound(right))


def show_interval(a: Interval) -> str:
    return str(a)


def clip(a: Interval, limits: Optional[Interval]) -> Interval:
    return a if limits is None else meet(a, limits)


def interval_from_tree(tree) -> Interval:
    from .literals import LInterval, LSet, LWord

    if isinstance(tree, LInterval):
        return tree.value
    if isinstance(tree, LWord) and tree.word in ("empty", "bot"):
        return EMPTY
    if isinstance(tree, LWord) and tree.word in ("top", "all"):
        return TOP
    if isinstance(tree, LSet) and not tree.items:
        return EMPTY
    raise ValueError(f"not an interval literal: {tree!r}")


def _clip_top(value: Interval, limits: Interval) -> Interval:
    if not leq(value, limits):
        if value == TOP:
            return limits
        raise ValueError(f"{value} lies outside {limits}")
    return value


def interval_domain(irreducible: bool, lo=-INF, hi=INF):
    """Intervals with the lattice join as sum; the basis is either every
    interval or the singletons plus the empty interval."""
    from ..monoid import MonoidDescriptor
    from .base import DomainDescriptor, DomainFlags
    from .literals import read_literal

    lattice = interval_lattice(irreducible, lo, hi)
    limits = Interval(lo, hi)
    monoid = MonoidDescriptor(
        carrier_tag="interval",
        oplus_pair=lambda a, b: hull(a, b),
        neutral=EMPTY,
        omega_sum=lambda m: m,
        idempotent=True,
        equals_lattice_join=True,
    )

    def transfer(e, a):
        return meet(interval_transfer(e, a), limits)

    def parse(text: str) -> Interval:
        return _clip_top(interval_from_tree(read_literal(text)), limits)

    kind = "irreducible" if irreducible else "simple"
    return DomainDescriptor(
        spec=f"interval({kind})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer,
        transfer_full=transfer,
        flags=DomainFlags(oplus_idempotent=True, equals_lattice_join=True),
        variables=(),
        parse_value=parse,
        format_value=show_interval,
        widening="singletons" if irreducible else "interval",
        meta={"limits": limits, "from_tree": lambda t: _clip_top(interval_from_tree(t), limits)},
    )
