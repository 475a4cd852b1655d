"""Down-closed hypersets, kept as their maximal generators.

Over intervals a generator is either an interval or an ascending progression
of singletons {[a+dk, a+dk] | k >= 0}. Only the operations needed to reason
about such families are supported; everything else raises
UnsupportedGeneratorAlgebra.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from ..errors import CarrierMismatch, InfiniteBasisDecomposition, UnsupportedGeneratorAlgebra
from ..monoid import MonoidDescriptor
from ..order import BasisKind, LatticeDescriptor
from ..regcmd import Diverge
from .base import DomainDescriptor, DomainFlags
from .interval import Interval, point
from .literals import LDown, LProg, LWord, read_literal
from .progression import Prog, atom_image


@dataclass(frozen=True)
class DownSet:
    gens: frozenset = field(default_factory=frozenset)
    progs: frozenset = field(default_factory=frozenset)

    @property
    def empty(self) -> bool:
        return not self.gens and not self.progs


class _Ops:
    """Generator algebra over a base lattice (intervals or state sets)."""

    def __init__(self, clat: LatticeDescriptor):
        self.c = clat
        self.intervals = clat.carrier_tag == "interval"

    def _is_point(self, g) -> bool:
        return self.intervals and not g.empty and g.lo == g.hi

    def _on_prog(self, g, progs) -> bool:
        return self._is_point(g) and any(g.lo in p for p in progs)

    def _prog_covered_by_gen(self, p: Prog, gens) -> bool:
        return any(g.lo <= p.start and g.hi == math.inf for g in gens if not g.empty)

    # ------------------------------------------------------------ normal form
    def normalize(self, gens, progs) -> DownSet:
        gens, progs = set(gens), set(progs)
        for p in progs:
            if p.step <= 0:
                raise UnsupportedGeneratorAlgebra(f"descending progression {p}")
        changed = True
        while changed:
            changed = False
            for p in list(progs):
                others = progs - {p}
                if any(p.within(q) for q in others) or self._prog_covered_by_gen(p, gens):
                    progs.discard(p)
                    changed = True
                    continue
                q = p
                while any(q.start in g for g in gens if not g.empty):
                    q = Prog(q.start + q.step, q.step)
                back = point(q.start - q.step)
                while back in gens:
                    gens.discard(back)
                    q = Prog(q.start - q.step, q.step)
                    back = point(q.start - q.step)
                if q != p:
                    progs.discard(p)
                    progs.add(q)
                    changed = True
            keep = set()
            for g in gens:
                dominated = any(g != h and self.c.leq(g, h) for h in gens) or self._on_prog(g, progs)
                if g == self.c.bot and (len(gens) > 1 or progs):
                    dominated = True
                if not dominated:
                    keep.add(g)
            if keep != gens:
                gens = keep
                changed = True
        return DownSet(frozenset(gens), frozenset(progs))

    # ------------------------------------------------------------ order
    def gen_below(self, g, d: DownSet) -> bool:
        if d.empty:
            return False
        if g == self.c.bot:
            return True
        if any(self.c.leq(g, h) for h in d.gens):
            return True
        return self._is_point(g) and any(g.lo in p for p in d.progs)

    def _value_below(self, v: int, d: DownSet) -> bool:
        return self.gen_below(point(v), d)

    def prog_below(self, p: Prog, d: DownSet) -> bool:
        if any(p.within(q) for q in d.progs) or self._prog_covered_by_gen(p, d.gens):
            return True
        # past every finite bound the remaining elements split into residue
        # classes, each of which must sit inside one progression or one ray
        finite = [g.hi for g in d.gens if not g.empty and g.hi != math.inf]
        starts = [q.start for q in d.progs] + [g.lo for g in d.gens if not g.empty and g.hi == math.inf]
        horizon = max(finite + starts + [p.start])
        k = 0
        while p.element(k) <= horizon:
            if not self._value_below(p.element(k), d):
                return False
            k += 1
        step = p.step
        for q in d.progs:
            step = math.lcm(step, q.step)
        for j in range(step // p.step):
            tail = Prog(p.element(k + j), step)
            if not (any(tail.within(q) for q in d.progs) or self._prog_covered_by_gen(tail, d.gens)):
                return False
        return True

    def leq(self, a: DownSet, b: DownSet) -> bool:
        return all(self.gen_below(g, b) for g in a.gens) and all(self.prog_below(p, b) for p in a.progs)

    # ------------------------------------------------------------ lattice
    def join(self, a: DownSet, b: DownSet) -> DownSet:
        return self.normalize(a.gens | b.gens, a.progs | b.progs)

    def _meet_gen_prog(self, g, p: Prog):
        if g.empty:
            return [], []
        if g.hi == math.inf:
            k = 0 if p.start >= g.lo else -((p.start - g.lo) // p.step)
            return [], [Prog(p.element(k), p.step)]
        return [point(v) for v in range(int(max(g.lo, p.start)), int(g.hi) + 1) if v in p], []

    def meet(self, a: DownSet, b: DownSet) -> DownSet:
        if a.empty or b.empty:
            return DownSet()
        gens, progs = {self.c.bot}, set()
        for g in a.gens:
            for h in b.gens:
                gens.add(self.c.meet2(g, h))
        for g, p in [(g, p) for g in a.gens for p in b.progs] + [(g, p) for g in b.gens for p in a.progs]:
            gs, ps = self._meet_gen_prog(g, p)
            gens.update(gs)
            progs.update(ps)
        for p in a.progs:
            for q in b.progs:
                if p.within(q):
                    progs.add(p)
                elif q.within(p):
                    progs.add(q)
                else:
                    raise UnsupportedGeneratorAlgebra(f"meet of progressions {p} and {q}")
        return self.normalize(gens, progs)

    # ------------------------------------------------------------ monoid
    def oplus(self, a: DownSet, b: DownSet) -> DownSet:
        if a.empty or b.empty:
            return DownSet()
        gens, progs = set(), set()
        for g in a.gens:
            for h in b.gens:
                gens.add(self.c.join2(g, h))
        for x, y in ((a, b), (b, a)):
            for p in x.progs:
                for g in y.gens:
                    if g != self.c.bot:
                        raise UnsupportedGeneratorAlgebra(f"sum of {p} with a non-empty generator")
                    progs.add(p)
                if y.progs:
                    raise UnsupportedGeneratorAlgebra(f"sum of two progressions ({p})")
        return self.normalize(gens, progs)

    def omega(self, a: DownSet) -> DownSet:
        if a.empty:
            return a
        top = self.c.bot
        for g in a.gens:
            top = self.c.join2(top, g)
        for p in a.progs:
            top = self.c.join2(top, p.hull())
        return self.normalize({top}, ())


def downclosed_domain(hyper: DomainDescriptor) -> DomainDescriptor:
    base: DomainDescriptor = hyper.meta["base"]
    clat = base.lattice
    ops = _Ops(clat)
    bottom = DownSet()
    neutral = DownSet(frozenset([clat.bot]))

    def member(x) -> bool:
        return isinstance(x, DownSet) and all(clat.member(g) for g in x.gens)

    def basis(d: DownSet) -> list:
        if d.progs:
            raise InfiniteBasisDecomposition(show(d), "progression generators")
        return [bottom] + [DownSet(frozenset([g])) for g in sorted(d.gens, key=base.format_value)]

    def sample(rng: random.Random) -> DownSet:
        return ops.normalize({clat.sample(rng) for _ in range(rng.randint(0, 2))}, ())

    lattice = LatticeDescriptor(
        carrier_tag=f"down[{clat.carrier_tag}]",
        leq=ops.leq,
        bot=bottom,
        top=DownSet(frozenset([clat.top])),
        join2=ops.join,
        meet2=ops.meet,
        basis_kind=BasisKind.IRREDUCIBLE,
        member=member,
        enumerate_basis_below=basis,
        dense_fast_path=True,
        sample=sample if clat.sample is not None else None,
    )
    monoid = MonoidDescriptor(
        carrier_tag=lattice.carrier_tag,
        oplus_pair=ops.oplus,
        neutral=neutral,
        omega_sum=ops.omega,
    )

    def transfer_full(e, d: DownSet) -> DownSet:
        if isinstance(e, Diverge):
            return neutral
        if d.empty:
            return bottom
        gens = {base.transfer_full(e, g) for g in d.gens}
        progs = set()
        for p in d.progs:
            intervals, ps, hits_empty = atom_image(e, p)
            gens.update(intervals)
            progs.update(ps)
            if hits_empty:
                gens.add(clat.bot)
        return ops.normalize(gens, progs)

    from_base = base.meta["from_tree"]

    def from_tree(tree) -> DownSet:
        if isinstance(tree, LWord) and tree.word in ("empty", "bot"):
            return bottom
        if isinstance(tree, LWord) and tree.word in ("top", "all"):
            return lattice.top
        if not isinstance(tree, LDown):
            # a plain hyperset literal is read as its down-closure
            hs = hyper.meta["from_tree"](tree)
            return abstract_down(hs, ops)
        gens, progs = set(), set()
        for g in tree.gens:
            if isinstance(g, LProg):
                if not ops.intervals:
                    raise CarrierMismatch(lattice.carrier_tag, "progressions need an interval base")
                if g.step <= 0:
                    raise CarrierMismatch(lattice.carrier_tag, "progressions must ascend")
                progs.add(Prog(g.start, g.step))
            else:
                gens.add(from_base(g))
        return ops.normalize(gens, progs)

    def show(d: DownSet) -> str:
        parts = sorted(base.format_value(g) for g in d.gens) + sorted(str(p) for p in d.progs)
        return "down{" + "; ".join(parts) + "}"

    return DomainDescriptor(
        spec=f"downclosed({hyper.spec})",
        lattice=lattice,
        monoid=monoid,
        transfer=transfer_full,
        transfer_full=transfer_full,
        flags=DomainFlags(dense_fast_path=True, reflects_density=True),
        variables=hyper.variables,
        parse_value=lambda text: from_tree(read_literal(text)),
        format_value=show,
        meta={"base": base, "hyper": hyper, "ops": ops, "from_tree": from_tree},
    )


def abstract_down(h, ops: _Ops) -> DownSet:
    """The down-closure of a finite hyperset, as maximal generators."""
    return ops.normalize(set(h), ())
