"""Iteration over singleton intervals when infinitely many points are reachable.

Points reached from the start are explored one at a time. Once three
consecutive discoveries advance by the same step d, the walk guesses that it
continues forever along the progression s, s+d, s+2d, ... The guess is
accepted only if every element u of the progression provably reaches u+d:
elements near the constants of the body are checked directly, and the
uniform tails are checked symbolically. Accepted progressions are then
pushed through the body symbolically, so exploration stays finite.

Whatever cannot be handled this way falls back to an interval that is
closed under the inductive interval semantics of the body.
"""

from __future__ import annotations

from collections import deque

from .domains.interval import EMPTY, INF, Interval, hull, interval_domain, leq, point
from .domains.progression import (
    EMPTY_V,
    ConstV,
    LinV,
    Prog,
    TailUnsupported,
    command_constants,
    eval_tail,
    split,
)
from .errors import ApplError, StarDidNotStabilize

CHAIN = 3


class _GiveUp(Exception):
    pass


class _Walk:
    def __init__(self, body, ctx):
        from .semantics import bsem_eval

        self.body = body
        self.ctx = ctx
        self.bsem = bsem_eval
        self.bound, self.modulus = command_constants(body)
        self.total = EMPTY
        self.points_done: set = set()
        self.queued: set = set()
        self.parent: dict = {}
        self.queue: deque = deque()
        self.progs_done: list = []
        self.prog_queue: deque = deque()
        self.work = 0

    # -------------------------------------------------------------- helpers
    def f(self, z: int) -> Interval:
        return self.bsem(self.body, point(z), self.ctx)

    def concrete(self, r, a: Interval) -> Interval:
        if not a.bounded:
            raise TailUnsupported("an unbounded intermediate interval")
        out = EMPTY
        for z in a:
            out = hull(out, self.bsem(r, point(z), self.ctx))
        return out

    def covered(self, z: int) -> bool:
        return z in self.points_done or any(z in p for p in self.progs_done)

    def tick(self):
        self.work += 1
        if self.work > self.ctx.star_budget:
            raise _GiveUp(f"more than {self.ctx.star_budget} exploration steps")

    def add_point(self, z: int, parent):
        if z in self.queued or self.covered(z):
            return
        self.queued.add(z)
        self.parent[z] = parent
        self.queue.append(z)

    def add_prog(self, p: Prog):
        if any(p.within(q) for q in self.progs_done) or any(p.within(q) for q in self.prog_queue):
            return
        self.prog_queue.append(p)

    def add_interval(self, a: Interval, parent):
        self.total = hull(self.total, a)
        if a.empty:
            return
        if a.bounded:
            if len(a) > self.ctx.star_budget:
                raise _GiveUp("an image with too many points")
            for z in a:
                self.add_point(z, parent)
            return
        if a.lo == -INF and a.hi == INF:
            self.add_prog(Prog(0, 1))
            self.add_prog(Prog(-1, -1))
        elif a.hi == INF:
            self.add_prog(Prog(int(a.lo), 1))
        else:
            self.add_prog(Prog(int(a.hi), -1))

    def tail_image(self, t: Prog):
        try:
            return eval_tail(self.body, 1, 0, t.start, self.concrete)
        except ApplError as exc:
            raise TailUnsupported(str(exc)) from None

    # -------------------------------------------------------------- guesses
    def pumps(self, p: Prog) -> bool:
        prefix, tails = split(p, self.bound, self.modulus)
        for u in prefix:
            if u + p.step not in self.f(u):
                return False
        for t in tails:
            try:
                v = self.tail_image(t)
            except TailUnsupported:
                return False
            if not (isinstance(v, LinV) and v.sigma == 1 and v.lo <= p.step <= v.hi):
                return False
        return True

    def maybe_guess(self, z: int, nxt: int):
        step = nxt - z
        if step == 0:
            return
        chain = [nxt, z]
        while len(chain) <= CHAIN:
            prev = self.parent.get(chain[-1])
            if prev is None or chain[-1] - prev != step:
                return
            chain.append(prev)
        p = Prog(nxt, step)
        if self.pumps(p):
            self.add_prog(p)

    # -------------------------------------------------------------- steps
    def visit_point(self, z: int):
        self.queued.discard(z)
        if self.covered(z):
            return
        self.points_done.add(z)
        img = self.f(z)
        self.add_interval(img, z)
        if img.bounded and not img.empty:
            for nxt in img:
                if nxt in self.queued:
                    self.maybe_guess(z, nxt)

    def visit_prog(self, p: Prog):
        if any(p.within(q) for q in self.progs_done):
            return
        self.progs_done.append(p)
        self.total = hull(self.total, p.hull())
        prefix, tails = split(p, self.bound, self.modulus)
        for u in prefix:
            self.tick()
            self.add_interval(self.f(u), None)
        for t in tails:
            self.tick()
            v = self.tail_image(t)
            if v is EMPTY_V:
                continue
            if isinstance(v, ConstV):
                self.add_interval(v.value, None)
                continue
            for c in range(v.lo, v.hi + 1):
                q = Prog(v.sigma * t.start + c, v.sigma * t.step)
                self.total = hull(self.total, q.hull())
                self.add_prog(q)

    def run(self, z0: int) -> Interval:
        self.total = point(z0)
        self.add_point(z0, None)
        while self.queue or self.prog_queue:
            self.tick()
            if self.prog_queue:
                self.visit_prog(self.prog_queue.popleft())
            else:
                self.visit_point(self.queue.popleft())
        return self.total


def star_by_pumping(body, b: Interval, ctx) -> Interval:
    if b.empty:
        return b
    if b.lo != b.hi:
        raise ValueError(f"{b} is not a singleton basis element")
    walk = _Walk(body, ctx)
    try:
        return walk.run(int(b.lo))
    except (_GiveUp, TailUnsupported) as exc:
        return _fallback(body, b, walk.total, ctx, str(exc))


def _fallback(body, b: Interval, reached: Interval, ctx, why: str) -> Interval:
    if not ctx.widening_enabled:
        raise StarDidNotStabilize(f"iteration from {b} did not close: {why}")
    from .semantics import bsem_eval

    sub = ctx.derive(interval_domain(False))
    reached = hull(reached, b)
    candidates = []
    if reached.lo != -INF:
        candidates.append(Interval(reached.lo, INF))
    if reached.hi != INF:
        candidates.append(Interval(-INF, reached.hi))
    for w in candidates:
        # any set closed under the inductive semantics bounds every iterate
        if leq(bsem_eval(body, w, sub), w):
            ctx.widened(f"iteration from {b} extrapolated to {w}: {why}")
            return w
    ctx.widened(f"iteration from {b} gave up: {why}")
    return Interval(-INF, INF)
