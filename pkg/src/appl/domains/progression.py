"""Arithmetic progressions of integers and their symbolic images under commands.

Far enough from the constants of a star-free command, every test in it
behaves uniformly along a progression whose step is a multiple of every
modulus involved. Such a "uniform tail" can be pushed through the command
symbolically: each element u maps to nothing, to a fixed interval, or to the
points sigma*u + c for c in a contiguous range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from ..errors import UnsupportedGeneratorAlgebra
from ..regcmd import (
    Assign,
    Choice,
    Cmp,
    Const,
    Diverge,
    Elc,
    Filter,
    Mod,
    Neg,
    Not,
    Seq,
    Shift,
    Skip,
    Star,
    atoms,
    holds,
)
from .interval import Interval, hull


@dataclass(frozen=True)
class Prog:
    """The integers start + step*k for k >= 0; step is never zero."""

    start: int
    step: int

    def __post_init__(self):
        if self.step == 0:
            raise ValueError("a progression needs a non-zero step")

    def element(self, k: int) -> int:
        return self.start + self.step * k

    def __contains__(self, v: int) -> bool:
        diff = v - self.start
        return diff % self.step == 0 and diff // self.step >= 0

    def within(self, other: "Prog") -> bool:
        """Every element of self is an element of other."""
        return (
            self.step % other.step == 0
            and (self.step > 0) == (other.step > 0)
            and self.start in other
        )

    @property
    def ascending(self) -> bool:
        return self.step > 0

    def hull(self) -> Interval:
        if self.step > 0:
            return Interval(self.start, math.inf)
        return Interval(-math.inf, self.start)

    def __str__(self):
        sign = "+" if self.start >= 0 else "-"
        return f"prog({self.step}k{sign}{abs(self.start)})"


class _Empty:
    def __repr__(self):
        return "EmptyV"


EMPTY_V = _Empty()


@dataclass(frozen=True)
class ConstV:
    value: Interval


@dataclass(frozen=True)
class LinV:
    """The points sigma*u + c for lo <= c <= hi."""

    sigma: int
    lo: int
    hi: int


TailValue = Union[_Empty, ConstV, LinV]


class TailUnsupported(UnsupportedGeneratorAlgebra):
    """The command does not map a uniform tail into a representable shape."""


def command_constants(r) -> tuple:
    """(B, L): elements beyond distance B from zero behave uniformly on every
    test of r, along progressions whose step is a multiple of L."""
    cmp_bound = 0
    shifts = 0
    modulus = 1
    for a in atoms(r):
        if isinstance(a, Assign):
            if isinstance(a.exp, Shift):
                shifts += abs(a.exp.offset)
            elif isinstance(a.exp, Const):
                cmp_bound = max(cmp_bound, abs(a.exp.value))
        elif isinstance(a, Filter):
            t = a.test
            while isinstance(t, Not):
                t = t.arg
            if isinstance(t, Cmp):
                cmp_bound = max(cmp_bound, abs(t.const))
            else:
                modulus = math.lcm(modulus, t.modulus)
    return cmp_bound + shifts + 1, modulus


def split(p: Prog, bound: int, modulus: int) -> tuple:
    """Cut p into concrete leading elements and uniform tails.

    Returns (prefix values, tails) where every tail element has absolute
    value above ``bound`` and each tail steps by a multiple of ``modulus``.
    """
    prefix = []
    k = 0
    while abs(p.element(k)) <= bound or (p.element(k) > 0) != (p.step > 0):
        prefix.append(p.element(k))
        k += 1
    m = modulus // math.gcd(abs(p.step), modulus)
    tails = [Prog(p.element(k + j), p.step * m) for j in range(m)]
    return prefix, tails


def _join(a: TailValue, b: TailValue) -> TailValue:
    if a is EMPTY_V:
        return b
    if b is EMPTY_V:
        return a
    if isinstance(a, ConstV) and isinstance(b, ConstV):
        return ConstV(hull(a.value, b.value))
    if isinstance(a, LinV) and isinstance(b, LinV) and a.sigma == b.sigma:
        return LinV(a.sigma, min(a.lo, b.lo), max(a.hi, b.hi))
    raise TailUnsupported("a choice mixes a moving and a fixed (or mirrored) image")


def _test(test, v: int) -> bool:
    return holds(test, v)


def eval_tail(r, sigma: int, c: int, rep: int, concrete: Callable) -> TailValue:
    """Symbolic image of the point sigma*u + c under r for u on a uniform tail.

    ``rep`` is a representative tail element, used to decide tests, and
    ``concrete(r, interval)`` evaluates r on a bounded interval.
    """
    if isinstance(r, Elc):
        e = r.atom
        if isinstance(e, Skip):
            return LinV(sigma, c, c)
        if isinstance(e, Diverge):
            return EMPTY_V
        if isinstance(e, Filter):
            return LinV(sigma, c, c) if _test(e.test, sigma * rep + c) else EMPTY_V
        exp = e.exp
        if isinstance(exp, Shift):
            return LinV(sigma, c + exp.offset, c + exp.offset)
        if isinstance(exp, Neg):
            return LinV(-sigma, -c, -c)
        return ConstV(Interval(exp.value, exp.value))
    if isinstance(r, Choice):
        return _join(
            eval_tail(r.left, sigma, c, rep, concrete), eval_tail(r.right, sigma, c, rep, concrete)
        )
    if isinstance(r, Seq):
        first = eval_tail(r.left, sigma, c, rep, concrete)
        return continue_tail(r.right, first, rep, concrete)
    if isinstance(r, Star):
        raise TailUnsupported("nested iteration inside a progression image")
    raise TypeError(r)


def continue_tail(r, value: TailValue, rep: int, concrete: Callable) -> TailValue:
    if value is EMPTY_V:
        return EMPTY_V
    if isinstance(value, ConstV):
        return ConstV(concrete(r, value.value))
    out: TailValue = EMPTY_V
    for c in range(value.lo, value.hi + 1):
        out = _join(out, eval_tail(r, value.sigma, c, rep, concrete))
    return out


def atom_image(e, p: Prog) -> tuple:
    """Image of the singletons of p under one atom.

    Returns (intervals, progs, hits_empty): the concrete images of leading
    elements, the progressions formed by tail images and whether some
    element is mapped to the empty interval.
    """
    from .interval import interval_transfer, point

    bound, modulus = command_constants(Elc(e))
    prefix, tails = split(p, bound, modulus)
    intervals, progs, hits_empty = [], [], False
    for v in prefix:
        img = interval_transfer(e, point(v))
        if img.empty:
            hits_empty = True
        else:
            intervals.append(img)
    for t in tails:
        val = eval_tail(Elc(e), 1, 0, t.start, lambda r, a: a)
        if val is EMPTY_V:
            hits_empty = True
        elif isinstance(val, ConstV):
            intervals.append(val.value)
        else:
            for c in range(val.lo, val.hi + 1):
                progs.append(Prog(val.sigma * t.start + c, val.sigma * t.step))
    return intervals, progs, hits_empty

