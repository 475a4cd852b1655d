"""Brute-force reference semantics used to cross-check the package.

These interpret commands directly on integers, one value at a time, without
going through any domain descriptor.
"""

from __future__ import annotations

import operator

from appl.regcmd import Assign, Choice, Cmp, Const, Diverge, Elc, Filter, Mod, Neg, Not, Seq, Shift, Skip, Star

_CMP = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
    "<>": operator.ne,
}


def test_holds(b, v: int) -> bool:
    if isinstance(b, Not):
        return not test_holds(b.arg, v)
    if isinstance(b, Cmp):
        return _CMP[b.op](v, b.const)
    if isinstance(b, Mod):
        return v % b.modulus == b.residue
    raise TypeError(b)


test_holds.__test__ = False


def atom_run(e, v: int) -> set:
    if isinstance(e, Skip):
        return {v}
    if isinstance(e, Diverge):
        return set()
    if isinstance(e, Filter):
        return {v} if test_holds(e.test, v) else set()
    if isinstance(e, Assign):
        x = e.exp
        if isinstance(x, Const):
            return {x.value}
        if isinstance(x, Shift):
            return {v + x.offset}
        if isinstance(x, Neg):
            return {-v}
    raise TypeError(e)


def run(r, v: int, lo: int, hi: int) -> set:
    """Final values of r from v, dropping anything outside lo..hi."""
    if isinstance(r, Elc):
        return {w for w in atom_run(r.atom, v) if lo <= w <= hi}
    if isinstance(r, Seq):
        out = set()
        for w in run(r.left, v, lo, hi):
            out |= run(r.right, w, lo, hi)
        return out
    if isinstance(r, Choice):
        return run(r.left, v, lo, hi) | run(r.right, v, lo, hi)
    if isinstance(r, Star):
        seen, todo = {v}, [v]
        while todo:
            w = todo.pop()
            for u in run(r.body, w, lo, hi):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return seen
    raise TypeError(r)


def collecting_post(r, values, lo: int, hi: int) -> set:
    out = set()
    for v in values:
        out |= run(r, v, lo, hi)
    return out


def hull(values):
    """(lo, hi) of a non-empty set, None for the empty set."""
    values = list(values)
    if not values:
        return None
    return (min(values), max(values))


def irreducible_points(r, v: int, lo: int, hi: int) -> set:
    """Points of the irreducible-interval basis semantics at [v,v], within
    lo..hi: every intermediate result is widened to its hull and then split
    back into singletons."""
    if isinstance(r, Elc):
        return {w for w in atom_run(r.atom, v) if lo <= w <= hi}
    if isinstance(r, Seq):
        mids = _fill(irreducible_points(r.left, v, lo, hi))
        out = set()
        for w in mids:
            out |= irreducible_points(r.right, w, lo, hi)
        return _fill(out)
    if isinstance(r, Choice):
        return _fill(irreducible_points(r.left, v, lo, hi) | irreducible_points(r.right, v, lo, hi))
    if isinstance(r, Star):
        # the iterates r^0, r^1, ... at [v,v], level by level, until one repeats
        level, levels, total = frozenset({v}), set(), set()
        while level not in levels:
            levels.add(level)
            total |= level
            nxt = set()
            for w in level:
                nxt |= irreducible_points(r.body, w, lo, hi)
            level = frozenset(_fill(nxt))
        return _fill(total)
    raise TypeError(r)


def _fill(points: set) -> set:
    h = hull(points)
    return set() if h is None else set(range(h[0], h[1] + 1))
