"""Finite state spaces and the strongest post of elementary commands."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import DomainSpecError
from ..regcmd import Assign, Const, Diverge, ElcAtom, Filter, Neg, Shift, Skip, bexp_var, holds

STATE_CAP = 10**6

State = tuple


@dataclass
class DropCounter:
    """Counts states discarded because an assignment left the variable range."""

    dropped: int = 0


@dataclass(frozen=True)
class FinStateSpace:
    variables: tuple  # ((name, lo, hi), ...)
    drops: DropCounter = field(default_factory=DropCounter, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.variables:
            raise DomainSpecError("a state space needs at least one variable")
        size = 1
        for name, lo, hi in self.variables:
            if lo > hi:
                raise DomainSpecError(f"empty range for {name}")
            size *= hi - lo + 1
        if size > STATE_CAP:
            raise DomainSpecError(f"state space has {size} states, above the cap of {STATE_CAP}")

    @property
    def names(self) -> tuple:
        return tuple(v[0] for v in self.variables)

    def index(self, var: str) -> int:
        try:
            return self.names.index(var)
        except ValueError:
            raise DomainSpecError(f"variable {var!r} is not declared in the state space") from None

    def in_range(self, i: int, value: int) -> bool:
        _, lo, hi = self.variables[i]
        return lo <= value <= hi

    def states(self) -> frozenset:
        ranges = [range(lo, hi + 1) for _, lo, hi in self.variables]
        return frozenset(itertools.product(*ranges))

    def __len__(self):
        n = 1
        for _, lo, hi in self.variables:
            n *= hi - lo + 1
        return n

    def single(self) -> bool:
        return len(self.variables) == 1

    def __str__(self):
        return ",".join(f"{n}:{lo}..{hi}" for n, lo, hi in self.variables)


_VAR = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*")


def parse_space(text: str) -> FinStateSpace:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise DomainSpecError(f"empty state space {text!r}")
    variables = []
    for part in parts:
        m = _VAR.fullmatch(part)
        if m is None:
            raise DomainSpecError(f"malformed variable range {part!r}; expected name:lo..hi")
        variables.append((m.group(1), int(m.group(2)), int(m.group(3))))
    return FinStateSpace(tuple(variables))


def _eval(exp, state: State, space: FinStateSpace) -> int:
    if isinstance(exp, Const):
        return exp.value
    if isinstance(exp, Shift):
        return state[space.index(exp.var)] + exp.offset
    if isinstance(exp, Neg):
        return -state[space.index(exp.var)]
    raise TypeError(exp)


def post_elementary(e: ElcAtom, states: Iterable[State], space: FinStateSpace) -> frozenset:
    """Strongest post of one atom on a set of states of ``space``."""
    if isinstance(e, Skip):
        return frozenset(states)
    if isinstance(e, Diverge):
        return frozenset()
    if isinstance(e, Filter):
        i = space.index(bexp_var(e.test))
        return frozenset(s for s in states if holds(e.test, s[i]))
    if isinstance(e, Assign):
        i = space.index(e.var)
        out = set()
        for s in states:
            v = _eval(e.exp, s, space)
            if space.in_range(i, v):
                out.add(s[:i] + (v,) + s[i + 1 :])
            else:
                space.drops.dropped += 1
        return frozenset(out)
    raise TypeError(f"not an elementary command: {e!r}")
