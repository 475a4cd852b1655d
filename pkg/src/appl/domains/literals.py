"""Reader for value literals shared by every carrier.

The reader produces a small syntax tree; each domain turns that tree into its
own value type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from ..errors import ParseError
from .interval import INF, Interval

_TOK = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[{}\[\](),;|<>=+\-])")


@dataclass(frozen=True)
class LSet:
    items: tuple


@dataclass(frozen=True)
class LInt:
    value: int


@dataclass(frozen=True)
class LInterval:
    value: Interval


@dataclass(frozen=True)
class LState:
    bindings: tuple  # ((name, value), ...)


@dataclass(frozen=True)
class LPair:
    left: Any
    right: Any


@dataclass(frozen=True)
class LDown:
    gens: tuple


@dataclass(frozen=True)
class LProg:
    start: int
    step: int


@dataclass(frozen=True)
class LWord:
    word: str  # empty, all, top


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        for m in _TOK.finditer(text):
            if m.lastgroup != "ws":
                self.toks.append((m.lastgroup, m.group(), m.start()))
        covered = sum(len(m.group()) for m in _TOK.finditer(text))
        if covered != len(text):
            bad = next(i for i, ch in enumerate(text) if not _TOK.match(text, i))
            raise ParseError(f"unexpected character {text[bad]!r} in value literal", 1, bad + 1)
        self.toks.append(("eof", "", len(text)))
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, 1, self.peek()[2] + 1)

    def expect(self, text):
        if self.peek()[1] != text:
            self.fail(f"expected {text!r} but found {self.peek()[1] or 'end of input'!r}")
        return self.next()

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        kind, text, _ = self.peek()
        if kind != "int":
            self.fail(f"expected an integer but found {text or 'end of input'!r}")
        self.next()
        return sign * int(text)

    def bound(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        kind, text, _ = self.peek()
        if kind == "ident" and text in ("inf", "oo"):
            self.next()
            return sign * INF
        if kind != "int":
            self.fail(f"expected an interval bound but found {text or 'end of input'!r}")
        self.next()
        return sign * int(text)

    def value(self):
        kind, text, _ = self.peek()
        if text == "{":
            return self.set_lit()
        if text == "[":
            return self.interval()
        if text == "(":
            if self.peek(1)[0] == "ident" and self.peek(2)[1] == "=":
                return self.state()
            return self.interval()
        if text == "<":
            self.next()
            left = self.value()
            self.expect("|")
            right = self.value()
            self.expect(">")
            return LPair(left, right)
        if kind == "ident" and text == "down":
            self.next()
            self.expect("{")
            gens = []
            while self.peek()[1] != "}":
                gens.append(self.gen())
                if self.peek()[1] in (";", ","):
                    self.next()
                elif self.peek()[1] != "}":
                    self.fail("expected ';' or '}' in down-set literal")
            self.next()
            return LDown(tuple(gens))
        if kind == "ident" and text in ("empty", "all", "top", "bot"):
            self.next()
            return LWord(text)
        if kind == "int" or text in ("-", "+"):
            return LInt(self.signed_int())
        self.fail(f"unexpected {text or 'end of input'!r} in value literal")

    def gen(self):
        if self.peek()[1] == "prog":
            self.next()
            self.expect("(")
            step = 1
            sign = 1
            if self.peek()[1] == "-":
                self.next()
                sign = -1
            if self.peek()[0] == "int":
                step = int(self.next()[1])
            if self.peek()[1] != "k":
                self.fail("expected 'k' in progression")
            self.next()
            start = 0
            if self.peek()[1] in ("+", "-"):
                start = self.signed_int()
            self.expect(")")
            return LProg(start, sign * step)
        return self.value()

    def interval(self):
        self.next()
        lo = self.bound()
        self.expect(",")
        hi = self.bound()
        if self.peek()[1] not in ("]", ")"):
            self.fail("expected ']' or ')' closing an interval")
        self.next()
        return LInterval(Interval(lo, hi))

    def state(self):
        self.expect("(")
        bindings = []
        while True:
            kind, name, _ = self.next()
            if kind != "ident":
                self.fail("expected a variable name in state literal")
            self.expect("=")
            bindings.append((name, self.signed_int()))
            if self.peek()[1] == ",":
                self.next()
                continue
            self.expect(")")
            return LState(tuple(bindings))

    def set_lit(self):
        self.expect("{")
        items = []
        while self.peek()[1] != "}":
            items.append(self.value())
            if self.peek()[1] == ",":
                self.next()
            elif self.peek()[1] != "}":
                self.fail("expected ',' or '}' in set literal")
        self.next()
        return LSet(tuple(items))


def read_literal(text: str):
    reader = _Reader(text)
    tree = reader.value()
    if reader.peek()[0] != "eof":
        reader.fail(f"unexpected {reader.peek()[1]!r} after value literal")
    return tree
