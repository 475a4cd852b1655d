"""Regular commands over a closed catalog of elementary commands."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .errors import ParseError

# ---------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Shift:
    """``var + offset`` (offset may be zero or negative)."""

    var: str
    offset: int = 0

    def __str__(self):
        if self.offset == 0:
            return self.var
        sign = "+" if self.offset > 0 else "-"
        return f"{self.var}{sign}{abs(self.offset)}"


@dataclass(frozen=True)
class Neg:
    var: str

    def __str__(self):
        return f"-{self.var}"


AExp = Union[Const, Shift, Neg]

CMP_OPS = ("<=", ">=", "<>", "<", ">", "=")


@dataclass(frozen=True)
class Cmp:
    var: str
    op: str
    const: int

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise ValueError(f"unknown comparison {self.op!r}")

    def __str__(self):
        return f"{self.var}{self.op}{self.const}"


@dataclass(frozen=True)
class Mod:
    var: str
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be at least 1")

    def __str__(self):
        return f"{self.var} mod {self.modulus}={self.residue}"


@dataclass(frozen=True)
class Not:
    arg: "BExp"

    def __str__(self):
        return f"!{self.arg}"


BExp = Union[Cmp, Mod, Not]


def holds(b: BExp, value: int) -> bool:
    """Truth of a single-variable test at a given value of its variable."""
    if isinstance(b, Not):
        return not holds(b.arg, value)
    if isinstance(b, Mod):
        return value % b.modulus == b.residue % b.modulus
    c = b.const
    return {
        "<": value < c,
        "<=": value <= c,
        "=": value == c,
        "<>": value != c,
        ">=": value >= c,
        ">": value > c,
    }[b.op]


def bexp_var(b: BExp) -> str:
    while isinstance(b, Not):
        b = b.arg
    return b.var


def negate(b: BExp) -> BExp:
    return Not(b)


# ---------------------------------------------------------------- atoms


@dataclass(frozen=True)
class Skip:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Diverge:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Assign:
    var: str
    exp: AExp

    def __str__(self):
        # a bare right-hand variable would absorb a following "+ k" on reparse
        if isinstance(self.exp, Shift) and self.exp.offset == 0:
            return f"{self.var}:={self.exp.var}+0"
        return f"{self.var}:={self.exp}"


@dataclass(frozen=True)
class Filter:
    test: BExp

    def __str__(self):
        return f"({self.test}?)"


ElcAtom = Union[Skip, Diverge, Assign, Filter]

# ---------------------------------------------------------------- commands


@dataclass(frozen=True)
class Elc:
    atom: ElcAtom


@dataclass(frozen=True)
class Seq:
    left: "RegCmd"
    right: "RegCmd"


@dataclass(frozen=True)
class Choice:
    left: "RegCmd"
    right: "RegCmd"


@dataclass(frozen=True)
class Star:
    body: "RegCmd"


RegCmd = Union[Elc, Seq, Choice, Star]

SKIP = Elc(Skip())
DIVERGE = Elc(Diverge())


def power(r: RegCmd, i: int) -> RegCmd:
    """r^0 = 1 and r^(i+1) = r ; r^i."""
    if i < 0:
        raise ValueError("power needs a natural exponent")
    result: RegCmd = SKIP
    for _ in range(i):
        result = Seq(r, result)
    return result


def atoms(r: RegCmd) -> Iterator[ElcAtom]:
    if isinstance(r, Elc):
        yield r.atom
    elif isinstance(r, Star):
        yield from atoms(r.body)
    else:
        yield from atoms(r.left)
        yield from atoms(r.right)


def variables(r: RegCmd) -> set:
    found = set()
    for a in atoms(r):
        if isinstance(a, Assign):
            found.add(a.var)
            if not isinstance(a.exp, Const):
                found.add(a.exp.var)
        elif isinstance(a, Filter):
            found.add(bexp_var(a.test))
    return found


def has_star(r: RegCmd) -> bool:
    if isinstance(r, Star):
        return True
    if isinstance(r, Elc):
        return False
    return has_star(r.left) or has_star(r.right)


def depth(r: RegCmd) -> int:
    if isinstance(r, Elc):
        return 0
    if isinstance(r, Star):
        return 1 + depth(r.body)
    return 1 + max(depth(r.left), depth(r.right))


# ---------------------------------------------------------------- printing

_PREC = {Choice: 0, Seq: 1, Star: 2, Elc: 3}


def pretty(r: RegCmd) -> str:
    """Concrete syntax accepted back by :func:`parse_cmd`."""
    return _pp(r, 0)


def _pp(r: RegCmd, ctx: int) -> str:
    if isinstance(r, Elc):
        text = str(r.atom)
        if ctx >= 2 and isinstance(r.atom, Assign):
            return f"({text})"
        return text
    if isinstance(r, Star):
        text = _pp(r.body, 2) + "*"
    elif isinstance(r, Seq):
        # both operators group to the left; a right operand of the same kind
        # keeps its parentheses, since ; is not associative in every domain
        right = _pp(r.right, 2) if isinstance(r.right, Seq) else _pp(r.right, 1)
        text = _pp(r.left, 1) + ";" + right
    else:
        right = _pp(r.right, 1) if isinstance(r.right, Choice) else _pp(r.right, 0)
        text = _pp(r.left, 0) + " + " + right
    if _PREC[type(r)] < ctx:
        return f"({text})"
    return text


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>:=|<=|>=|<>|!=|[<>=!?;+\-*()])"
)
KEYWORDS = {"if", "then", "else", "while", "do", "assert", "mod", "inc", "dec"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "ident" and chunk in KEYWORDS:
                kind = "kw"
            if chunk == "!=":
                chunk = "<>"
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, declared: Optional[Iterable[str]]):
        self.toks = tokenize(text)
        self.i = 0
        self.declared = None if declared is None else set(declared)

    # helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind in ("ident", "int"):
            self.fail(f"expected {text!r} but found {tok.text or 'end of input'!r}")
        return self.next()

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected a variable but found {tok.text or 'end of input'!r}")
        self.next()
        if self.declared is not None and tok.text not in self.declared:
            self.fail(f"undeclared variable {tok.text!r}", tok)
        return tok.text

    def integer(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.peek()
        if tok.kind != "int":
            self.fail(f"expected an integer but found {tok.text or 'end of input'!r}")
        self.next()
        return sign * int(tok.text)

    # grammar
    def cmd(self) -> RegCmd:
        left = self.term()
        while self.peek().text == "+" and self.peek().kind == "op":
            self.next()
            left = Choice(left, self.term())
        return left

    def term(self) -> RegCmd:
        left = self.factor()
        while self.peek().text == ";":
            self.next()
            left = Seq(left, self.factor())
        return left

    def factor(self) -> RegCmd:
        base = self.base()
        while self.peek().text == "*":
            self.next()
            base = Star(base)
        return base

    def base(self) -> RegCmd:
        tok = self.peek()
        if tok.kind == "int" and tok.text in ("0", "1"):
            self.next()
            return DIVERGE if tok.text == "0" else SKIP
        if tok.text == "(":
            self.next()
            inner = self.cmd()
            self.expect(")")
            return inner
        if tok.kind == "kw":
            if tok.text == "if":
                self.next()
                b = self.bexp()
                self.expect("then")
                r1 = self.cmd()
                self.expect("else")
                r2 = self.cmd()
                return Choice(Seq(Elc(Filter(b)), r1), Seq(Elc(Filter(negate(b))), r2))
            if tok.text == "while":
                self.next()
                b = self.bexp()
                self.expect("do")
                body = self.cmd()
                return Seq(Star(Seq(Elc(Filter(b)), body)), Elc(Filter(negate(b))))
            if tok.text == "assert":
                self.next()
                self.expect("(")
                b = self.bexp()
                self.expect(")")
                return Elc(Filter(b))
            if tok.text in ("inc", "dec"):
                self.next()
                var = self.ident()
                return Elc(Assign(var, Shift(var, 1 if tok.text == "inc" else -1)))
        if tok.kind == "ident" and self.peek(1).text == ":=":
            var = self.ident()
            self.next()
            return Elc(Assign(var, self.aexp()))
        if tok.kind == "ident" or tok.text == "!":
            b = self.bexp()
            self.expect("?")
            return Elc(Filter(b))
        self.fail(f"unexpected {tok.text or 'end of input'!r}")

    def aexp(self) -> AExp:
        tok = self.peek()
        if tok.text == "-":
            if self.peek(1).kind == "ident":
                self.next()
                return Neg(self.ident())
            return Const(self.integer())
        if tok.kind == "int":
            return Const(self.integer())
        var = self.ident()
        nxt = self.peek()
        if nxt.text in ("+", "-") and self.peek(1).kind == "int":
            self.next()
            k = int(self.next().text)
            return Shift(var, k if nxt.text == "+" else -k)
        return Shift(var, 0)

    def bexp(self) -> BExp:
        if self.peek().text == "!":
            self.next()
            return Not(self.bexp())
        var = self.ident()
        tok = self.peek()
        if tok.text == "mod":
            self.next()
            m = self.integer()
            if m < 1:
                self.fail("modulus must be at least 1", tok)
            self.expect("=")
            return Mod(var, m, self.integer())
        if tok.text in CMP_OPS:
            self.next()
            return Cmp(var, tok.text, self.integer())
        self.fail(f"expected a comparison after {var!r}")


def parse_cmd(text: str, vars: Optional[Iterable[str]] = None) -> RegCmd:
    """Parse program text, eliminating if/while/assert sugar."""
    p = _Parser(text, vars)
    result = p.cmd()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r} after command")
    return result
