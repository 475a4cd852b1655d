from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from appl.errors import ParseError
from appl.laws import random_program
from appl.regcmd import (
    DIVERGE,
    SKIP,
    Assign,
    Choice,
    Cmp,
    Elc,
    Filter,
    Seq,
    Shift,
    Star,
    depth,
    parse_cmd,
    power,
    pretty,
)

PROGRAMS = [
    "(x<>0?);(x=0?)",
    "(inc x + dec x);(x=0?)",
    "(inc x;(x=0?)) + (dec x;(x=0?))",
    "((x>0?);dec x + (x<1000?);inc x)*",
    "1 + x:=x+1",
    "((x mod 2 = 1?);x:=x-2 + x:=x+2)*",
    "((x=1?);x:=x-2 + x:=x+2)*",
    "((x=1?); x:=x-2) + (x:=x+2)",
    "while x<10 do x:=x+1",
    "if x>0 then x:=x-1 else 1",
    "assert(x>=0)",
    "0 + 1*",
    "x:=-x; x:=5",
    "!x mod 2 = 0?",
]


@pytest.mark.parametrize("text", PROGRAMS)
def test_pretty_parse_round_trip(text):
    r = parse_cmd(text)
    assert parse_cmd(pretty(r)) == r


def test_guarded_choice_parses_as_expected():
    r = parse_cmd("((x=1?); x:=x-2) + (x:=x+2)")
    assert r == Choice(
        Seq(Elc(Filter(Cmp("x", "=", 1))), Elc(Assign("x", Shift("x", -2)))),
        Elc(Assign("x", Shift("x", 2))),
    )


def test_sugar():
    assert parse_cmd("inc x") == parse_cmd("x:=x+1")
    assert parse_cmd("dec x") == parse_cmd("x:=x-1")
    assert isinstance(parse_cmd("while x<3 do inc x"), Seq)
    assert isinstance(parse_cmd("while x<3 do inc x").left, Star)


def test_precedence():
    r = parse_cmd("1 + x:=1; x:=2*")
    assert isinstance(r, Choice)
    assert isinstance(r.right, Seq)
    assert isinstance(r.right.right, Star)


def test_power_and_depth():
    r = parse_cmd("inc x")
    assert power(r, 0) == parse_cmd("1")
    assert depth(parse_cmd("(inc x + dec x)*")) == 2


@pytest.mark.parametrize("bad", ["x:=", "(x<1?", "x:=x*2", "y+", "x mod 0 = 1?", ""])
def test_parse_errors_carry_positions(bad):
    with pytest.raises(ParseError) as exc:
        parse_cmd(bad)
    assert exc.value.line >= 1 and exc.value.column >= 1


def test_undeclared_variable():
    with pytest.raises(ParseError):
        parse_cmd("y:=1", ["x"])


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_random_programs_round_trip(seed, d):
    r = random_program(random.Random(seed), d)
    assert parse_cmd(pretty(r)) == r


def test_identity_assignment_keeps_choice_on_reparse():
    r = Choice(Elc(Assign("x", Shift("x", 0))), Seq(SKIP, DIVERGE))
    assert pretty(r) == "x:=x+0 + 1;0"
    assert parse_cmd(pretty(r)) == r
