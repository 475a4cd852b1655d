from __future__ import annotations

import pytest

from appl.domains import make_domain
from appl.domains.interval import EMPTY, Interval
from appl.errors import ApplError
from appl.monoid import ConstantInfinite, EventuallyPeriodic, Finite, check_monoid_laws, oplus
from appl.order import SamplePlan

from test_order import SPECS


@pytest.mark.parametrize("spec", SPECS)
def test_monoid_laws(spec):
    dom = make_domain(spec)
    report = check_monoid_laws(dom.monoid, dom.lattice, SamplePlan(samples=200))
    assert report.passed, [(e.name, e.counterexample) for e in report.failures()]
    assert all(e.checked == 200 for e in report.entries if e.name in ("associativity", "distributivity"))


def test_families():
    dom = make_domain("interval(simple)")
    mon = dom.monoid
    assert oplus(Finite(()), mon) == EMPTY
    assert oplus(Finite((Interval(0, 0), Interval(3, 4))), mon) == Interval(0, 4)
    assert oplus(ConstantInfinite(Interval(1, 2)), mon) == Interval(1, 2)
    fam = EventuallyPeriodic((Interval(0, 0),), (Interval(5, 5), Interval(7, 7)))
    assert oplus(fam, mon) == Interval(0, 7)


def test_hyper_sum_selects_one_member_from_each_side():
    dom = make_domain("hyper(collecting(x:0..3))")
    a, b = dom.parse_value("{{0},{2}}"), dom.parse_value("{{1}}")
    assert dom.show(dom.monoid.oplus_pair(a, b)) == "{{0,1}, {1,2}}"


def test_incorrectness_sum_is_union_not_join():
    dom = make_domain("incorrectness(x:0..3)")
    a, b = dom.parse_value("{0}"), dom.parse_value("{1}")
    assert dom.monoid.oplus_pair(a, b) == frozenset({(0,), (1,)})
    assert dom.lattice.join2(a, b) == frozenset()


def test_unknown_family_kind():
    with pytest.raises((TypeError, ApplError)):
        oplus([1, 2], make_domain("interval(simple)").monoid)
