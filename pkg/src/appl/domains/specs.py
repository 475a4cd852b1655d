"""Textual domain specifications, e.g. ``hyper(collecting(x:0..2))``."""

from __future__ import annotations

from ..errors import DomainSpecError
from .base import DomainDescriptor
from .downclosed import downclosed_domain
from .galois import GiBundle, interval_gi, trivial_top_gi
from .hyper import EXPLICIT_TOP_LIMIT, hyper_domain, powerset_elements
from .interval import interval_domain
from .pointwise import pointwise_domain
from .powerset import collecting, incorrectness
from .product import product_domain
from .space import parse_space

DOMAIN_FORMS = (
    "collecting(SPACE)",
    "incorrectness(SPACE)",
    "interval(simple) | interval(irreducible)",
    "hyper(collecting(SPACE)) | hyper(interval)",
    "downclosed(hyper(interval))",
    "pointwise(GI)",
    "product(GI)",
)
GI_FORMS = ("interval-over-powerset(SPACE)", "trivial-top(SPACE)")

_ALIASES = {
    "interval:simple": "interval(simple)",
    "interval:irreducible": "interval(irreducible)",
    "interval": "interval(simple)",
}


def split_call(text: str) -> tuple:
    """'name(arg)' -> ('name', 'arg'); a bare word gives (word, None)."""
    t = text.strip()
    if "(" not in t:
        return t, None
    head, rest = t.split("(", 1)
    if not rest.endswith(")"):
        raise DomainSpecError(f"unbalanced parentheses in {text!r}")
    depth = 0
    for ch in rest[:-1]:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth < 0:
            raise DomainSpecError(f"unbalanced parentheses in {text!r}")
    if depth:
        raise DomainSpecError(f"unbalanced parentheses in {text!r}")
    return head.strip(), rest[:-1].strip()


def make_gi(spec: str) -> GiBundle:
    name, arg = split_call(spec)
    if arg is None:
        raise DomainSpecError(f"unknown Galois insertion {spec!r}; expected one of {', '.join(GI_FORMS)}")
    if name == "interval-over-powerset":
        try:
            return interval_gi(parse_space(arg))
        except ValueError as exc:
            raise DomainSpecError(str(exc)) from None
    if name == "trivial-top":
        return trivial_top_gi(parse_space(arg))
    raise DomainSpecError(f"unknown Galois insertion {spec!r}; expected one of {', '.join(GI_FORMS)}")


def make_domain(spec: str) -> DomainDescriptor:
    text = _ALIASES.get(spec.strip(), spec.strip())
    name, arg = split_call(text)
    if name in ("collecting", "incorrectness") and arg:
        space = parse_space(arg)
        return collecting(space) if name == "collecting" else incorrectness(space)
    if name == "interval" and arg in ("simple", "irreducible"):
        return interval_domain(arg == "irreducible")
    if name == "hyper" and arg:
        base = make_domain(arg)
        if base.spec.startswith("collecting("):
            sigma = base.lattice.top
            top = powerset_elements(sigma) if 2 ** len(sigma) <= EXPLICIT_TOP_LIMIT else None
            return hyper_domain(base, top, name=f"hyper({base.spec})")
        if base.spec.startswith("interval("):
            return hyper_domain(base, name=f"hyper({base.spec})")
        raise DomainSpecError(f"hyper needs a collecting or interval base, not {arg!r}")
    if name == "downclosed" and arg:
        inner = make_domain(arg)
        if not inner.spec.startswith("hyper(interval"):
            raise DomainSpecError("downclosed is only supported over hyper(interval)")
        return downclosed_domain(inner)
    if name == "pointwise" and arg:
        return pointwise_domain(make_gi(arg))
    if name == "product" and arg:
        return product_domain(make_gi(arg))
    raise DomainSpecError(f"unknown domain {spec!r}; expected one of: {'; '.join(DOMAIN_FORMS)}")
