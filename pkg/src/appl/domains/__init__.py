"""Interpretation monoids: lattices with a basis, a sum and atom transfers."""

from .base import DomainDescriptor, DomainFlags
from .galois import GiBundle, bca_lift, identity_gi, interval_gi, trivial_top_gi
from .specs import make_domain, make_gi

__all__ = [
    "DomainDescriptor",
    "DomainFlags",
    "GiBundle",
    "bca_lift",
    "identity_gi",
    "interval_gi",
    "make_domain",
    "make_gi",
    "trivial_top_gi",
]
