"""The interpretation monoid bundle consumed by the semantics and the logic."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from ..monoid import MonoidDescriptor
from ..order import BasisKind, LatticeDescriptor
from ..regcmd import ElcAtom


@dataclass(frozen=True)
class DomainFlags:
    dense_fast_path: bool = False
    oplus_idempotent: bool = False
    equals_lattice_join: bool = False
    reflects_density: bool = False
    additive_semantics: bool = False


@dataclass(frozen=True)
class DomainDescriptor:
    """A lattice, a pointed basis, a sum and the meaning of each atom.

    ``transfer`` gives the basis semantics of an atom on a basis element;
    ``transfer_full`` is its exact join extension in closed form, so that
    checking (basic) premises never needs a basis enumeration.
    """

    spec: str
    lattice: LatticeDescriptor
    monoid: MonoidDescriptor
    transfer: Callable[[ElcAtom, Any], Any]
    transfer_full: Callable[[ElcAtom, Any], Any]
    flags: DomainFlags
    variables: tuple
    parse_value: Callable[[str], Any]
    format_value: Callable[[Any], str]
    # closed-form full semantics (r, d, ctx) -> value, used when the domain provides one
    full_sem: Optional[Callable] = field(default=None, compare=False)
    # "singletons" for the irreducible interval basis, "interval" for the trivial one
    widening: Optional[str] = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def basis_kind(self) -> BasisKind:
        return self.lattice.basis_kind

    def leq(self, a, b) -> bool:
        return self.lattice.leq(a, b)

    def show(self, value) -> str:
        return self.format_value(value)
