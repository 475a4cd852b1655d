"""Triples, derivations, checking, strongest-post proofs and BCA certification."""

from .bca import BcaResult, certify_bca
from .checker import check_derivation, check_script, check_validity, elaborate, load_script
from .prover import derive_strongest_post, with_post
from .script import format_script, parse_script
from .triple import CheckReport, DerivationNode, Triple, ValidityResult

__all__ = [
    "BcaResult",
    "CheckReport",
    "DerivationNode",
    "Triple",
    "ValidityResult",
    "certify_bca",
    "check_derivation",
    "check_script",
    "check_validity",
    "derive_strongest_post",
    "elaborate",
    "format_script",
    "load_script",
    "parse_script",
    "with_post",
]
