"""Certifying best correct approximations through the product domain.

For a Galois insertion from state sets to A, a derivation of
{<gamma(a), a>} r {<c', a'>} in the product domain with alpha(c') = a'
shows that a' is the best correct approximation of r at a.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..domains.galois import GiBundle
from ..domains.product import Pair, product_domain
from ..semantics import EvalContext
from .checker import check_derivation
from .prover import derive_strongest_post
from .triple import CheckReport, DerivationNode, Triple


@dataclass
class BcaResult:
    certified: bool
    value: object  # a' when certified
    value_text: str
    triple: str
    reason: str = ""
    derivation: Optional[DerivationNode] = None
    report: Optional[CheckReport] = None


def certify_bca(r, a, bundle: GiBundle, ctx: Optional[EvalContext] = None) -> BcaResult:
    dom = product_domain(bundle)
    gi = bundle.gi
    absd = bundle.abstract
    ctx = ctx or EvalContext(dom)
    if ctx.domain is not dom:
        ctx = ctx.derive(dom)
    pre = Pair(gi.gamma(a), a)
    proof = derive_strongest_post(r, pre, ctx)
    report = check_derivation(proof, dom)
    post: Pair = proof.post
    text = Triple(dom, pre, r, post).show()
    if not report.accepted:
        return BcaResult(False, None, "", text, f"derivation rejected at {report.path}: {report.condition}", proof, report)
    best = gi.alpha(post.c)
    if best != post.a:
        reason = (
            f"the abstract semantics gives {absd.show(post.a)} but the concrete states reach only "
            f"{absd.show(best)}; every valid post <c', a'> has alpha(c') below {absd.show(best)} "
            f"and a' above {absd.show(post.a)}, so none has alpha(c') = a'"
        )
        return BcaResult(False, None, "", text, reason, proof, report)
    return BcaResult(True, post.a, absd.show(post.a), text, "", proof, report)
