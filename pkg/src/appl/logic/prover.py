"""Derivations of strongest postconditions.

When the semantics is compositional on every element (trivial basis, or an
additive domain such as the collecting one) the tree follows the command
and needs no (join). Otherwise the precondition is first split into the
basis elements below it with a (join), each branch is built on a basis
element, and every sequential composition splits its midpoint again.

Stars become (iter) nodes over the iterates h, f(h), f(f(h)), ... until they
repeat; the repeating part is folded into a constant tail.
"""

from __future__ import annotations

from ..errors import StarDidNotStabilize
from ..monoid import EventuallyPeriodic, oplus
from ..order import BasisKind, basis_below, combine
from ..regcmd import Choice, Elc, Seq, Star
from ..semantics import EvalContext, Exactness, sem_eval
from .checker import atom_post
from .triple import DerivationNode


def compositional(dom) -> bool:
    return dom.basis_kind is BasisKind.TRIVIAL or dom.flags.additive_semantics


class _Prover:
    def __init__(self, ctx: EvalContext):
        self.ctx = ctx
        self.dom = ctx.domain
        self.flat = compositional(self.dom)

    def eq(self, a, b) -> bool:
        return self.dom.leq(a, b) and self.dom.leq(b, a)

    # a node for {d} r {...} on an arbitrary element d
    def on_element(self, r, d) -> DerivationNode:
        if self.flat:
            return self.structural(r, d)
        return self.split(r, d)

    def split(self, r, d) -> DerivationNode:
        lat = self.dom.lattice
        below = basis_below(d, lat)
        kids = [self.on_basis(r, b) for b in below]
        # bottom adds nothing when its branch is below the others
        if len(below) > 1:
            rest = [(b, k) for b, k in zip(below, kids) if b != lat.bot]
            low = [k for b, k in zip(below, kids) if b == lat.bot]
            rest_post = combine("join", [k.post for _, k in rest], lat)
            if rest and all(lat.leq(k.post, rest_post) for k in low):
                below = [b for b, _ in rest]
                kids = [k for _, k in rest]
        posts = [k.post for k in kids]
        return DerivationNode(
            "join",
            d,
            r,
            combine("join", posts, lat),
            kids,
            {"cover": list(below), "posts": posts},
        )

    def on_basis(self, r, b) -> DerivationNode:
        dom = self.dom
        if isinstance(r, Elc):
            return DerivationNode("basic", b, r, atom_post(dom, r.atom, b))
        if isinstance(r, Choice):
            k1, k2 = self.on_basis(r.left, b), self.on_basis(r.right, b)
            post = dom.monoid.oplus_pair(k1.post, k2.post)
            return DerivationNode("choice", b, r, post, [k1, k2], {"k1": k1.post, "k2": k2.post})
        if isinstance(r, Seq):
            first = self.on_basis(r.left, b)
            second = self.split(r.right, first.post)
            return DerivationNode("seq", b, r, second.post, [first, second], {"mid": first.post})
        if isinstance(r, Star):
            return self.iterate(r, b)
        raise TypeError(r)

    def structural(self, r, d) -> DerivationNode:
        dom = self.dom
        if isinstance(r, Elc):
            return DerivationNode("basic", d, r, atom_post(dom, r.atom, d))
        if isinstance(r, Choice):
            k1, k2 = self.structural(r.left, d), self.structural(r.right, d)
            post = dom.monoid.oplus_pair(k1.post, k2.post)
            return DerivationNode("choice", d, r, post, [k1, k2], {"k1": k1.post, "k2": k2.post})
        if isinstance(r, Seq):
            first = self.structural(r.left, d)
            second = self.structural(r.right, first.post)
            return DerivationNode("seq", d, r, second.post, [first, second], {"mid": first.post})
        if isinstance(r, Star):
            return self.iterate(r, d)
        raise TypeError(r)

    def cons(self, node: DerivationNode, post) -> DerivationNode:
        if self.eq(node.post, post):
            return node
        return DerivationNode("cons", node.pre, node.cmd, post, [node], {"pre": node.pre, "post": node.post})

    def iterate(self, r: Star, h0) -> DerivationNode:
        dom, lat, mon = self.dom, self.dom.lattice, self.dom.monoid
        hs, nodes = [h0], []
        seen = {h0: 0}
        for _ in range(self.ctx.star_budget):
            node = self.on_element(r.body, hs[-1])
            nxt = node.post
            nodes.append(node)
            if nxt in seen:
                mu = seen[nxt]
                break
            seen[nxt] = len(hs)
            hs.append(nxt)
        else:
            raise StarDidNotStabilize(f"iterates of {r} did not repeat; no finite (iter) family")
        cycle = hs[mu:]
        # a constant tail standing for the repeating part
        candidates = [combine("join", cycle, lat) if mon.equals_lattice_join else None, mon.neutral]
        if len(cycle) == 1:
            candidates.insert(0, cycle[0])
        for tail in candidates:
            if tail is None:
                continue
            last = nodes[-1]
            if not lat.leq(last.post, tail):
                continue
            tail_node = self.on_element(r.body, tail)
            if not lat.leq(tail_node.post, tail):
                continue
            family = hs + [tail]
            premises = nodes[:-1] + [self.cons(last, tail), self.cons(tail_node, tail)]
            total = oplus(EventuallyPeriodic(tuple(family[:-1]), (tail,)), mon)
            return DerivationNode("iter", h0, r, total, premises, {"hs": family})
        raise StarDidNotStabilize(f"no invariant tail closes the iterates of {r}")


def derive_strongest_post(r, pre, ctx: EvalContext) -> DerivationNode:
    """A derivation of {pre} r {sem(r) pre}. If the construction can only
    reach an over-approximation, the root payload carries a "note"."""
    prover = _Prover(ctx)
    node = prover.on_element(r, pre)
    want, flag = sem_eval(r, pre, ctx)
    if flag is Exactness.EXACT and not prover.eq(node.post, want):
        shown = ctx.domain.show
        node.payload["note"] = f"derived post {shown(node.post)} is above the strongest post {shown(want)}"
    return node


def with_post(node: DerivationNode, post) -> DerivationNode:
    """Wrap a derivation in (cons) so that it proves the given post."""
    return DerivationNode("cons", node.pre, node.cmd, post, [node], {"pre": node.pre, "post": node.post})
