from __future__ import annotations

import random
import re

from appl.domains import make_domain
from appl.laws import random_program
from appl.logic import Triple, check_derivation, check_script, check_validity, derive_strongest_post, format_script, with_post
from appl.semantics import EvalContext

SPEC = "collecting(x:0..2)"
INSTANCES = 500
SET_LITERAL = re.compile(r"\{([^{}]+)\}")


def random_instance(rng: random.Random, dom, ctx):
    r = random_program(rng, rng.randint(0, 3))
    pre = dom.lattice.sample(rng)
    sp = derive_strongest_post(r, pre, ctx).post
    if rng.random() < 0.5:
        post = dom.lattice.join2(sp, dom.lattice.sample(rng))
    else:
        post = dom.lattice.sample(rng)
    return r, pre, post


def derivable(dom, ctx, r, pre, post) -> bool:
    node = with_post(derive_strongest_post(r, pre, ctx), post)
    return check_derivation(node, dom).accepted


def drop_one_element(text: str, rng: random.Random):
    """Remove one state from one non-empty set literal inside the proof."""
    start = text.index("(proof")
    hits = [m for m in SET_LITERAL.finditer(text, start)]
    if not hits:
        return None
    m = rng.choice(hits)
    members = m.group(1).split(",")
    members.pop(rng.randrange(len(members)))
    lit = "{" + ",".join(members) + "}" if members else "empty"
    return text[: m.start()] + lit + text[m.end():]


def test_validity_iff_derivable():
    dom = make_domain(SPEC)
    ctx = EvalContext(dom)
    rng = random.Random(11)
    counts = {True: 0, False: 0}
    for _ in range(INSTANCES):
        r, pre, post = random_instance(rng, dom, ctx)
        valid = check_validity(Triple(dom, pre, r, post), ctx).valid
        assert valid == derivable(dom, ctx, r, pre, post), (r, pre, post)
        counts[valid] += 1
    # both sides of the equivalence are exercised
    assert min(counts.values()) >= 100


def test_mutated_derivations_are_rejected():
    dom = make_domain(SPEC)
    ctx = EvalContext(dom)
    rng = random.Random(12)
    mutants = 0
    while mutants < INSTANCES:
        r, pre, post = random_instance(rng, dom, ctx)
        if not check_validity(Triple(dom, pre, r, post), ctx).valid:
            continue
        node = with_post(derive_strongest_post(r, pre, ctx), post)
        text = format_script(Triple(dom, pre, r, post), node)
        assert check_script(text).accepted
        bad = drop_one_element(text, rng)
        if bad is None:
            continue
        rep = check_script(bad)
        assert not rep.accepted, bad
        assert any(not t.ok for t in rep.traces)
        mutants += 1


def test_weakened_root_post_is_rejected():
    dom = make_domain(SPEC)
    ctx = EvalContext(dom)
    rng = random.Random(13)
    seen = 0
    while seen < 100:
        r, pre, _ = random_instance(rng, dom, ctx)
        node = derive_strongest_post(r, pre, ctx)
        sp = node.post
        if not sp:
            continue
        smaller = frozenset(sorted(sp)[1:])
        rep = check_derivation(with_post(node, smaller), dom)
        assert not rep.accepted and rep.condition == "cons-post"
        seen += 1
