"""Validity of triples and checking of derivations, rule by rule."""

from __future__ import annotations

from typing import Optional

from ..domains.base import DomainDescriptor
from ..domains.galois import bca_lift
from ..domains.specs import make_domain, make_gi
from ..errors import ApplError, DerivationShapeError, DomainSpecError, ParseError
from ..monoid import EventuallyPeriodic, oplus
from ..order import combine, is_dense
from ..regcmd import Choice, Diverge, Elc, Seq, Skip, Star, parse_cmd, pretty
from ..semantics import EvalContext, Exactness, sem_eval
from .script import NodeSyntax, Script, parse_script
from .triple import CheckReport, Condition, DerivationNode, NodeTrace, Triple, ValidityResult

# rule -> the command constructor it applies to (None: any command)
RULE_SHAPE = {
    "basic": Elc,
    "seq": Seq,
    "choice": Choice,
    "iter": Star,
    "rec": Star,
    "inv": Star,
    "cons": None,
    "join": None,
    "meet": None,
}


# ---------------------------------------------------------------- validity


def check_validity(t: Triple, ctx: Optional[EvalContext] = None) -> ValidityResult:
    ctx = ctx or EvalContext(t.domain)
    value, flag = sem_eval(t.cmd, t.pre, ctx)
    dom = t.domain
    if flag is not Exactness.EXACT:
        verdict = "inconclusive"
    else:
        verdict = "valid" if dom.leq(value, t.post) else "invalid"
    return ValidityResult(verdict, t.show(), value, dom.show(value), str(flag))


# ---------------------------------------------------------------- elaboration


def _value(dom: DomainDescriptor, text: str, syn: Optional[NodeSyntax], what: str):
    try:
        return dom.parse_value(text)
    except ParseError as exc:
        line, col = (syn.line, syn.column) if syn else (1, 1)
        raise ParseError(f"in {what} {text!r}: {exc.reason}", line, col) from None
    except (ApplError, ValueError) as exc:
        line, col = (syn.line, syn.column) if syn else (1, 1)
        raise ParseError(f"in {what} {text!r}: {exc}", line, col) from None


def _need(syn: NodeSyntax, key: str) -> str:
    v = syn.arg(key)
    if v is None:
        raise DerivationShapeError(f"({syn.rule}) at line {syn.line} needs {key}")
    return v


def _arity(syn: NodeSyntax, n: int):
    if len(syn.children) != n:
        raise DerivationShapeError(
            f"({syn.rule}) at line {syn.line} needs {n} premise(s), got {len(syn.children)}"
        )


def elaborate(syn: NodeSyntax, pre, cmd, post, dom: DomainDescriptor) -> DerivationNode:
    """Attach the pre/post/command each premise must prove."""
    node = DerivationNode(syn.rule, pre, cmd, post)
    shape = RULE_SHAPE[syn.rule]
    if shape is not None and not isinstance(cmd, shape):
        node.shape_error = f"({syn.rule}) does not apply to {pretty(cmd)}"
        return node
    val = lambda key: _value(dom, _need(syn, key), syn, key)  # noqa: E731
    vals = lambda key: [_value(dom, t, syn, key) for t in syn.args.get(key, [])]  # noqa: E731
    kids = syn.children
    p = node.payload
    if syn.rule == "basic":
        _arity(syn, 0)
    elif syn.rule == "seq":
        _arity(syn, 2)
        p["mid"] = val(":mid")
        node.children = [
            elaborate(kids[0], pre, cmd.left, p["mid"], dom),
            elaborate(kids[1], p["mid"], cmd.right, post, dom),
        ]
    elif syn.rule == "cons":
        _arity(syn, 1)
        p["pre"], p["post"] = val(":pre"), val(":post")
        node.children = [elaborate(kids[0], p["pre"], cmd, p["post"], dom)]
    elif syn.rule == "choice":
        _arity(syn, 2)
        p["k1"], p["k2"] = val(":k1"), val(":k2")
        node.children = [
            elaborate(kids[0], pre, cmd.left, p["k1"], dom),
            elaborate(kids[1], pre, cmd.right, p["k2"], dom),
        ]
    elif syn.rule == "iter":
        hs = vals(":h")
        if not hs:
            raise DerivationShapeError(f"(iter) at line {syn.line} needs at least one :h")
        _arity(syn, len(hs))
        p["hs"] = hs
        nxt = hs[1:] + [hs[-1]]
        node.children = [elaborate(k, h, cmd.body, h2, dom) for k, h, h2 in zip(kids, hs, nxt)]
    elif syn.rule == "rec":
        _arity(syn, 2)
        p["kp"], p["l"] = val(":kp"), val(":l")
        node.children = [
            elaborate(kids[0], pre, cmd.body, p["kp"], dom),
            elaborate(kids[1], p["kp"], cmd, p["l"], dom),
        ]
    elif syn.rule == "inv":
        _arity(syn, 1)
        p["kp"] = val(":kp")
        node.children = [elaborate(kids[0], pre, cmd.body, p["kp"], dom)]
    elif syn.rule in ("join", "meet"):
        key = ":cover" if syn.rule == "join" else ":fam"
        fam = vals(key)
        if not fam:
            raise DerivationShapeError(f"({syn.rule}) at line {syn.line} needs a non-empty {key}")
        _arity(syn, len(fam))
        posts = vals(":posts") or [post] * len(fam)
        if len(posts) != len(fam):
            raise DerivationShapeError(f"({syn.rule}) at line {syn.line}: :posts and {key} differ in length")
        p[key[1:]] = fam
        p["posts"] = posts
        node.children = [elaborate(k, h, cmd, q, dom) for k, h, q in zip(kids, fam, posts)]
    return node


# ---------------------------------------------------------------- checking


def atom_post(dom: DomainDescriptor, e, d):
    """Exact full semantics of one atom, in closed form."""
    if isinstance(e, Diverge):
        return dom.monoid.neutral
    if isinstance(e, Skip):
        return d
    return dom.transfer_full(e, d)


def expected_premises(node: DerivationNode, dom: DomainDescriptor) -> list:
    """(pre, cmd, post) each premise must prove, from the node and its payload."""
    p, r = node.payload, node.cmd
    rule = node.rule
    if rule == "seq":
        return [(node.pre, r.left, p["mid"]), (p["mid"], r.right, node.post)]
    if rule == "cons":
        return [(p["pre"], r, p["post"])]
    if rule == "choice":
        return [(node.pre, r.left, p["k1"]), (node.pre, r.right, p["k2"])]
    if rule == "iter":
        hs = p["hs"]
        return [(h, r.body, h2) for h, h2 in zip(hs, hs[1:] + [hs[-1]])]
    if rule == "rec":
        return [(node.pre, r.body, p["kp"]), (p["kp"], r, p["l"])]
    if rule == "inv":
        return [(node.pre, r.body, p["kp"])]
    if rule in ("join", "meet"):
        fam = p["cover"] if rule == "join" else p["fam"]
        return [(h, r, k) for h, k in zip(fam, p["posts"])]
    return []


class _Checker:
    def __init__(self, dom: DomainDescriptor, mode: str):
        self.dom = dom
        self.report = CheckReport(True, "", mode=mode)

    def show(self, v) -> str:
        return self.dom.show(v)

    def leq(self, a, b, name: str, conds: list, what: str):
        ok = self.dom.leq(a, b)
        rel = "<=" if ok else "not <="
        conds.append(Condition(name, ok, f"{what}: {self.show(a)} {rel} {self.show(b)}"))
        return ok

    def eq(self, a, b) -> bool:
        return self.dom.leq(a, b) and self.dom.leq(b, a)

    def fail_first(self, path: str, conds: list):
        if not self.report.accepted:
            return
        for c in conds:
            if not c.ok:
                self.report.accepted = False
                self.report.path = path
                self.report.condition = c.name
                self.report.witnesses = {"detail": c.detail}
                return

    def node(self, n: DerivationNode, path: str):
        dom, mon = self.dom, self.dom.monoid
        t = Triple(dom, n.pre, n.cmd, n.post)
        conds: list = []
        trace = NodeTrace(path, n.rule, t.show(), conds)
        self.report.traces.append(trace)
        if n.shape_error:
            conds.append(Condition("shape", False, n.shape_error))
            self.fail_first(path, conds)
            return
        p = n.payload
        exp = expected_premises(n, dom)
        for i, ((pre, cmd, post), child) in enumerate(zip(exp, n.children)):
            ok = cmd == child.cmd and self.eq(pre, child.pre) and self.eq(post, child.post)
            if not ok:
                conds.append(
                    Condition("premise", False, f"premise {i} proves {Triple(dom, child.pre, child.cmd, child.post).show()}")
                )
        if len(exp) != len(n.children):
            conds.append(Condition("arity", False, f"{len(n.children)} premises, expected {len(exp)}"))
        rule = n.rule
        if rule == "basic":
            self.leq(atom_post(dom, n.cmd.atom, n.pre), n.post, "basic", conds, "atom image")
        elif rule == "cons":
            self.leq(n.pre, p["pre"], "cons-pre", conds, "weakened pre")
            self.leq(p["post"], n.post, "cons-post", conds, "strengthened post")
        elif rule == "choice":
            self.leq(mon.oplus_pair(p["k1"], p["k2"]), n.post, "choice", conds, "k1 (+) k2")
        elif rule == "iter":
            hs = p["hs"]
            ok = self.eq(n.pre, hs[0])
            conds.append(Condition("iter-start", ok, f"pre {self.show(n.pre)} vs h0 {self.show(hs[0])}"))
            total = oplus(EventuallyPeriodic(tuple(hs[:-1]), (hs[-1],)), mon)
            self.leq(total, n.post, "iter-sum", conds, "sum of iterates")
        elif rule == "rec":
            self.leq(mon.oplus_pair(n.pre, p["l"]), n.post, "rec-sum", conds, "pre (+) l")
        elif rule == "inv":
            self.leq(p["kp"], n.pre, "inv-invariant", conds, "k'")
            total = oplus(EventuallyPeriodic((), (n.pre,)), mon)
            self.leq(total, n.post, "inv-sum", conds, "infinite sum of the invariant")
        elif rule == "join":
            cover = p["cover"]
            dense = is_dense(cover, dom.lattice)
            shown = ", ".join(self.show(c) for c in cover)
            conds.append(Condition("density", dense, f"cover {{{shown}}}" + ("" if dense else " is not dense")))
            self.leq(n.pre, combine("join", cover, dom.lattice), "join-cover", conds, "pre vs join of cover")
            self.leq(combine("join", p["posts"], dom.lattice), n.post, "join-post", conds, "join of posts")
        elif rule == "meet":
            self.leq(n.pre, combine("meet", p["fam"], dom.lattice), "meet-pre", conds, "pre vs meet of family")
            self.leq(combine("meet", p["posts"], dom.lattice), n.post, "meet-post", conds, "meet of posts")
        self.fail_first(path, conds)
        for i, child in enumerate(n.children):
            self.node(child, f"{path}/{i}.{child.rule}")


def check_derivation(
    node: DerivationNode, dom: DomainDescriptor, mode: str = "concrete"
) -> CheckReport:
    chk = _Checker(dom, mode)
    chk.report.triple = Triple(dom, node.pre, node.cmd, node.post).show()
    chk.node(node, f"proof/{node.rule}")
    return chk.report


# ---------------------------------------------------------------- scripts


def script_domain(script: Script) -> DomainDescriptor:
    dom = make_domain(script.domain)
    if script.mode is None:
        return dom
    bundle = make_gi(script.mode)
    if dom.spec != bundle.concrete.spec:
        raise DomainSpecError(
            f"abstract mode over {bundle.spec} needs domain {bundle.concrete.spec}, not {dom.spec}"
        )
    return bca_lift(bundle.gi, dom, bundle.abstract)


def load_script(text: str, mode: Optional[str] = None) -> tuple:
    """(domain, triple, derivation or None) for a script text. A ``mode``
    (a GI spec) overrides the script's own (mode abstract ...) clause."""
    script = parse_script(text)
    if mode is not None:
        script.mode = mode
    dom = script_domain(script)
    try:
        cmd = parse_cmd(script.cmd, dom.variables or None)
    except ParseError as exc:
        raise ParseError(f"in (cmd ...): {exc.reason}", exc.line, exc.column) from None
    pre = _value(dom, script.pre, None, "pre")
    post = _value(dom, script.post, None, "post")
    t = Triple(dom, pre, cmd, post)
    proof = None if script.proof is None else elaborate(script.proof, pre, cmd, post, dom)
    return dom, t, proof


def check_script(text: str, mode: Optional[str] = None) -> CheckReport:
    mode = mode if mode is not None else parse_script(text).mode
    dom, t, proof = load_script(text, mode)
    if proof is None:
        raise DerivationShapeError("the script has no (proof ...) clause")
    return check_derivation(proof, dom, "concrete" if mode is None else f"abstract {mode}")
