"""Command-line front end.

Exit codes: 0 accepted/valid/pass, 1 rejected/invalid/fail, 2 inconclusive
(widened), 3 usage or parse error, 4 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .domains.product import product_domain
from .domains.specs import DOMAIN_FORMS, GI_FORMS, make_domain, make_gi
from .errors import (
    ApplError,
    CarrierMismatch,
    DerivationShapeError,
    DomainSpecError,
    ParseError,
)
from .laws import domain_laws
from .logic import (
    Triple,
    certify_bca,
    check_derivation,
    check_validity,
    derive_strongest_post,
    format_script,
    load_script,
    parse_script,
)
from .order import DEFAULT_SEED, SamplePlan
from .regcmd import parse_cmd, pretty
from .semantics import DEFAULT_STAR_BUDGET, EvalContext, sem_eval

OK, FAIL, INCONCLUSIVE, USAGE, EVAL_ERROR = 0, 1, 2, 3, 4
SCHEMA_VERSION = 1

# errors caused by what the user wrote, as opposed to evaluation limits
_USAGE_ERRORS = (ParseError, DomainSpecError, DerivationShapeError, CarrierMismatch)


@dataclass
class CliConfig:
    command: str
    domain: Optional[str] = None
    program: Optional[str] = None
    fmt: str = "text"
    seed: int = DEFAULT_SEED
    samples: int = 200
    star_budget: int = DEFAULT_STAR_BUDGET
    widening: bool = True


class _Usage(Exception):
    pass


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument("--star-budget", type=int, default=DEFAULT_STAR_BUDGET)
    common.add_argument(
        "--widening", choices=("on", "off"), default="on", help="widen stars that do not stabilize"
    )

    def program_args(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--program", metavar="FILE", help="file holding the command")
        g.add_argument("--cmd", metavar="TEXT", help="the command itself")

    domains = "; ".join(DOMAIN_FORMS)
    parser = argparse.ArgumentParser(
        prog="appl",
        description="Evaluate regular commands over interpretation monoids and check derivations.",
        epilog=f"domains: {domains}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="full semantics of a command at an input")
    p.add_argument("--domain", required=True)
    program_args(p)
    p.add_argument("--input", required=True, metavar="LIT")

    p = sub.add_parser("check-triple", parents=[common], help="validity of {pre} r {post}")
    p.add_argument("--domain", required=True)
    program_args(p)
    p.add_argument("--pre", required=True, metavar="LIT")
    p.add_argument("--post", required=True, metavar="LIT")

    p = sub.add_parser("check-derivation", parents=[common], help="check a derivation script")
    p.add_argument("script", metavar="FILE")
    p.add_argument(
        "--mode",
        nargs="+",
        metavar="WORD",
        help="'concrete', or 'abstract GI' to check through a Galois insertion",
    )
    p.add_argument("--trace", action="store_true", help="print every node's conditions")

    p = sub.add_parser("prove", parents=[common], help="emit a strongest-post derivation script")
    p.add_argument("--domain", required=True)
    program_args(p)
    p.add_argument("--pre", required=True, metavar="LIT")

    p = sub.add_parser(
        "certify-bca", parents=[common], help="certify the best correct approximation at a point"
    )
    p.add_argument("--gi", required=True, help=" or ".join(GI_FORMS))
    program_args(p)
    p.add_argument("--input", required=True, metavar="LIT")

    p = sub.add_parser("laws", parents=[common], help="sampled law suites for a domain")
    p.add_argument("--domain", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--depth", type=int, default=3, help="nesting depth of random programs")
    return parser


def _config(args) -> CliConfig:
    return CliConfig(
        command=args.command,
        domain=getattr(args, "domain", None) or getattr(args, "gi", None),
        program=getattr(args, "program", None) or getattr(args, "cmd", None),
        fmt=args.fmt,
        seed=getattr(args, "seed", DEFAULT_SEED),
        samples=getattr(args, "samples", 0),
        star_budget=args.star_budget,
        widening=args.widening == "on",
    )


# ---------------------------------------------------------------- helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _program(args, variables) -> object:
    text = _read(args.program) if args.program else args.cmd
    # program files may carry '#' comment lines
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    return parse_cmd("\n".join(lines).strip(), variables or None)


def _value(dom, text: str, what: str):
    try:
        return dom.parse_value(text)
    except ParseError as exc:
        raise ParseError(f"{what} {text!r}: {exc.reason}", exc.line, exc.column) from None
    except (CarrierMismatch, ValueError) as exc:
        raise _Usage(f"{what} {text!r} is not a value of {dom.spec}: {exc}") from None


def _ctx(dom, cfg: CliConfig) -> EvalContext:
    return EvalContext(dom, star_budget=cfg.star_budget, widening_enabled=cfg.widening)


def emit_report(payload: dict, fmt: str, text: str) -> str:
    """The json form is the payload, keys sorted; the text form is given."""
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    return text


def _envelope(cfg: CliConfig, **body) -> dict:
    flags = {"star_budget": cfg.star_budget, "widening": cfg.widening}
    out = {"schema": SCHEMA_VERSION, "command": cfg.command, "flags": flags, "seed": cfg.seed}
    out.update(body)
    return out


# ---------------------------------------------------------------- commands


def cmd_eval(args, cfg: CliConfig) -> tuple:
    dom = make_domain(args.domain)
    r = _program(args, dom.variables)
    d = _value(dom, args.input, "input")
    ctx = _ctx(dom, cfg)
    value, flag = sem_eval(r, d, ctx)
    shown = dom.show(value)
    payload = _envelope(
        cfg,
        domain=dom.spec,
        program=pretty(r),
        input=dom.show(d),
        value=shown,
        exactness=str(flag),
        notes=list(ctx.status.notes),
    )
    code = OK if str(flag) == "exact" else INCONCLUSIVE
    return code, payload, f"{shown} ({flag})"


def cmd_check_triple(args, cfg: CliConfig) -> tuple:
    dom = make_domain(args.domain)
    r = _program(args, dom.variables)
    t = Triple(dom, _value(dom, args.pre, "pre"), r, _value(dom, args.post, "post"))
    ctx = _ctx(dom, cfg)
    res = check_validity(t, ctx)
    payload = _envelope(
        cfg,
        domain=dom.spec,
        verdict=res.verdict,
        triple=res.triple,
        witness={"computed": res.computed_text, "exactness": res.exactness},
        notes=list(ctx.status.notes),
    )
    text = f"{res.verdict.upper()}  {res.triple}"
    if res.verdict != "valid":
        text += f"\n  computed post: {res.computed_text} ({res.exactness})"
    code = {"valid": OK, "invalid": FAIL}.get(res.verdict, INCONCLUSIVE)
    return code, payload, text


def _mode(words) -> Optional[str]:
    if not words:
        return None
    if words[0] == "concrete" and len(words) == 1:
        return None
    if words[0] == "abstract" and len(words) == 2:
        return words[1]
    raise _Usage("--mode takes 'concrete' or 'abstract GI'")


def cmd_check_derivation(args, cfg: CliConfig) -> tuple:
    text = _read(args.script)
    mode = _mode(args.mode)
    if mode is None:
        mode = parse_script(text).mode
    dom, t, proof = load_script(text, mode)
    if proof is None:
        raise DerivationShapeError("the script has no (proof ...) clause")
    report = check_derivation(proof, dom, "concrete" if mode is None else f"abstract {mode}")
    payload = _envelope(cfg, script=args.script, domain=dom.spec, **report.to_json())
    lines = [f"{report.verdict.upper()}  {report.triple}"]
    if not report.accepted:
        lines.append(f"  at {report.path}: {report.condition} ({report.witnesses.get('detail', '')})")
    if args.trace:
        for tr in report.traces:
            lines.append(f"  {'ok  ' if tr.ok else 'FAIL'} {tr.path}  {tr.triple}")
            for c in tr.conditions:
                lines.append(f"       {'+' if c.ok else '-'} {c.name}: {c.detail}")
    return (OK if report.accepted else FAIL), payload, "\n".join(lines)


def cmd_prove(args, cfg: CliConfig) -> tuple:
    dom = make_domain(args.domain)
    r = _program(args, dom.variables)
    pre = _value(dom, args.pre, "pre")
    ctx = _ctx(dom, cfg)
    proof = derive_strongest_post(r, pre, ctx)
    t = Triple(dom, pre, r, proof.post)
    report = check_derivation(proof, dom)
    script = format_script(t, proof)
    note = proof.payload.get("note")
    if note:
        script = f"; {note}\n" + script
    payload = _envelope(
        cfg,
        domain=dom.spec,
        triple=t.show(),
        post=dom.show(proof.post),
        verdict=report.verdict,
        note=note,
        script=script,
    )
    return (OK if report.accepted else FAIL), payload, script.rstrip("\n")


def cmd_certify(args, cfg: CliConfig) -> tuple:
    bundle = make_gi(args.gi)
    absd = bundle.abstract
    r = _program(args, bundle.space.names)
    a = _value(absd, args.input, "input")
    ctx = _ctx(product_domain(bundle), cfg)
    res = certify_bca(r, a, bundle, ctx)
    payload = _envelope(
        cfg,
        gi=bundle.spec,
        certified=res.certified,
        verdict="Certified" if res.certified else "NotCertified",
        value=res.value_text if res.certified else None,
        triple=res.triple,
        reason=res.reason or None,
    )
    if res.certified:
        text = f"CERTIFIED  {res.value_text}\n  via {res.triple}"
    else:
        text = f"NOT CERTIFIED  {res.triple}\n  {res.reason}"
    return (OK if res.certified else FAIL), payload, text


def cmd_laws(args, cfg: CliConfig) -> tuple:
    dom = make_domain(args.domain)
    if args.samples < 1:
        raise _Usage("--samples must be positive")
    report = domain_laws(dom, SamplePlan(seed=args.seed, samples=args.samples), depth=args.depth)
    rows = [
        {
            "law": e.name,
            "passed": e.passed,
            "checked": e.checked,
            "counterexample": None if e.passed else repr(e.counterexample),
        }
        for e in report.entries
    ]
    payload = _envelope(cfg, domain=dom.spec, passed=report.passed, laws=rows)
    width = max(len(r["law"]) for r in rows)
    lines = [f"laws for {dom.spec}", f"seed {args.seed}, {args.samples} samples per law"]
    for row in rows:
        mark = "PASS" if row["passed"] else "FAIL"
        lines.append(f"  {mark}  {row['law']:<{width}}  {row['checked']:>5} checked")
        if not row["passed"]:
            lines.append(f"        counterexample: {row['counterexample']}")
    return (OK if report.passed else FAIL), payload, "\n".join(lines)


COMMANDS = {
    "eval": cmd_eval,
    "check-triple": cmd_check_triple,
    "check-derivation": cmd_check_derivation,
    "prove": cmd_prove,
    "certify-bca": cmd_certify,
    "laws": cmd_laws,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    cfg = _config(args)
    try:
        code, payload, text = COMMANDS[args.command](args, cfg)
    except _Usage as exc:
        return _fail(cfg, USAGE, "usage", str(exc), out, err)
    except _USAGE_ERRORS as exc:
        return _fail(cfg, USAGE, type(exc).__name__, str(exc), out, err)
    except ApplError as exc:
        return _fail(cfg, EVAL_ERROR, type(exc).__name__, str(exc), out, err)
    print(emit_report(payload, cfg.fmt, text), file=out)
    return code


def _fail(cfg: CliConfig, code: int, kind: str, msg: str, out, err) -> int:
    if cfg.fmt == "json":
        payload = _envelope(cfg, verdict="error", error={"kind": kind, "message": msg})
        print(emit_report(payload, "json", ""), file=out)
    else:
        print(f"error: {kind}: {msg}", file=err)
    return code


def main() -> None:
    sys.exit(run())


__all__ = ["CliConfig", "build_parser", "emit_report", "run", "main"]
