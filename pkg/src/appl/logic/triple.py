"""Triples, derivation trees and the reports produced by checking them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..domains.base import DomainDescriptor
from ..regcmd import pretty


@dataclass(frozen=True)
class Triple:
    domain: DomainDescriptor
    pre: Any
    cmd: Any
    post: Any

    def show(self) -> str:
        d = self.domain
        return f"{{{d.show(self.pre)}}} {pretty(self.cmd)} {{{d.show(self.post)}}}"


@dataclass
class DerivationNode:
    """One rule application proving {pre} cmd {post}.

    ``payload`` holds the rule's extra values: mid (seq), pre/post (cons),
    k1/k2 (choice), hs (iter), kp/l (rec), kp (inv), cover/posts (join),
    fam/posts (meet).
    """

    rule: str
    pre: Any
    cmd: Any
    post: Any
    children: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    # a rule that does not fit the command is recorded rather than raised
    shape_error: Optional[str] = None

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def rules(self) -> set:
        return {n.rule for n in self.walk()}

    def size(self) -> int:
        return sum(1 for _ in self.walk())


@dataclass
class Condition:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class NodeTrace:
    path: str
    rule: str
    triple: str
    conditions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)


@dataclass
class CheckReport:
    accepted: bool
    triple: str
    path: Optional[str] = None
    condition: Optional[str] = None
    witnesses: dict = field(default_factory=dict)
    traces: list = field(default_factory=list)
    mode: str = "concrete"

    @property
    def verdict(self) -> str:
        return "Accepted" if self.accepted else "Rejected"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "triple": self.triple,
            "mode": self.mode,
            "failure": None
            if self.accepted
            else {"path": self.path, "condition": self.condition, "witnesses": self.witnesses},
            "nodes": [
                {
                    "path": t.path,
                    "rule": t.rule,
                    "triple": t.triple,
                    "conditions": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in t.conditions],
                }
                for t in self.traces
            ],
        }


@dataclass
class ValidityResult:
    """Outcome of comparing the computed semantics with a postcondition."""

    verdict: str  # "valid" | "invalid" | "inconclusive"
    triple: str
    computed: Any
    computed_text: str
    exactness: str

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"
