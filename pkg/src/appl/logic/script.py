"""Reader and writer for derivation scripts.

A script is one parenthesized form::

    (triple (domain interval(irreducible)) (pre [-1,1]) (cmd "(x<>0?);(x=0?)")
      (post empty)
      (proof (join (:cover [-1,0] [0,1]) (seq ...) (seq ...))))

Value literals are written raw (or double-quoted); the reader knows where a
literal is expected and scans it by bracket balance. ``;`` starts a comment
wherever whitespace is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import ParseError

RULES = ("basic", "seq", "cons", "choice", "iter", "rec", "inv", "join", "meet")

# keyword -> True when it takes a list of literals instead of exactly one
KEYWORDS = {
    ":mid": False,
    ":pre": False,
    ":post": False,
    ":k1": False,
    ":k2": False,
    ":kp": False,
    ":l": False,
    ":h": False,
    ":cover": True,
    ":fam": True,
    ":posts": True,
}

_OPEN, _CLOSE = "{[(<", "}])>"


@dataclass
class NodeSyntax:
    rule: str
    children: list = field(default_factory=list)
    # keyword -> list of literal texts, in order of appearance
    args: dict = field(default_factory=dict)
    line: int = 1
    column: int = 1

    def arg(self, key: str) -> Optional[str]:
        vals = self.args.get(key)
        return vals[0] if vals else None


@dataclass
class Script:
    domain: str
    pre: str
    cmd: str
    post: str
    proof: Optional[NodeSyntax] = None
    mode: Optional[str] = None  # GI spec for abstract mode
    source: str = ""


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    # ---------------------------------------------------------------- errors
    def where(self, i: Optional[int] = None) -> tuple:
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def fail(self, msg: str, i: Optional[int] = None):
        line, col = self.where(i)
        raise ParseError(msg, line, col)

    # ---------------------------------------------------------------- lexing
    def skip(self):
        t = self.text
        while self.i < len(t):
            ch = t[self.i]
            if ch.isspace():
                self.i += 1
            elif ch == ";":
                nl = t.find("\n", self.i)
                self.i = len(t) if nl < 0 else nl + 1
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r} but found {self.peek() or 'end of input'!r}")
        self.i += 1

    def word(self) -> str:
        self.skip()
        start = self.i
        t = self.text
        while self.i < len(t) and (t[self.i].isalnum() or t[self.i] in ":-_"):
            self.i += 1
        if start == self.i:
            self.fail(f"expected a word but found {self.peek() or 'end of input'!r}")
        return t[start : self.i]

    def quoted(self) -> str:
        self.expect('"')
        start = self.i
        end = self.text.find('"', start)
        if end < 0:
            self.fail("unterminated string", start - 1)
        self.i = end + 1
        return self.text[start:end]

    def balanced(self, stop_at_close: bool = True) -> str:
        """Raw text up to the ')' closing the enclosing form (or, with
        ``stop_at_close`` False, up to whitespace at bracket depth zero)."""
        self.skip()
        t = self.text
        start = self.i
        depth = 0
        while self.i < len(t):
            ch = t[self.i]
            if ch in _OPEN:
                depth += 1
            elif ch in _CLOSE:
                if depth == 0:
                    break
                depth -= 1
                if depth == 0 and not stop_at_close:
                    self.i += 1
                    # a literal may be followed directly by more of itself, e.g. down{...}
                    continue
            elif depth == 0 and not stop_at_close and (ch.isspace() or ch == ";"):
                break
            self.i += 1
        if depth:
            self.fail("unbalanced brackets", start)
        text = t[start : self.i].strip()
        if not text:
            self.fail("expected a value", start)
        return text

    def literal(self) -> str:
        if self.peek() == '"':
            return self.quoted()
        return self.balanced(stop_at_close=False)

    # ---------------------------------------------------------------- forms
    def script(self) -> Script:
        self.expect("(")
        head = self.word()
        if head != "triple":
            self.fail(f"a script starts with (triple ...), not ({head} ...)")
        parts: dict = {}
        while self.peek() == "(":
            pos = self.i
            self.expect("(")
            key = self.word()
            if key in parts:
                self.fail(f"duplicate ({key} ...) clause", pos)
            if key == "domain":
                parts[key] = self.quoted() if self.peek() == '"' else self.balanced()
            elif key in ("pre", "post"):
                parts[key] = self.literal()
            elif key == "cmd":
                parts[key] = self.quoted()
            elif key == "mode":
                kind = self.word()
                if kind != "abstract":
                    self.fail(f"unknown mode {kind!r}; only 'abstract GI' is supported")
                parts[key] = self.quoted() if self.peek() == '"' else self.balanced()
            elif key == "proof":
                parts[key] = self.node()
            else:
                self.fail(f"unknown clause ({key} ...)", pos)
            self.expect(")")
        self.expect(")")
        if self.peek():
            self.fail("trailing text after the script")
        for key in ("domain", "pre", "cmd", "post"):
            if key not in parts:
                self.fail(f"missing ({key} ...) clause")
        return Script(
            parts["domain"],
            parts["pre"],
            parts["cmd"],
            parts["post"],
            parts.get("proof"),
            parts.get("mode"),
            self.text,
        )

    def node(self) -> NodeSyntax:
        start = self.i
        self.expect("(")
        line, col = self.where(start)
        rule = self.word()
        if rule not in RULES:
            self.fail(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}", start + 1)
        n = NodeSyntax(rule, line=line, column=col)
        while True:
            ch = self.peek()
            if ch == ")":
                self.i += 1
                return n
            if ch == ":":
                key = self.word()
                self._keyword(n, key, grouped=False)
            elif ch == "(":
                save = self.i
                self.i += 1
                if self.peek() == ":":
                    key = self.word()
                    self._keyword(n, key, grouped=True)
                    self.expect(")")
                else:
                    self.i = save
                    n.children.append(self.node())
            else:
                self.fail(f"unexpected {ch or 'end of input'!r} inside ({rule} ...)")

    def _keyword(self, n: NodeSyntax, key: str, grouped: bool):
        if key not in KEYWORDS:
            self.fail(f"unknown keyword {key}")
        many = KEYWORDS[key]
        vals = n.args.setdefault(key, [])
        if many and grouped:
            while self.peek() not in (")", ""):
                vals.append(self.literal())
        elif many:
            # ungrouped lists run until the next keyword or child node
            while self.peek() not in (")", "", ":") and not self._at_child():
                vals.append(self.literal())
        else:
            vals.append(self.literal())

    def _at_child(self) -> bool:
        if self.peek() != "(":
            return False
        j = self.i + 1
        t = self.text
        while j < len(t) and t[j].isspace():
            j += 1
        return any(t.startswith(r, j) for r in RULES) or t.startswith(":", j)


def parse_script(text: str) -> Script:
    return _Reader(text).script()


# ---------------------------------------------------------------- writing


def format_node(node, show, indent: int = 2, depth: int = 1) -> str:
    """Script text for a DerivationNode; ``show`` formats domain values."""
    pad = " " * (indent * depth)
    head = f"({node.rule}"
    args = []
    p = node.payload
    for key in ("mid", "k1", "k2", "kp", "l"):
        if key in p:
            args.append(f":{key} {show(p[key])}")
    if node.rule == "cons":
        args.append(f":pre {show(p['pre'])} :post {show(p['post'])}")
    if node.rule == "iter":
        args.append(" ".join(f"(:h {show(h)})" for h in p["hs"]))
    if node.rule in ("join", "meet"):
        key = "cover" if node.rule == "join" else "fam"
        args.append(f"(:{key} " + " ".join(show(v) for v in p[key]) + ")")
        args.append("(:posts " + " ".join(show(v) for v in p["posts"]) + ")")
    text = head + ("" if not args else " " + " ".join(args))
    if not node.children:
        return text + ")"
    inner = "\n".join(pad + format_node(c, show, indent, depth + 1) for c in node.children)
    return text + "\n" + inner + ")"


def format_script(triple, proof, mode: Optional[str] = None) -> str:
    from ..regcmd import pretty

    dom = triple.domain
    lines = [
        f"(triple (domain {dom.spec})",
        f"  (pre {dom.show(triple.pre)})",
        f'  (cmd "{pretty(triple.cmd)}")',
        f"  (post {dom.show(triple.post)})",
    ]
    if mode:
        lines.append(f"  (mode abstract {mode})")
    lines.append("  (proof " + format_node(proof, dom.show, 2, 2) + "))")
    return "\n".join(lines) + "\n"
