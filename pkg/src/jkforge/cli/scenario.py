"""The scenario format: a header, named construction steps and assertions.

    # comment
    scenario face-mismatch
    ring Q
    cap 4
    commutative false
    let S = simplex k n=1
    let d0 = face S i=0
    assert equal d0 d1

Arguments are references to earlier names, integers, bare words, or
double-quoted strings; ``key=value`` pairs are keyword arguments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..exactcore.errors import ParseError
from ..exactcore.rings import parse_ring

_TOKEN = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<word>[^\s"]+(?:"(?:[^"\\]|\\.)*")?))')


@dataclass
class Token:
    text: str
    column: int
    quoted: bool = False

    @property
    def value(self):
        if self.quoted:
            return self.text
        if re.fullmatch(r"-?\d+", self.text):
            return int(self.text)
        return self.text


@dataclass
class Arg:
    key: str | None
    token: Token


@dataclass
class Step:
    name: str
    op: Token
    args: list
    line: int


@dataclass
class Assertion:
    kind: Token
    args: list
    line: int
    text: str


@dataclass
class Scenario:
    name: str = "scenario"
    ring: str = "Q"
    cap: int = 4
    commutative: bool = False
    steps: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    explicit: set = field(default_factory=set)


def tokenize(line: str, lineno: int) -> list:
    out, pos = [], 0
    text = line.rstrip("\n")
    while pos < len(text):
        rest = text[pos:].lstrip()
        if not rest or rest.startswith("#"):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = len(text) - len(rest)
            msg = "unterminated string" if '"' in rest else "unreadable input"
            raise ParseError(msg, lineno, text.index('"', start) + 1 if '"' in rest else start + 1)
        if m.group("str") is not None:
            raw = m.group("str")
            out.append(Token(_unescape(raw[1:-1]), m.start("str") + 1, True))
        else:
            out.append(Token(m.group("word"), m.start("word") + 1))
        pos = m.end()
    return out


def _unescape(s: str) -> str:
    return re.sub(r"\\(.)", lambda m: m.group(1), s)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


def _args(tokens, lineno):
    out = []
    for t in tokens:
        if not t.quoted and "=" in t.text and not t.text.startswith("="):
            key, _, val = t.text.partition("=")
            if not _NAME.match(key) or val == "":
                raise ParseError("malformed keyword argument %r" % t.text, lineno, t.column)
            quoted = False
            if val.startswith('"') and val.endswith('"') and len(val) >= 2:
                val, quoted = _unescape(val[1:-1]), True
            out.append(Arg(key, Token(val, t.column + len(key) + 1, quoted)))
        else:
            out.append(Arg(None, t))
    return out


def parse(text: str, name: str | None = None) -> Scenario:
    sc = Scenario(name=name or "scenario")
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokenize(line, lineno)
        if not toks:
            continue
        head = toks[0]
        word = head.text
        if word == "scenario":
            if len(toks) != 2:
                raise ParseError("expected: scenario NAME", lineno, head.column)
            sc.name = toks[1].text
        elif word == "ring":
            if len(toks) != 2:
                raise ParseError("expected: ring Z|Q|Fp:<p>", lineno, head.column)
            try:
                parse_ring(toks[1].text)
            except ValueError as e:
                raise ParseError(str(e), lineno, toks[1].column)
            sc.ring = toks[1].text
            sc.explicit.add("ring")
        elif word == "cap":
            if len(toks) != 2 or not isinstance(toks[1].value, int) or toks[1].value < 1:
                raise ParseError("expected: cap POSITIVE-INTEGER", lineno, toks[-1].column)
            sc.cap = toks[1].value
            sc.explicit.add("cap")
        elif word == "commutative":
            if len(toks) == 1:
                sc.commutative = True
            elif len(toks) == 2 and toks[1].text in ("true", "false"):
                sc.commutative = toks[1].text == "true"
            else:
                raise ParseError("expected: commutative [true|false]", lineno, toks[-1].column)
            sc.explicit.add("commutative")
        elif word == "let":
            if len(toks) < 4 or toks[2].text != "=":
                raise ParseError("expected: let NAME = OPERATION ARGS...", lineno, head.column)
            nm = toks[1]
            if not _NAME.match(nm.text):
                raise ParseError("bad name %r" % nm.text, lineno, nm.column)
            if nm.text in seen:
                raise ParseError("%r is defined twice" % nm.text, lineno, nm.column)
            args = _args(toks[4:], lineno)
            seen.add(nm.text)
            sc.steps.append(Step(nm.text, toks[3], args, lineno))
        elif word == "assert":
            if len(toks) < 2:
                raise ParseError("expected: assert KIND ARGS...", lineno, head.column)
            args = _args(toks[2:], lineno)
            sc.assertions.append(Assertion(toks[1], args, lineno, " ".join(t.text for t in toks[1:])))
        else:
            raise ParseError("unknown directive %r" % word, lineno, head.column)
    return sc


def parse_file(path) -> Scenario:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (p, e.strerror))
    return parse(text, name=p.stem)
