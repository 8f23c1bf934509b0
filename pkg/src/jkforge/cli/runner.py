"""Static binding, execution, reports and certificates for scenarios."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .. import homotopy as ho
from ..exactcore import serialize
from ..exactcore.errors import JKError, ParseError
from ..exactcore.maps import AlgebraMap
from ..exactcore.rings import parse_ring
from .ops import ASSERTS, OPS, Context, accepts, fmt_label, fmt_vec, kind_of
from .scenario import Scenario

BUILTINS = {"k": "algebra"}


@dataclass
class Bound:
    name: str
    fn: object
    kwargs: dict
    line: int
    refs: dict


def _bind(params, args, env, line, what, col):
    kwargs, refs = {}, {}
    positional = [a.token for a in args if a.key is None]
    keyed = {}
    for a in args:
        if a.key is not None:
            if a.key in keyed:
                raise ParseError("%s: %r given twice" % (what, a.key), line, a.token.column)
            keyed[a.key] = a.token
    names = [p.name for p in params]
    for k, tok in keyed.items():
        if k not in names:
            raise ParseError("%s has no parameter %r" % (what, k), line, tok.column)
    pos = 0
    for p in params:
        if p.kind == "ints":
            toks = positional[pos:]
            pos = len(positional)
            for t in toks:
                if not isinstance(t.value, int) or t.quoted:
                    raise ParseError("%s: expected an integer, got %r" % (what, t.text), line, t.column)
            kwargs[p.name] = [t.value for t in toks]
            continue
        tok = None
        if p.name in keyed:
            tok = keyed[p.name]
        elif pos < len(positional):
            tok = positional[pos]
            pos += 1
        if tok is None:
            if p.required:
                raise ParseError("%s is missing argument %r" % (what, p.name), line, col)
            kwargs[p.name] = p.default
            continue
        if p.kind == "int":
            if tok.quoted or not isinstance(tok.value, int):
                raise ParseError("%s: %s must be an integer, got %r" % (what, p.name, tok.text), line, tok.column)
            kwargs[p.name] = tok.value
        elif p.kind == "str":
            kwargs[p.name] = tok.text
        else:
            if tok.quoted or tok.text not in env:
                raise ParseError("%s: unknown name %r" % (what, tok.text), line, tok.column)
            got = env[tok.text]
            if got != "any" and not accepts(p.kind, got):
                raise ParseError("%s: %s must be a %s, but %r is a %s" % (what, p.name, p.kind, tok.text, got),
                                 line, tok.column)
            refs[p.name] = tok.text
    if pos < len(positional):
        t = positional[pos]
        raise ParseError("%s: unexpected argument %r" % (what, t.text), line, t.column)
    return kwargs, refs


def bind(sc: Scenario):
    """Check every step and assertion against the registry; returns bound steps and assertions."""
    env = dict(BUILTINS)
    steps, checks = [], []
    for st in sc.steps:
        if st.op.text not in OPS:
            raise ParseError("unknown operation %r" % st.op.text, st.line, st.op.column)
        params, fn, result, _ = OPS[st.op.text]
        kwargs, refs = _bind(params, st.args, env, st.line, st.op.text, st.op.column)
        steps.append(Bound(st.name, fn, kwargs, st.line, refs))
        env[st.name] = result
    for a in sc.assertions:
        if a.kind.text not in ASSERTS:
            raise ParseError("unknown assertion %r" % a.kind.text, a.line, a.kind.column)
        params, fn, _ = ASSERTS[a.kind.text]
        kwargs, refs = _bind(params, a.args, env, a.line, a.kind.text, a.kind.column)
        checks.append(Bound(a.text, fn, kwargs, a.line, refs))
    return steps, checks


@dataclass
class Outcome:
    text: str
    line: int
    ok: bool
    detail: str = ""


@dataclass
class Run:
    scenario: Scenario
    ring: str
    cap: int
    commutative: bool
    outcomes: list = field(default_factory=list)
    lossy: list = field(default_factory=list)
    error: str | None = None
    error_step: str | None = None
    exit_code: int = 0
    seconds: float = 0.0
    values: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.error is None and all(o.ok for o in self.outcomes)

    @property
    def first_failure(self):
        for i, o in enumerate(self.outcomes, 1):
            if not o.ok:
                return i
        return None


def _resolve(kwargs, refs, values):
    out = dict(kwargs)
    for k, nm in refs.items():
        out[k] = values[nm]
    return out


def _lossy_algebras(obj):
    algs = []
    if hasattr(obj, "lossy") and hasattr(obj, "basis"):
        algs = [obj]
    elif hasattr(obj, "source") and hasattr(obj, "target") and hasattr(obj.source, "lossy"):
        algs = [obj.source, obj.target]
    return [A for A in algs if A.lossy]


def execute(sc: Scenario, ring=None, cap=None, commutative=None, base_dir=".") -> Run:
    ring_s = ring if ring is not None else sc.ring
    cap_v = cap if cap is not None else sc.cap
    comm = commutative if commutative is not None else sc.commutative
    steps, checks = bind(sc)
    R = parse_ring(ring_s)
    ctx = Context(R, cap_v, comm, Path(base_dir))
    run = Run(sc, R.name, cap_v, comm)
    values = {"k": OPS["ground"][1](ctx)}
    seen = set()
    t0 = time.perf_counter()
    for b in steps:
        try:
            values[b.name] = b.fn(ctx, **_resolve(b.kwargs, b.refs, values))
        except JKError as e:
            run.error, run.error_step = "%s: %s" % (type(e).__name__, e), b.name
            run.exit_code = e.exit_code
            run.seconds = time.perf_counter() - t0
            return run
        for A in _lossy_algebras(values[b.name]):
            if A.name not in seen:
                seen.add(A.name)
                run.lossy.append("%s is truncated at cap %d (first used by %s)" % (A.name, A.cap, b.name))
    for b in checks:
        try:
            ok, detail = b.fn(ctx, **_resolve(b.kwargs, b.refs, values))
        except JKError as e:
            if e.exit_code != 1:
                raise
            ok, detail = False, "%s: %s" % (type(e).__name__, e)
        run.outcomes.append(Outcome(b.name, b.line, bool(ok), detail))
        run.checks.append(b)
    run.values = values
    run.seconds = time.perf_counter() - t0
    run.exit_code = 0 if run.passed else 1
    return run


# ---------------------------------------------------------------------------
# reports


def report_dict(run: Run, timing: bool = False) -> dict:
    out = {
        "scenario": run.scenario.name,
        "ring": run.ring,
        "cap": run.cap,
        "commutative": run.commutative,
        "assertions": [{"index": i, "line": o.line, "assertion": o.text, "pass": o.ok, "detail": o.detail}
                       for i, o in enumerate(run.outcomes, 1)],
        "lossy": list(run.lossy),
        "result": "PASS" if run.passed else "FAIL",
    }
    if run.error is not None:
        out["error"] = {"step": run.error_step, "message": run.error}
    elif not run.passed:
        out["failed_assertion"] = run.first_failure
    if timing:
        out["seconds"] = round(run.seconds, 3)
    return out


def report_text(run: Run, timing: bool = False) -> str:
    lines = ["scenario %s (ring %s, cap %d%s)" % (run.scenario.name, run.ring, run.cap,
                                                  ", commutative" if run.commutative else "")]
    for i, o in enumerate(run.outcomes, 1):
        lines.append("  [%d] %s %s" % (i, "PASS" if o.ok else "FAIL", o.text))
        if not o.ok and o.detail:
            lines.append("      witness: %s" % o.detail)
    for note in run.lossy:
        lines.append("  lossy: %s" % note)
    if run.error is not None:
        lines.append("result: FAIL at step %s (%s)" % (run.error_step, run.error))
    elif run.passed:
        lines.append("result: PASS")
    else:
        lines.append("result: FAIL at assertion %d" % run.first_failure)
    if timing:
        lines.append("time: %.3fs" % run.seconds)
    return "\n".join(lines)


def report_machine(run: Run, timing: bool = False) -> str:
    return json.dumps(report_dict(run, timing), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# certificates


def _chain_of(h):
    return h if isinstance(h, ho.HomotopyChain) else ho.HomotopyChain([h])


def certificate(run: Run) -> dict:
    """Claims for every passing ``hom``, ``equal`` and ``homotopic`` assertion."""
    claims = []
    for o, b in zip(run.outcomes, run.checks):
        if not o.ok:
            continue
        kw = _resolve(b.kwargs, b.refs, run.values)
        kind = o.text.split()[0]
        if kind == "hom":
            claims.append({"claim": "homomorphism", "assertion": o.text, "map": serialize.map_to_dict(kw["f"])})
        elif kind == "equal":
            claims.append({"claim": "equal", "assertion": o.text, "f": serialize.map_to_dict(kw["f"]),
                           "g": serialize.map_to_dict(kw["g"])})
        elif kind == "homotopic":
            ch = _chain_of(kw["h"])
            claims.append({"claim": "homotopic", "assertion": o.text,
                           "f": serialize.map_to_dict(kw["f"]), "g": serialize.map_to_dict(kw["g"]),
                           "links": [serialize.map_to_dict(h.h) for h in ch.links]})
    return {"kind": "certificate", "scenario": run.scenario.name, "ring": run.ring, "cap": run.cap,
            "claims": claims}


def _end(link, i):
    """Images of a link ``A -> B[x]`` at ``x = i`` as vectors over labels of ``B``."""
    out = {}
    for a in link.source.basis:
        v = {}
        for (b, e), c in link.images[a].items():
            if i == 0 and e:
                continue
            v[b] = v.get(b, 0) + c
        out[a] = {b: c for b, c in v.items() if c}
    return out


def _same(f_images, g_images, exact):
    for a in sorted(exact, key=lambda x: serialize.label_key(x)):
        if f_images.get(a, {}) != g_images.get(a, {}):
            return a
    return None


def verify_certificate(data: dict) -> list:
    """Recheck every claim from scratch; returns ``(claim, ok, detail)`` triples."""
    if data.get("kind") != "certificate":
        raise ParseError("not a certificate")
    out = []
    for cl in data["claims"]:
        kind = cl.get("claim")
        if kind == "homomorphism":
            f = serialize.map_from_dict(cl["map"])
            ok = isinstance(f, AlgebraMap) and f.hom_witness() is None
            out.append((cl["assertion"], ok, "" if ok else "not multiplicative"))
        elif kind == "equal":
            f, g = serialize.map_from_dict(cl["f"]), serialize.map_from_dict(cl["g"])
            w = f.difference_witness(g)
            out.append((cl["assertion"], w is None, "" if w is None else "differ at %s" % fmt_label(f.source, w)))
        elif kind == "homotopic":
            f, g = serialize.map_from_dict(cl["f"]), serialize.map_from_dict(cl["g"])
            links = [serialize.map_from_dict(d) for d in cl["links"]]
            out.append((cl["assertion"],) + _check_links(f, g, links))
        else:
            raise ParseError("unknown claim %r" % kind)
    return out


def _check_links(f, g, links):
    if not links:
        w = f.difference_witness(g)
        return (w is None, "" if w is None else "empty chain but maps differ")
    cur, exact = f.images, set(f.exact)
    for i, h in enumerate(links):
        if not isinstance(h, AlgebraMap) or h.hom_witness() is not None:
            return False, "link %d is not a homomorphism" % i
        ex = exact & set(h.exact)
        w = _same(cur, _end(h, 0), ex)
        if w is not None:
            return False, "link %d does not start where the previous one ends (at %s)" % (i, fmt_label(f.source, w))
        cur, exact = _end(h, 1), ex
    w = _same(cur, g.images, exact & set(g.exact))
    if w is not None:
        return False, "chain ends away from the second map (at %s)" % fmt_label(f.source, w)
    return True, ""


__all__ = ["bind", "execute", "report_text", "report_machine", "report_dict", "certificate", "verify_certificate",
           "fmt_vec", "kind_of"]
