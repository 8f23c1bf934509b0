"""Command line interface: ``jkforge run|verify|demo|list-demos|ops``.

Exit codes: 0 all assertions hold, 1 an assertion or construction failed,
2 the input could not be parsed, 3 a size, cap, memory or time limit was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from pathlib import Path

from ..exactcore.errors import JKError, ParseError, SizeLimit
from . import runner
from .demos import DEMOS
from .ops import describe
from .scenario import parse, parse_file

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _alarm(signum, frame):
    raise SizeLimit("time limit of %s seconds exceeded" % os.environ.get("JKFORGE_LIMIT_SECONDS"))


def _install_limits(limit_bytes):
    secs = os.environ.get("JKFORGE_LIMIT_SECONDS")
    if secs:
        try:
            value = float(secs)
        except ValueError:
            raise ParseError("JKFORGE_LIMIT_SECONDS must be a number, got %r" % secs)
        if value > 0 and hasattr(signal, "setitimer"):
            signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, value)
    if limit_bytes:
        import resource

        resource.setrlimit(resource.RLIMIT_AS, (limit_bytes, limit_bytes))


def _parser():
    ap = argparse.ArgumentParser(prog="jkforge", description="exact checks for filtered algebras and homotopies")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--ring", help="Z, Q or Fp:<p> (overrides the scenario)")
        p.add_argument("--cap", type=int, help="filtration cap (overrides the scenario)")
        p.add_argument("--commutative", action="store_const", const=True, default=None,
                       help="use the symmetric tensor algebra")
        p.add_argument("--report", choices=["text", "machine"], default="text")
        p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
        p.add_argument("--limit-bytes", type=int, default=None, help="address-space limit")
        p.add_argument("--certificate", metavar="PATH", help="write a JSON certificate of passing claims")

    p = sub.add_parser("run", help="run a scenario file")
    p.add_argument("scenario")
    common(p)
    p = sub.add_parser("demo", help="run a built-in scenario")
    p.add_argument("name")
    common(p)
    sub.add_parser("list-demos", help="list built-in scenarios")
    sub.add_parser("ops", help="list operations and assertions")
    p = sub.add_parser("verify", help="recheck a certificate")
    p.add_argument("certificate")
    p.add_argument("--report", choices=["text", "machine"], default="text")
    p.add_argument("--limit-bytes", type=int, default=None)
    return ap


def _run(args, out) -> int:
    if args.command == "demo":
        if args.name not in DEMOS:
            raise ParseError("unknown demo %r (try list-demos)" % args.name)
        sc, base = parse(DEMOS[args.name], name=args.name), Path(".")
    else:
        sc, base = parse_file(args.scenario), Path(args.scenario).parent
    if args.cap is not None and args.cap < 1:
        raise ParseError("--cap must be positive")
    run = runner.execute(sc, ring=args.ring, cap=args.cap, commutative=args.commutative, base_dir=base)
    if args.report == "machine":
        out.write(runner.report_machine(run, args.timing) + "\n")
    else:
        out.write(runner.report_text(run, args.timing) + "\n")
    if args.certificate and run.error is None:
        Path(args.certificate).write_text(json.dumps(runner.certificate(run), sort_keys=True) + "\n",
                                          encoding="utf-8")
    return run.exit_code


def _verify(args, out) -> int:
    try:
        data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (args.certificate, e.strerror))
    except ValueError as e:
        raise ParseError("%s is not JSON: %s" % (args.certificate, e))
    try:
        res = runner.verify_certificate(data)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ParseError("malformed certificate: %s: %s" % (type(e).__name__, e))
    ok = all(r[1] for r in res)
    if args.report == "machine":
        out.write(json.dumps({"claims": [{"assertion": a, "pass": p, "detail": d} for a, p, d in res],
                              "result": "PASS" if ok else "FAIL"}, sort_keys=True, indent=2) + "\n")
    else:
        for i, (a, p, d) in enumerate(res, 1):
            out.write("  [%d] %s %s%s\n" % (i, "PASS" if p else "FAIL", a, "" if p else "  (%s)" % d))
        out.write("result: %s\n" % ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    if args.command == "list-demos":
        for name in sorted(DEMOS):
            first = next(ln for ln in DEMOS[name].splitlines() if ln.startswith("#"))
            out.write("%-18s %s\n" % (name, first.lstrip("# ")))
        return EXIT_OK
    if args.command == "ops":
        out.write(describe() + "\n")
        return EXIT_OK
    try:
        _install_limits(getattr(args, "limit_bytes", None))
        if args.command == "verify":
            return _verify(args, out)
        return _run(args, out)
    except JKError as e:
        sys.stderr.write("%s: %s\n" % (type(e).__name__, e))
        return e.exit_code
    except MemoryError:
        sys.stderr.write("MemoryError: memory limit exceeded\n")
        return EXIT_LIMIT
    except RecursionError:
        sys.stderr.write("SizeLimit: recursion limit exceeded\n")
        return EXIT_LIMIT
    except Exception as e:  # a bug, not a verdict about the input
        sys.stderr.write("internal error: %s: %s\n" % (type(e).__name__, e))
        return EXIT_FAIL
    finally:
        if hasattr(signal, "setitimer"):
            signal.setitimer(signal.ITIMER_REAL, 0)


def entry():
    sys.exit(main())
