"""``ringcheck`` command-line front end.

Exit codes: 0 success, 1 ill-formed input (usage, unreadable file, parse or
precondition errors), 2 internal invariant violation or a corpus run whose
reconciliation statuses differ from the recorded expectations.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .corpus import SCHEMA, run_corpus
from .engine import evaluate, strip_private
from .errors import InvariantError, RingcheckError
from .idealcalc import colon
from .lang import Program, parse_program
from .poly import format_poly

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2

IDEAL_COMMANDS = ("gb", "dim", "colon", "minprimes", "assprimes", "isprime")
STATEMENT_COMMANDS = ("check", "split", "decompose", "classify", "frobenius")


class UsageError(RingcheckError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ringcheck", description="Exact ring and module property checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in IDEAL_COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("names", nargs="*", help="ring or ideal names (colon takes two ideals)")
    for name in STATEMENT_COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("args", nargs="*",
                       help="optional inline statement, e.g. 'torsion_free M at P'")
    s = sub.add_parser("corpus")
    s.add_argument("directory", nargs="?", help="corpus directory (default: bundled)")
    s.add_argument("--no-timing", action="store_true", help="omit timing_ms fields")
    return p


def _read(path: str) -> Program:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_program(text)


def _default_target(prog: Program, kinds=("ideals", "rings")) -> str:
    for kind in kinds:
        names = list(getattr(prog, kind))
        if names:
            return names[-1]
    raise UsageError("no ring or ideal declared")


def _envelope(item: str, command: str, results: list, t0: float) -> dict:
    witnesses, certs = [], []
    for r in results:
        witnesses += r.pop("_witnesses", [])
        certs += r.pop("_certificates", [])
    return {
        "schema": SCHEMA, "item": item, "command": command, "claims": [],
        "results": results, "witnesses": strip_private(witnesses),
        "certificates": strip_private(certs),
        "timing_ms": round((time.perf_counter() - t0) * 1000, 1),
    }


def _gb_lines(prog: Program, names: list[str]) -> list[str]:
    target = names[0] if names else _default_target(prog)
    if target in prog.ideals:
        elems = prog.ideals[target].lifted_gb.elements
    elif target in prog.rings:
        elems = prog.rings[target].gb.elements
    else:
        raise UsageError(f"unknown ring or ideal {target!r}")
    return sorted(format_poly(g) for g in elems)


def _ideal_command(cmd: str, prog: Program, names: list[str]) -> list[dict]:
    if cmd == "colon":
        if len(names) != 2:
            raise UsageError("colon expects two ideal names: I J")
        I, J = (prog.ideals.get(n) for n in names)
        if I is None or J is None:
            raise UsageError("colon arguments must be declared ideals")
        K = colon(I, J)
        return [{"input": f"{names[0]} : {names[1]}", "result": [format_poly(g) for g in K.gens],
                 "witnesses": []}]
    op = {"dim": "dim", "minprimes": "minprimes", "assprimes": "assprimes", "isprime": "prime"}[cmd]
    kinds = ("ideals",) if cmd == "isprime" else ("ideals", "rings")
    targets = names or [_default_target(prog, kinds)]
    out = []
    for t in targets:
        o = evaluate(prog, op, t)
        out.append({"input": t, "result": o.value, "witnesses": strip_private(o.witnesses),
                    "detail": o.detail, "_witnesses": o.witnesses})
    return out


def _statement_command(cmd: str, prog: Program, args: list[str]) -> list[dict]:
    jobs = []
    if args:
        inline = parse_program(_decls_text(prog) + f"{cmd} {' '.join(args)};")
        jobs = [c for c in inline.commands if c.command == cmd]
        prog = inline
    else:
        jobs = [c for c in prog.commands if c.command == cmd]
        if not jobs and cmd in ("decompose", "classify", "frobenius"):
            from .lang import CommandDecl
            jobs = [CommandDecl(cmd, name) for name in prog.rings]
    if not jobs:
        raise UsageError(f"no '{cmd}' statements in the file and no inline statement given")
    out = []
    for c in jobs:
        op = c.prop if cmd == "check" else cmd
        o = evaluate(prog, op, c.target, c.at)
        entry = {"statement": " ".join(x for x in (cmd, c.prop, c.target) if x)
                 + (f" at {c.at}" if c.at else ""),
                 "result": o.value, "detail": o.detail,
                 "_witnesses": o.witnesses, "_certificates": o.certificates}
        out.append(entry)
    return out


def _decls_text(prog: Program) -> str:
    from .lang import CommandDecl, format_declarations
    return format_declarations([d for d in prog.declarations if not isinstance(d, CommandDecl)])


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "corpus":
            report = run_corpus(args.directory)
            if args.no_timing:
                from .corpus import strip_volatile
                report = strip_volatile(report)
            print(_dump(report))
            return EXIT_OK if report["expected"] else EXIT_INVARIANT
        prog = _read(args.file)
        if args.command == "gb":
            for line in _gb_lines(prog, args.names):
                print(line)
            return EXIT_OK
        if args.command in IDEAL_COMMANDS:
            results = _ideal_command(args.command, prog, args.names)
        else:
            results = _statement_command(args.command, prog, args.args)
        print(_dump(_envelope(Path(args.file).name, args.command, results, t0)))
        return EXIT_OK
    except InvariantError as exc:
        print(f"ringcheck: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except RingcheckError as exc:
        print(f"ringcheck: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RecursionError as exc:
        print(f"ringcheck: input too deeply nested: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"ringcheck: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
