"""Command-line interface.

Exit codes: 0 success, 2 unreadable input, 3 the germ fails a
mathematical precondition (e.g. corank is not 2), 4 infinite D4 count.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .counting import CountOptions, milnor_colength
from .germ import GermError, corank_at_origin
from .germfile import GermFileError, load_germ_file
from .local import INFINITE
from .parser import ParseError, parse_polynomial
from .poly import UnknownVariableError, VarContext
from .report import _num, check_report, count_report, render_text, to_json

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INFINITE = 4


def _options(args, gf) -> CountOptions:
    opts = dict(gf.options)
    for key in ("order", "max_degree", "routes"):
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return CountOptions(**opts)


def _count(gf, options: CountOptions) -> tuple[dict, int]:
    report, rep = count_report(gf, options)
    corollary = rep.routes["corollary"]
    if rep.count == INFINITE and corollary.certificate == "bound":
        # distinguish "not m-primary" from "bound too small" once
        options = CountOptions(options.order, 2 * options.max_degree, options.routes)
        report, rep = count_report(gf, options)
    return report, EXIT_OK if rep.count != INFINITE else EXIT_INFINITE


def _analyze(path: str, command: str, args) -> tuple[Optional[dict], int, str]:
    """Run one file; returns (report, exit code, error message)."""
    try:
        gf = load_germ_file(path)
    except GermFileError as exc:
        return None, EXIT_PARSE, str(exc)
    start = time.perf_counter()
    try:
        if command == "auto":
            f = gf.germ()
            command = "count" if f.n == 3 and corank_at_origin(f) == 2 else "check"
        if command == "check":
            opts = _options(args, gf)
            report, code = check_report(gf, opts.max_degree, opts.order), EXIT_OK
        else:
            report, code = _count(gf, _options(args, gf))
    except (GermError, ValueError) as exc:
        return None, EXIT_DOMAIN, f"{gf.name}: {exc}"
    if getattr(args, "timings", False):
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    if code == EXIT_INFINITE:
        message = "D4 count is INFINITE: non-isolated corank-2 locus, the germ is not F-finite"
        return report, code, message
    return report, code, ""


def _emit(report: dict, fmt: str) -> None:
    sys.stdout.write(to_json(report) if fmt == "json" else render_text(report))


def cmd_check(args) -> int:
    report, code, message = _analyze(args.file, "check", args)
    if report is None:
        print(f"error: {message}", file=sys.stderr)
        return code
    _emit(report, args.format)
    return code


def cmd_count_d4(args) -> int:
    report, code, message = _analyze(args.file, "count", args)
    if report is not None:
        _emit(report, args.format)
    if message:
        print(("" if report is not None else "error: ") + message, file=sys.stderr)
    return code


def _milnor_input(args) -> tuple[str, VarContext, str]:
    if args.file:
        text = Path(args.file).read_text(encoding="utf-8")
        names = None
        expr = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("vars:"):
                names = [x.strip() for x in line[5:].split(",") if x.strip()]
            elif "=" in line:
                expr = line.split("=", 1)[1].strip()
            else:
                expr = line
        if expr is None:
            raise GermFileError("no expression found", None, args.file)
        source = Path(args.file).name
    else:
        expr, names, source = args.expr, None, args.expr
    if args.vars:
        names = [x.strip() for x in args.vars.split(",") if x.strip()]
    if names is None:
        import re

        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", expr)))
    if not names:
        names = ["x"]
    return expr, VarContext(names), source


def cmd_milnor(args) -> int:
    if not args.expr and not args.file:
        print("error: give an expression or --file", file=sys.stderr)
        return EXIT_PARSE
    try:
        expr, ctx, source = _milnor_input(args)
        g = parse_polynomial(expr, ctx)
    except (ParseError, UnknownVariableError, GermFileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        res = milnor_colength(g, args.max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    report = {
        "input": {"expression": str(g), "vars": list(ctx.names), "source": source},
        "milnor": _num(res.value),
        "basis": res.basis_strings(),
        "version": __version__,
    }
    if args.format == "json":
        sys.stdout.write(to_json(report))
    else:
        print(f"milnor number of {g}: {report['milnor']}")
        if res.is_finite:
            print(f"  basis: {', '.join(report['basis'])}")
    return EXIT_OK


def _batch_worker(job):
    path, ns = job
    return _analyze(path, "auto", ns)


def cmd_batch(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_PARSE
    files = sorted(directory.glob("*.germ"), key=lambda p: p.name)
    ns = argparse.Namespace(
        order=args.order, max_degree=args.max_degree, routes=args.routes, timings=args.timings
    )
    jobs = [(str(p), ns) for p in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_worker, jobs))
    else:
        results = [_batch_worker(j) for j in jobs]

    entries, failures = [], []
    worst = EXIT_OK
    for path, (report, code, message) in zip(files, results):
        entry = {"file": path.name, "exit_code": code}
        if report is not None:
            entry["report"] = report
        if message:
            entry["message"] = message
        entries.append(entry)
        if code in (EXIT_PARSE, EXIT_DOMAIN):
            failures.append({"file": path.name, "exit_code": code, "error": message})
            worst = max(worst, code)
    out = {"reports": entries, "failures": failures, "version": __version__}
    if args.format == "json":
        sys.stdout.write(to_json(out))
    else:
        for entry in entries:
            print(f"== {entry['file']} (exit {entry['exit_code']})")
            if "report" in entry:
                sys.stdout.write(render_text(entry["report"]))
            elif entry.get("message"):
                print(f"error: {entry['message']}")
        print(f"{len(entries)} files, {len(failures)} failed")
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontcount",
        description="Frontality, wave-front and D4-count analysis of polynomial map germs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, counting=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-degree", dest="max_degree", type=int, default=None,
                       help="degree bound for colength computations (default 24)")
        p.add_argument("--order", type=int, default=None,
                       help="truncation order for alpha, beta (default 12)")
        if counting:
            p.add_argument("--routes", choices=("all", "corollary"), default=None)
        p.add_argument("--timings", action="store_true",
                       help="add wall-clock timings under a 'timings' key")

    p = sub.add_parser("check", help="frontality, corank and wave-front test")
    p.add_argument("file")
    common(p, counting=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count-d4", help="number of D4 points in a stable frontal unfolding")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_count_d4)

    p = sub.add_parser("milnor", help="Milnor number of a function germ")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file")
    p.add_argument("--vars", help="comma-separated variable order")
    p.add_argument("--max-degree", dest="max_degree", type=int, default=24)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("batch", help="analyze every *.germ file in a directory")
    p.add_argument("directory")
    common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key in ("order", "max_degree"):
        value = getattr(args, key, None)
        if value is not None and value < 1:
            parser.error(f"--{key.replace('_', '-')} must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
