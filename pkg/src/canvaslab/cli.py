"""``canvaslab`` command line.

Exit codes: 0 success or a positive verdict, 1 a negative verdict, 2 usage or
format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .canvas import Canvas, validate
from .colorer import cache_from_env, extend, find_extension
from .critical import extract_minimal_extender
from .deficiency import PAPER_PARAMS, Params, ParamsError
from .draw import DrawError, to_dot, to_svg
from .fileformat import CanvasFileError, coloring_line, dumps, load, subgraph_canvas
from .genlab import GenSpec, GenSpecError
from .verifier import ReplayError, criticality_certificate, parse_suite, replay_certificate, scan
from .critical import is_critical_canvas

STRUCTURAL = {"bad-embedding", "not-2-connected", "outer-not-cycle", "missing-list"}


class UsageError(Exception):
    pass


def _load(path: str) -> Canvas:
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except CanvasFileError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_valid(path: str) -> Canvas:
    t = _load(path)
    bad = [f for f in validate(t).violations if f.tag in STRUCTURAL]
    if bad:
        raise UsageError(f"{path}: " + "; ".join(_finding(f) for f in bad))
    return t


def _finding(f) -> str:
    parts = [f.tag]
    if f.vertex is not None:
        parts.append(f"vertex {f.vertex}")
    if f.detail:
        parts.append(f.detail)
    return ": ".join(parts)


def _parse_phi(text: str) -> dict[int, int]:
    phi = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        v, sep, c = item.partition("=")
        if not sep:
            raise UsageError(f"bad --phi item {item!r}; expected v=c")
        try:
            phi[int(v)] = int(c)
        except ValueError:
            raise UsageError(f"bad --phi item {item!r}; expected integers") from None
    return phi


def cmd_validate(args) -> int:
    t = _load(args.path)
    report = validate(t)
    if report.ok:
        print("ok")
        return 0
    for f in report.violations:
        print(_finding(f))
    return 1


def cmd_color(args) -> int:
    t = _load_valid(args.path)
    phi = _parse_phi(args.phi) if args.phi else {}
    off = sorted(v for v in phi if v not in set(t.outer))
    if off:
        raise UsageError(f"--phi names vertices not on the outer cycle: {off}")
    try:
        coloring = extend(t.graph, t.lists, phi) if phi else find_extension(t.graph, t.lists, {})
    except ValueError as exc:
        raise UsageError(f"--phi: {exc}") from None
    if coloring is None:
        print("NO_EXTENSION")
        return 1
    print(coloring_line(coloring))
    return 0


def cmd_critical(args) -> int:
    t = _load_valid(args.path)
    cert = is_critical_canvas(t, cache_from_env())
    sys.stdout.write(criticality_certificate(t, cert).decode())
    return 0 if cert.verdict else 1


def cmd_extract(args) -> int:
    t = _load_valid(args.path)
    h = extract_minimal_extender(t.graph, t.outer, t.lists, cache_from_env())
    sys.stdout.write(dumps(subgraph_canvas(t, h, t.name)))
    return 0


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_scan(args) -> int:
    try:
        p = Params.parse(args.params) if args.params else PAPER_PARAMS
    except (ParamsError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--params: {exc}") from None
    try:
        suite = parse_suite(args.suite) if args.suite else None
        specs = [
            GenSpec(
                outer_len=k,
                max_internal=args.m,
                max_edges=args.max_edges,
                boundary_list_mode=args.mode,
                mixed_sizes=tuple(_int_list(args.sizes)),
                universe=args.universe,
                seed=args.seed,
                symmetry_reduction=not args.no_symmetry,
                list_samples=args.samples,
            )
            for k in _int_list(args.k)
        ]
    except (GenSpecError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    start = time.monotonic()

    def progress(state):
        if args.progress and state.instances % 500 == 0:
            print(f"{state.instances} instances, {state.critical} critical", file=sys.stderr)

    report = scan(
        specs,
        p,
        suite,
        jobs=args.jobs,
        replicate=args.replicate,
        verbose=args.verbose,
        report_path=args.report,
        checkpoint=args.checkpoint,
        cache_dir=None,
        progress=progress,
    )
    elapsed = time.monotonic() - start
    if args.report is None:
        sys.stdout.write(report.text())
    f = report.footer
    print(
        f"seed {args.seed}: {f['instances']} instances, {f['critical']} critical, "
        f"{f['violations']} violations, {elapsed:.1f}s",
        file=sys.stderr,
    )
    return 0 if f["violations"] == 0 else 1


def cmd_draw(args) -> int:
    t = _load(args.path)
    try:
        text = to_dot(t) if args.dot else to_svg(t)
    except DrawError as exc:
        raise UsageError(f"{args.path}: {exc}") from None
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_replay(args) -> int:
    try:
        with open(args.path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"{args.path}: {exc.strerror}") from None
    try:
        res = replay_certificate(data)
    except ReplayError as exc:
        raise UsageError(f"{args.path}: {exc}") from None
    status = "match" if res.matches else "MISMATCH"
    print(f"{status}: recorded {res.recorded}, recomputed {res.recomputed}" + (f" ({res.detail})" if res.detail else ""))
    return 0 if res.matches else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="canvaslab", description="List-coloring canvases: checks, extraction and theorem scans.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a canvas file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("color", help="extend a boundary precoloring")
    p.add_argument("path")
    p.add_argument("--phi", help="precoloring of outer vertices, e.g. 0=1,1=2")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("critical", help="print a criticality certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("extract", help="print the minimal extender as a canvas file")
    p.add_argument("path")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("scan", help="run the theorem checks over generated instances")
    p.add_argument("--k", default="3,4,5", help="outer cycle lengths (comma-separated)")
    p.add_argument("--m", type=int, default=2, help="maximum number of internal vertices")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--mode", choices=("singleton", "pairs", "mixed"), default="singleton")
    p.add_argument("--sizes", default="1,2", help="boundary list sizes in mixed mode")
    p.add_argument("--universe", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None, help="random list assignments per graph instead of all")
    p.add_argument("--no-symmetry", action="store_true", help="do not reduce lists under color permutations")
    p.add_argument("--params", help="epsilon,alpha,gamma (default 1/18,1/12,2/3)")
    p.add_argument("--suite", help="comma-separated theorem ids (default: all)")
    p.add_argument("--replicate", action="store_true", help="add the proof-replication diagnostics")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--report", help="report file (default: stdout)")
    p.add_argument("--verbose", action="store_true", help="one record per instance")
    p.add_argument("--progress", action="store_true", help="progress on stderr")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("draw", help="draw a canvas (Tutte layout)")
    p.add_argument("path")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--svg", action="store_true", help="SVG output (default)")
    fmt.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    p.add_argument("-o", "--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("replay", help="re-check a certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "jobs", 1) < 1:
        print("canvaslab: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"canvaslab {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
