"""``rectlevel`` command line: generate, analyze, verify, bench, render.

Exit codes: 0 success, 1 check failure or engine mismatch, 2 bad input or parameters.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import generators as gen
from .arrangement import analyze_sweep, enumerate_vertices_oracle, first_difference
from .bounds import InstanceAnalysis
from .geometry import GeneralPositionError, require_general_position
from .instance_io import InstanceFormatError, atomic_write_text, read_instance, write_instance
from .piercing import greedy_lines
from .report import build_report, dumps
from .svg import render_svg

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT = 0, 1, 2
DEFAULT_ORACLE_CAP = 1500
CSV_HEADER = "n,vertices,engine,micros"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("RECTLEVEL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RECTLEVEL_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} requires {' '.join(missing)}")


def make_family(kind: str, args):
    if kind == "grid":
        _require(args, "m")
        return gen.gen_grid(args.m)
    if kind == "staircase":
        _require(args, "m")
        return gen.gen_staircase(args.m)
    if kind == "tightness":
        _require(args, "n", "p")
        return gen.gen_tightness(args.n, args.p)
    if kind == "random":
        _require(args, "n")
        return gen.gen_random(args.n, args.seed, args.span)
    if kind == "clustered":
        _require(args, "n", "clusters")
        return gen.gen_clustered(args.n, args.clusters, args.seed)
    raise UsageError(f"unknown kind {kind!r}")


def _load(path):
    f = read_instance(path)
    require_general_position(f)
    return f


def _emit_json(doc, path, out):
    text = dumps(doc)
    if path:
        atomic_write_text(path, text)
    else:
        out.write(text)


def cmd_generate(args, out):
    if args.seed is None:
        args.seed = default_seed()
    f = make_family(args.kind, args)
    write_instance(args.out, f, comment=f"kind={args.kind}")
    print(f"{args.kind} n={f.n} file={args.out}", file=out)
    return EXIT_OK


def _engine_profile(f, engine, cap):
    if engine == "oracle" and f.n > cap:
        raise UsageError(f"oracle engine capped at n <= {cap} (got n={f.n}); raise --oracle-cap")
    return enumerate_vertices_oracle(f) if engine == "oracle" else analyze_sweep(f)


def cmd_analyze(args, out):
    f = _load(args.input)
    ks = args.k or [0]
    engine = "sweep" if args.engine == "both" else args.engine
    if args.engine in ("oracle", "both") and f.n > args.oracle_cap:
        raise UsageError(f"oracle engine capped at n <= {args.oracle_cap} (got n={f.n}); raise --oracle-cap")
    if args.engine == "both":
        a = enumerate_vertices_oracle(f)
        b = analyze_sweep(f)
        diff = first_difference(a, b)
        if diff is not None:
            print(f"engine mismatch: oracle {diff[0]} vs sweep {diff[1]}", file=sys.stderr)
            return EXIT_FAIL
    analysis = InstanceAnalysis(f, engine)
    doc = build_report(analysis, ks, source=os.path.basename(args.input))
    doc["engine"] = args.engine
    _emit_json(doc, args.json, out)
    if args.json:
        levels = " ".join(f"leq_{k}={v}" for k, v in sorted(doc["analysis"]["leq_k"].items(), key=lambda t: int(t[0])))
        print(f"n={f.n} union_complexity={doc['analysis']['union_complexity']} {levels}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    f = _load(args.input)
    ks = args.k or [0]
    analysis = InstanceAnalysis(f, args.engine)
    doc = build_report(analysis, ks, source=os.path.basename(args.input))
    failed = []
    for k in sorted(set(ks)):
        r = analysis.report(k)
        if not r.passed:
            failed.append({"k": k, "failed_checks": [c._asdict() for c in r.failed_checks]})
    if failed:
        doc["counterexample_dump"] = {"instance": f.coords(), "failures": failed}
    _emit_json(doc, args.json, out)
    if args.json:
        print(("PASS" if not failed else "FAIL") + f" n={f.n} k={','.join(map(str, sorted(set(ks))))}", file=out)
    return EXIT_OK if not failed else EXIT_FAIL


def bench_family(kind: str, n: int, seed: int):
    """Family of roughly ``n`` rectangles at moderate density (V = O(n) for random)."""
    if kind == "random":
        return gen.gen_random(n, seed, span=max(1, round(4 * math.sqrt(n))))
    if kind == "grid":
        return gen.gen_grid(max(1, n // 2))
    if kind == "staircase":
        return gen.gen_staircase(n)
    if kind == "clustered":
        return gen.gen_clustered(n, max(1, n // 8), seed)
    if kind == "tightness":
        return gen.gen_tightness(max(16, n - n % 16), 6)
    raise UsageError(f"unknown kind {kind!r}")


def cmd_bench(args, out):
    seed = default_seed() if args.seed is None else args.seed
    if args.sizes != sorted(args.sizes):
        raise UsageError("--sizes must be ascending")
    rows = [CSV_HEADER]
    for n in args.sizes:
        f = bench_family(args.kind, n, seed)
        engines = ["sweep"] + (["oracle"] if f.n <= args.oracle_cap else [])
        for engine in engines:
            fn = analyze_sweep if engine == "sweep" else enumerate_vertices_oracle
            t0 = time.perf_counter()
            prof = fn(f)
            micros = int((time.perf_counter() - t0) * 1e6)
            rows.append(f"{f.n},{len(prof.vertices)},{engine},{micros}")
    text = "\n".join(rows) + "\n"
    if args.csv:
        atomic_write_text(args.csv, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_render(args, out):
    f = _load(args.input)
    prof = analyze_sweep(f)
    h = v = None
    if args.show_lines:
        h, v = greedy_lines(f, "horizontal"), greedy_lines(f, "vertical")
    try:
        atomic_write_text(args.out, render_svg(f, prof, args.k, h, v))
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    print(f"svg rects={f.n} vertices={sum(1 for x in prof.vertices if x.depth <= args.k)} file={args.out}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rectlevel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated instance file")
    g.add_argument("--kind", required=True, choices=sorted(gen.GENERATORS))
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--clusters", type=int)
    g.add_argument("--span", type=int, help="max side length in rank units (random only)")
    g.add_argument("--seed", type=int, help="defaults to $RECTLEVEL_SEED or 0")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    for name, func, helptext in (("analyze", cmd_analyze, "arrangement and classification report"),
                                 ("verify", cmd_verify, "check every bound; exit 1 on any failure")):
        a = sub.add_parser(name, help=helptext)
        a.add_argument("--in", dest="input", required=True)
        a.add_argument("--k", type=_int_list, default=None, help="depth threshold(s), e.g. 0 or 0,1,2")
        a.add_argument("--json", help="write the report here (default: stdout)")
        if name == "analyze":
            a.add_argument("--engine", choices=("oracle", "sweep", "both"), default="sweep")
        else:
            a.add_argument("--engine", choices=("oracle", "sweep"), default="sweep")
        a.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
        a.set_defaults(func=func)

    b = sub.add_parser("bench", help="time the engines on growing instances")
    b.add_argument("--kind", default="random", choices=sorted(gen.GENERATORS))
    b.add_argument("--sizes", type=_int_list, required=True)
    b.add_argument("--seed", type=int)
    b.add_argument("--csv")
    b.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw an instance as SVG")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--show-lines", action="store_true")
    r.add_argument("--k", type=int, default=0)
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    if getattr(args, "k", None) is not None and isinstance(args.k, list) and any(k < 0 for k in args.k):
        print("error: k must be non-negative", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args, out)
    except (UsageError, gen.GeneratorParameterError, InstanceFormatError, GeneralPositionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
