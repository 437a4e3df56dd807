"""Command-line interface: generate, find, verify, scan, measure.

One executable (`squarelab`) with verb subcommands.  Set data goes to stdout
or --out files in the plain-text formats of :mod:`squarelab.core_sets`;
diagnostics and the one-line JSON summaries of `find` go to stderr.  Exit
status: 0 success, 1 a verification/bound check failed, 2 usage, parameter,
format, or budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from .bounds_report import (
    DEFAULT_SEED,
    build_report,
    family_scan,
    verify_construction,
)
from .core_sets import (
    IntSet1D,
    PointSet2D,
    SquareLabError,
    format_intset_text,
    format_pointset_text,
    parse_intset_text,
    parse_pointset_text,
)
from .dimension_lab import dyadic_box_count_2d, covering_count_1d, falconer_ratios
from .finders import (
    find_boundary_centers_2d,
    find_centers_1d,
    find_vertex_centers_2d,
)

__all__ = ["main", "build_parser"]


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        _say(f"wrote {out}")


def _read_intset(path: str) -> IntSet1D:
    return parse_intset_text(Path(path).read_text(), source=path)


def _read_pointset(path: str) -> PointSet2D:
    return parse_pointset_text(Path(path).read_text(), source=path)


# ---------------------------------------------------------------------------
# gen

def _cmd_gen_dk(args: argparse.Namespace) -> int:
    s = cons.gen_Dk(args.k)
    _emit(format_intset_text(s, header=f"digit set, level {args.k}, {len(s)} elements"),
          args.out)
    return 0


def _cmd_gen_an(args: argparse.Namespace) -> int:
    s = cons.gen_AN(args.p)
    _emit(format_intset_text(
        s, header=f"interpolating set, depth {args.p}, {len(s)} elements"), args.out)
    return 0


def _cmd_gen_vertex(args: argparse.Namespace) -> int:
    b, s = cons.gen_vertex_example(args.k)
    Path(args.out_b).write_text(format_pointset_text(
        b, header=f"vertex example points, level {args.k}"))
    Path(args.out_s).write_text(format_pointset_text(
        s, header=f"vertex example centers, level {args.k}"))
    _say(f"wrote {args.out_b} ({len(b)} points) and {args.out_s} ({len(s)} centers)")
    return 0


def _cmd_gen_boundary(args: argparse.Namespace) -> int:
    b, s = cons.gen_boundary_example(args.k)
    Path(args.out_b).write_text(format_pointset_text(
        b, header=f"boundary example points, level {args.k}"))
    Path(args.out_s).write_text(format_pointset_text(
        s, header=f"boundary example centers, level {args.k}"))
    _say(f"wrote {args.out_b} ({len(b)} points) and {args.out_s} ({len(s)} centers)")
    return 0


def _cmd_gen_cantor(args: argparse.Namespace) -> int:
    trunc = cons.gen_cantor_truncation(args.s, args.p)
    side = args.which
    if trunc.mode == "exact":
        chosen = trunc.a_set if side == "a" else trunc.t_set
        _emit(format_intset_text(
            chosen, header=f"cantor truncation {side}-side, s={trunc.s}, "
                           f"depth {trunc.depth}, scale {trunc.scale}"), args.out)
    else:
        vals = trunc.a_floats if side == "a" else trunc.t_floats
        lines = [f"# cantor truncation {side}-side, s={trunc.s}, depth {trunc.depth}, "
                 f"float mode, abs error <= {trunc.error_bound:.3e}"]
        lines += [repr(v) for v in vals]
        _emit("\n".join(lines) + "\n", args.out)
        _say("float mode: output is a report, not a round-trippable integer set")
    return 0


def _cmd_gen_countable(args: argparse.Namespace) -> int:
    trunc = cons.gen_countable_truncation(args.alpha, args.K)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"alpha": trunc.alpha, "K": trunc.K, "scale": trunc.scale, "blocks": []}
    for blk in trunc.blocks:
        s_file, b_file = f"block{blk.k}_s.txt", f"block{blk.k}_b.txt"
        (out / s_file).write_text(format_pointset_text(
            blk.centers, header=f"block {blk.k} centers (scaled)"))
        (out / b_file).write_text(format_pointset_text(
            blk.boundary_set, header=f"block {blk.k} strip points (scaled)"))
        manifest["blocks"].append({
            "k": blk.k, "n": blk.n, "factor": blk.factor,
            "offset": list(blk.offset), "s_file": s_file, "b_file": b_file,
            "s_size": len(blk.centers), "b_size": len(blk.boundary_set),
        })
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    _say(f"wrote {len(trunc.blocks)} blocks and manifest.json under {out}")
    return 0


def _cmd_gen_splice(args: argparse.Namespace) -> int:
    raw = json.loads(Path(args.patterns).read_text())
    patterns = raw["patterns"] if isinstance(raw, dict) else raw
    if args.d == 2:
        patterns = [[tuple(cell) for cell in level] for level in patterns]
    a = tuple(int(v) for v in args.a.split(","))
    cells = cons.splice_En(patterns, a, d=args.d)
    if args.d == 1:
        text = "\n".join(str(v) for v in sorted(cells)) + "\n"
    else:
        text = "\n".join(f"{x} {y}" for x, y in sorted(cells)) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# find

def _find_summary(input_size: int, centers: int, bound: float | None,
                  bound_ok: bool, path: str | None) -> None:
    summary = {"input_size": input_size, "centers": centers,
               "bound": bound, "bound_ok": bound_ok}
    line = json.dumps(summary)
    _say(line)
    if path:
        Path(path).write_text(line + "\n")


def _cmd_find_centers1d(args: argparse.Namespace) -> int:
    a = _read_intset(getattr(args, "in"))
    count = find_centers_1d(a, mode="count")
    bound_ok = count**3 <= 16 * len(a) ** 8
    if args.count:
        _emit(f"{count}\n", args.out)
    else:
        centers = sorted(find_centers_1d(a, mode="enumerate"))
        _emit("".join(f"{c.X} {c.Y}\n" for c in centers), args.out)
    _find_summary(len(a), count, float(2 * len(a) ** 2) ** (4 / 3), bound_ok,
                  args.summary)
    return 0 if bound_ok else 1


def _cmd_find_vertices(args: argparse.Namespace) -> int:
    b = _read_pointset(getattr(args, "in"))
    centers = find_vertex_centers_2d(b, mode="enumerate")
    count = len(centers)
    bound_ok = count**3 <= 16 * len(b) ** 4
    if args.count:
        _emit(f"{count}\n", args.out)
    else:
        _emit("".join(f"{c.X} {c.Y}\n" for c in sorted(centers)), args.out)
    _find_summary(len(b), count, float(2 * len(b)) ** (4 / 3), bound_ok, args.summary)
    return 0 if bound_ok else 1


def _cmd_find_boundaries(args: argparse.Namespace) -> int:
    b = _read_pointset(getattr(args, "in"))
    found = find_boundary_centers_2d(b, args.rmax, mode="enumerate")
    count = len(found)
    if args.count:
        _emit(f"{count}\n", args.out)
    else:
        rows = sorted((w.center.X, w.center.Y, w.radius) for w in found)
        _emit("".join(f"{x} {y} {r}\n" for x, y, r in rows), args.out)
    # No per-run counting theorem pins boundary pairs; the summary stays vacuous.
    _find_summary(len(b), count, None, True, args.summary)
    return 0


# ---------------------------------------------------------------------------
# verify / scan / measure

def _cmd_verify(args: argparse.Namespace) -> int:
    kwargs: dict = {"seed": args.seed}
    if args.target == "dk":
        kwargs["k"] = args.k
    elif args.target == "an":
        kwargs["p"] = args.p
    elif args.target == "boundary":
        kwargs["k"] = args.k
    else:
        kwargs.update(alpha=args.alpha, K=args.K)
    checks = verify_construction(args.target, **kwargs)
    report = build_report(f"verify:{args.target}", checks,
                          seed=args.seed if args.seed is not None else DEFAULT_SEED)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    bad = [c for c in checks if not c.ok]
    for c in bad:
        _say(f"FAILED {c.name}: lhs={c.lhs} rhs={c.rhs}")
    return 1 if bad else 0


def _cmd_scan(args: argparse.Namespace) -> int:
    ks = list(range(args.kmin, args.kmax + 1))
    rep = family_scan(args.family, ks, jobs=args.jobs)
    if args.format == "csv":
        lines = ["param,n1,n2,slope,target"]
        slope_by_hi = {s.hi: s for s in rep.slopes}
        for param, n1, n2 in rep.rows:
            s = slope_by_hi.get(param)
            slope_txt = "" if s is None or not s.ok else f"{s.slope:.6f}"
            lines.append(f"{param},{n1},{n2},{slope_txt},{rep.target:.6f}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        report = build_report(f"scan:{args.family}", [], reports=[rep])
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_cover(args: argparse.Namespace) -> int:
    a = _read_intset(getattr(args, "in"))
    _emit(f"{covering_count_1d(a, args.len)}\n", args.out)
    return 0


def _cmd_boxcount(args: argparse.Namespace) -> int:
    pts = _read_pointset(getattr(args, "in"))
    levels = [int(v) for v in args.m.split(",")]
    if len(levels) == 1:
        _emit(f"{dyadic_box_count_2d(pts, levels[0])}\n", args.out)
    else:
        lines = ["scale,count"]
        lines += [f"{m},{dyadic_box_count_2d(pts, m)}" for m in levels]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_ratios(args: argparse.Namespace) -> int:
    rows = falconer_ratios(args.s, args.jmax, args.which, sequence=args.sequence)
    lines = ["j,ratio,target"]
    lines += [f"{r.j},{r.value:.9f},{r.target:.9f}" for r in rows]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarelab",
        description="Generate, search, and verify discrete axis-parallel "
                    "square configurations.")
    parser.add_argument("--jobs", type=int, default=os.cpu_count(),
                        help="worker threads for scans (results are identical "
                             "for any value; other commands run serially)")
    sub = parser.add_subparsers(dest="command")

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write output here instead of stdout")

    gen = sub.add_parser("gen", help="generate a construction").add_subparsers(
        dest="what")

    g = gen.add_parser("dk", help="level-k digit set")
    g.add_argument("--k", type=int, required=True)
    add_out(g)
    g.set_defaults(func=_cmd_gen_dk)

    g = gen.add_parser("an", help="depth-p interpolating set")
    g.add_argument("--p", type=int, required=True)
    add_out(g)
    g.set_defaults(func=_cmd_gen_an)

    g = gen.add_parser("vertex-example", help="square-vertex example (B, S)")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--out-b", required=True, help="file for the point set B")
    g.add_argument("--out-s", required=True, help="file for the center grid S")
    g.set_defaults(func=_cmd_gen_vertex)

    g = gen.add_parser("boundary-example", help="square-boundary example (B, S)")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--out-b", required=True)
    g.add_argument("--out-s", required=True)
    g.set_defaults(func=_cmd_gen_boundary)

    g = gen.add_parser("cantor", help="Cantor-type truncation (scaled integer sets)")
    g.add_argument("--s", required=True, help="dimension parameter, e.g. 2 or 8/5")
    g.add_argument("--p", type=int, required=True, help="truncation depth")
    g.add_argument("--which", choices=("a", "t"), default="a",
                   help="emit the sparse (a) or full (t) side")
    add_out(g)
    g.set_defaults(func=_cmd_gen_cantor)

    g = gen.add_parser("countable", help="scaled block family (writes a directory)")
    g.add_argument("--alpha", type=int, required=True)
    g.add_argument("--K", type=int, required=True, help="number of blocks")
    g.add_argument("--out-dir", required=True)
    g.set_defaults(func=_cmd_gen_countable)

    g = gen.add_parser("splice", help="concatenate dyadic cell patterns")
    g.add_argument("--patterns", required=True,
                   help="JSON file: list of per-level cell lists")
    g.add_argument("--a", required=True, help="depth checkpoints, e.g. 0,2,4")
    g.add_argument("--d", type=int, choices=(1, 2), default=1)
    add_out(g)
    g.set_defaults(func=_cmd_gen_splice)

    find = sub.add_parser("find", help="search a set file for square centers"
                          ).add_subparsers(dest="what")

    def add_find_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--in", required=True, help="input set file")
        p.add_argument("--count", action="store_true",
                       help="print only the center count")
        p.add_argument("--summary", help="also write the JSON summary here")
        add_out(p)

    f = find.add_parser("centers1d", help="common-radius center pairs of a 1D set")
    add_find_common(f)
    f.set_defaults(func=_cmd_find_centers1d)

    f = find.add_parser("vertices", help="four-corner square centers in a 2D set")
    add_find_common(f)
    f.set_defaults(func=_cmd_find_vertices)

    f = find.add_parser("boundaries", help="full square boundaries in a 2D set")
    add_find_common(f)
    f.add_argument("--rmax", type=int, required=True, help="largest radius to try")
    f.set_defaults(func=_cmd_find_boundaries)

    ver = sub.add_parser("verify", help="replay a construction's defining property"
                         ).add_subparsers(dest="target")
    v = ver.add_parser("dk")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--seed", type=int)
    add_out(v)
    v.set_defaults(func=_cmd_verify, target="dk")
    v = ver.add_parser("an")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--seed", type=int)
    add_out(v)
    v.set_defaults(func=_cmd_verify, target="an")
    v = ver.add_parser("boundary")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--seed", type=int)
    add_out(v)
    v.set_defaults(func=_cmd_verify, target="boundary")
    v = ver.add_parser("countable")
    v.add_argument("--alpha", type=int, required=True)
    v.add_argument("--K", type=int, required=True)
    v.add_argument("--seed", type=int)
    add_out(v)
    v.set_defaults(func=_cmd_verify, target="countable")

    for name in ("scan", "exponents"):  # same command, both spellings accepted
        sc = sub.add_parser(name, help="size-law scan across a family")
        sc.add_argument("--family", required=True,
                        choices=("dk_vertex", "dk_boundary", "dk_size", "an_cover"))
        sc.add_argument("--kmin", type=int, required=True)
        sc.add_argument("--kmax", type=int, required=True)
        sc.add_argument("--format", choices=("csv", "json"), default="csv")
        add_out(sc)
        sc.set_defaults(func=_cmd_scan)

    c = sub.add_parser("cover", help="minimal interval cover count of a 1D set")
    c.add_argument("--in", required=True)
    c.add_argument("--len", type=int, required=True, help="interval length")
    add_out(c)
    c.set_defaults(func=_cmd_cover)

    c = sub.add_parser("boxcount", help="dyadic box count of a 2D set")
    c.add_argument("--in", required=True)
    c.add_argument("--m", required=True,
                   help="level, or comma list of levels for a CSV table")
    add_out(c)
    c.set_defaults(func=_cmd_boxcount)

    c = sub.add_parser("ratios", help="finite dimension-ratio table (CSV)")
    c.add_argument("--s", required=True, help="dimension parameter, e.g. 2 or 8/5")
    c.add_argument("--jmax", type=int, required=True)
    c.add_argument("--which", choices=("upper", "lower"), required=True)
    c.add_argument("--sequence", choices=("t", "a"), default="t",
                   help="full digit boxes (t) or sparse digit sets (a)")
    add_out(c)
    c.set_defaults(func=_cmd_ratios)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", None)
    if func is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return func(args)
    except SquareLabError as exc:
        _say(f"error: {exc}")
        return 2
    except OSError as exc:
        _say(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
