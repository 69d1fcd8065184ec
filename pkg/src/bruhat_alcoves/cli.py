"""Command-line interface: balls, intervals, KL tables, sweeps and figures.

Exit codes: 0 on success, 1 when a sweep found a counterexample, 2 on
usage errors (argparse's convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Tuple

from . import a2, classify, kl, render, translations
from .coxeter import Ball, GroupSpec, cache_path, load_ball, save_ball
from .poly import QPoly

GROUPS = {
    "A2aff": ("A", 2),
    "A2": ("A", 2),
    "A3": ("A", 3),
    "B2": ("B", 2),
    "C2": ("B", 2),
    "G2": ("G", 2),
}


def _parse_group(name: str) -> Tuple[str, int]:
    try:
        return GROUPS[name]
    except KeyError:
        raise SystemExit(2)


def _element_from_args(args, prefix: str) -> a2.A2Elt:
    word = getattr(args, prefix)
    th = getattr(args, "%s_theta" % prefix)
    ths = getattr(args, "%s_theta_s" % prefix)
    wall = getattr(args, "%s_wall" % prefix)
    given = [v for v in (word, th, ths, wall) if v is not None]
    if len(given) != 1:
        print("exactly one of --%s/--%s-theta/--%s-theta-s/--%s-wall is required"
              % (prefix, prefix, prefix, prefix), file=sys.stderr)
        raise SystemExit(2)
    if word is not None:
        return a2.A2Elt.from_word(tuple(int(c) % 3 for c in word))
    if th is not None:
        return a2.theta(*th)
    if ths is not None:
        return a2.theta_s(*ths)
    return a2.wall_elt(wall)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _element_record(z: a2.A2Elt) -> dict:
    return {
        "word": "".join(str(i) for i in z.word()),
        "length": z.length,
        "cen": [int(z.cen[0]), int(z.cen[1])],
        "zone": a2.zone_of(z),
    }


def _get_ball(args, family: str, rank: int, length: int) -> Ball:
    path = args.cache
    if path is None and os.environ.get("BRUHAT_CACHE_DIR"):
        path = cache_path(GroupSpec(family, rank), length)
    if path and os.path.exists(path):
        ball = load_ball(path)
        if ball.spec.family == family and ball.spec.rank == rank and ball.length_bound >= length:
            return ball
    ball = Ball(GroupSpec(family, rank), length)
    if path:
        save_ball(ball, path)
    return ball


# -- subcommands -------------------------------------------------------------


def cmd_ball(args) -> int:
    family, rank = _parse_group(args.group)
    ball = _get_ball(args, family, rank, args.max_len)
    sizes = {}
    for l in ball.lengths:
        sizes[l] = sizes.get(l, 0) + 1
    if args.format == "csv":
        rows = [["word", "length"]] + [
            ["".join(str(i) for i in ball.words[k]), str(ball.lengths[k])]
            for k in range(ball.size)
        ]
        _emit(args, _csv_text(rows))
    else:
        _emit(
            args,
            json.dumps(
                {
                    "schema": "ball.v1",
                    "group": args.group,
                    "length_bound": ball.length_bound,
                    "size": ball.size,
                    "sizes_by_length": {str(k): v for k, v in sorted(sizes.items())},
                },
                indent=2,
                sort_keys=True,
            )
            + "\n",
        )
    return 0


def cmd_interval(args) -> int:
    x = _element_from_args(args, "x")
    y = _element_from_args(args, "y")
    elements = a2.interval_geom(x, y)
    lc = classify.PosetData.from_a2_interval(elements).lc_sequence() if elements else ()
    if args.format == "csv":
        rows = [["word", "length", "cen_u", "cen_v", "zone"]]
        for z in elements:
            r = _element_record(z)
            rows.append([r["word"], str(r["length"]), str(r["cen"][0]), str(r["cen"][1]), r["zone"]])
        _emit(args, _csv_text(rows))
    else:
        doc = {
            "schema": "interval.v1",
            "x": _element_record(x),
            "y": _element_record(y),
            "size": len(elements),
            "lc": list(lc),
            "elements": [_element_record(z) for z in elements],
        }
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_kl(args) -> int:
    family, rank = _parse_group(args.group)
    if (family, rank) != ("A", 2):
        print("closed KL formulas are specific to A2aff", file=sys.stderr)
        return 2
    ball = _get_ball(args, family, rank, args.max_len)
    rows = [["x", "y", "coeffs", "provenance"]]
    records = []
    doms = [a2.identity()] + [
        z
        for l in range(3, args.max_len + 1)
        for z in a2.enumerate_length(l)
        if z.is_dominant()
    ]
    for y in doms:
        if y.is_identity() or y.normal_form.kind not in ("theta", "theta_s"):
            continue
        for x in doms:
            if not a2.leq_geom(x, y):
                continue
            res = kl.kl_dominant(x, y, ball=ball)
            xw = "".join(str(i) for i in x.word())
            yw = "".join(str(i) for i in y.word())
            rows.append([xw, yw, " ".join(str(c) for c in res.poly), res.provenance])
            records.append(
                {"x": xw, "y": yw, "coeffs": list(res.poly), "provenance": res.provenance}
            )
    if args.format == "csv":
        _emit(args, _csv_text(rows))
    else:
        _emit(
            args,
            json.dumps({"schema": "kl-table.v1", "rows": records}, indent=2, sort_keys=True)
            + "\n",
        )
    return 0


def _emit_report(args, report) -> int:
    if args.format == "csv":
        _emit(args, _csv_text(report.csv_rows()))
    else:
        _emit(args, report.to_json() + "\n")
    return 0 if report.ok else 1


def cmd_classify(args) -> int:
    if args.mode == "thick":
        report = classify.thick_census(args.max_len, args.len_xy)
        return _emit_report(args, report)
    import time

    t0 = time.time()
    report = classify.SweepReport(
        group="A2~ lower classification",
        bounds={"max_len": args.max_len},
        pairs_tested=0,
    )
    for l in range(1, args.max_len + 1):
        layer = a2.enumerate_length(l)
        for i in range(len(layer)):
            for j in range(i, len(layer)):
                report.pairs_tested += 1
                try:
                    classify.lower_classification(layer[i], layer[j])
                except classify.ClassifyError as exc:
                    report.counterexamples.append({"error": str(exc)})
    report.runtime = time.time() - t0
    return _emit_report(args, report)


def cmd_verify_table1(args) -> int:
    family, rank = _parse_group(args.type)
    report = classify.conjecture_e_sweep(family, rank, args.len_x, args.len_xy)
    return _emit_report(args, report)


def cmd_stabilize(args) -> int:
    x = _element_from_args(args, "x")
    y = _element_from_args(args, "y")
    lam = tuple(args.lam)
    n0 = classify.stabilization_find_n0(x, y, lam, args.n_max)
    doc = {
        "schema": "stabilize.v1",
        "x": _element_record(x),
        "y": _element_record(y),
        "lam": list(lam),
        "n0": n0,
    }
    _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if n0 is not None else 1


def cmd_draw(args) -> int:
    chosen = [
        v
        for v in (args.star, args.c_polygon)
        if v is not None
    ]
    if args.interval:
        chosen.append(args.interval)
    if args.pgn:
        chosen.append(args.pgn)
    if len(chosen) != 1:
        print("choose exactly one of --star/--c-polygon/--interval/--pgn", file=sys.stderr)
        return 2

    def elt(word):
        return a2.A2Elt.from_word(tuple(int(c) % 3 for c in word))

    if args.star is not None:
        svg = render.figure_star(elt(args.star))
    elif args.c_polygon is not None:
        svg = render.figure_c_polygon(elt(args.c_polygon))
    elif args.interval:
        svg = render.figure_interval(elt(args.interval[0]), elt(args.interval[1]))
    else:
        svg = render.figure_pgn(elt(args.pgn[0]), elt(args.pgn[1]))
    _emit(args, svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhat-alcoves",
        description="Exact alcove-model computations for affine Weyl groups",
    )
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--cache", default=None, help="ball cache file")

    p = sub.add_parser("ball", help="build or load a length ball")
    common(p)
    p.add_argument("--group", default="A2aff")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(fn=cmd_ball)

    p = sub.add_parser("interval", help="enumerate a Bruhat interval in A2aff")
    common(p)
    p.add_argument("--group", default="A2aff")
    for pre in ("x", "y"):
        p.add_argument("--%s" % pre, default=None, help="generator word")
        p.add_argument("--%s-theta" % pre, nargs=2, type=int, default=None, metavar=("M", "N"))
        p.add_argument("--%s-theta-s" % pre, nargs=2, type=int, default=None, metavar=("M", "N"))
        p.add_argument("--%s-wall" % pre, type=int, default=None, metavar="K")
    p.set_defaults(fn=cmd_interval)

    p = sub.add_parser("kl", help="closed/oracle Kazhdan-Lusztig table")
    common(p)
    p.add_argument("--group", default="A2aff")
    p.add_argument("--max-len", type=int, default=12)
    p.set_defaults(fn=cmd_kl)

    p = sub.add_parser("classify", help="lower classification or thick census")
    common(p)
    p.add_argument("--mode", choices=("lower", "thick"), default="thick")
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--len-xy", type=int, default=8)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify-table1", help="coweight-translation conjecture sweep")
    common(p)
    p.add_argument("--type", default="A2")
    p.add_argument("--len-xy", type=int, default=6)
    p.add_argument("--len-x", type=int, default=10)
    p.set_defaults(fn=cmd_verify_table1)

    p = sub.add_parser("stabilize", help="find the stabilization threshold")
    common(p)
    for pre in ("x", "y"):
        p.add_argument("--%s" % pre, default=None)
        p.add_argument("--%s-theta" % pre, nargs=2, type=int, default=None)
        p.add_argument("--%s-theta-s" % pre, nargs=2, type=int, default=None)
        p.add_argument("--%s-wall" % pre, type=int, default=None)
    p.add_argument("--lam", nargs=2, type=int, required=True, metavar=("A", "B"))
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(fn=cmd_stabilize)

    p = sub.add_parser("draw", help="emit an SVG figure")
    common(p)
    p.add_argument("--star", default=None, help="generator word")
    p.add_argument("--c-polygon", default=None, help="generator word")
    p.add_argument("--interval", nargs=2, default=None, metavar=("X", "Y"))
    p.add_argument("--pgn", nargs=2, default=None, metavar=("X", "Y"))
    p.set_defaults(fn=cmd_draw)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (a2.A2Error, kl.KlError, classify.ClassifyError, render.RenderError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
