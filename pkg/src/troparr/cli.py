"""Command-line front end: arrangement files in, deterministic reports
and SVG pictures out.

Exit codes: 0 ok, 2 parse error, 3 dimension mismatch, 4 internal
consistency violation (always an implementation bug, never bad data),
5 budget exceeded, 6 unsupported render dimension, 7 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

from .core import (
    Arrangement,
    ResourceLimitError,
    format_rational,
    parse_rational,
)
from .duality import check_correspondence, dual_subdivision, normalized_volume
from .geometry import is_generic, type_of_point
from .secondary import secondary_face_check

OK, PARSE, DIMENSION, INCONSISTENT, BUDGET, RENDER_DIM, IO = 0, 2, 3, 4, 5, 6, 7


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_arrangement_text(data: str) -> Arrangement:
    """Plain matrix form: first line "n d", then n rows of d rationals."""
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty arrangement file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("first line must be 'n d'")
    n, d = (int(x) for x in header)
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows after the header, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != d:
            raise ValueError(f"row {ln!r} does not have {d} entries")
        rows.append([parse_rational(p) for p in parts])
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    return Arrangement.from_rows(rows)


def parse_arrangement_json(data: str) -> Arrangement:
    """JSON document with keys n, d and apexes (rationals as strings)."""
    doc = json.loads(data)
    if not isinstance(doc, dict):
        raise ValueError("arrangement file must be a JSON object")
    try:
        n, d, apexes = doc["n"], doc["d"], doc["apexes"]
    except KeyError as missing:
        raise ValueError(f"missing key {missing}")
    if not isinstance(n, int) or not isinstance(d, int):
        raise ValueError("n and d must be integers")
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if not isinstance(apexes, list) or len(apexes) != n:
        raise ValueError("apexes must list n rows")
    rows = []
    for row in apexes:
        if not isinstance(row, list) or len(row) != d:
            raise ValueError("every apex row must list d entries")
        coords = []
        for x in row:
            if isinstance(x, str):
                coords.append(parse_rational(x))
            elif isinstance(x, int) and not isinstance(x, bool):
                coords.append(Fraction(x))
            else:
                raise ValueError(f"coordinates must be strings or integers, got {x!r}")
        rows.append(coords)
    return Arrangement.from_rows(rows)


def serialize_arrangement(arr: Arrangement, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {
            "n": arr.n,
            "d": arr.d,
            "apexes": [[format_rational(x) for x in row] for row in arr.rows()],
        }
        return json.dumps(doc, sort_keys=True) + "\n"
    if fmt == "text":
        lines = [f"{arr.n} {arr.d}"]
        lines += [" ".join(format_rational(x) for x in row) for row in arr.rows()]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def load_arrangement(path: str, fmt: str) -> tuple[Arrangement, bytes]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(IO, f"cannot read {path}: {exc}")
    try:
        text = raw.decode("utf-8")
        if fmt == "text":
            arr = parse_arrangement_text(text)
        else:
            arr = parse_arrangement_json(text)
    except (ValueError, TypeError) as exc:
        raise CliError(PARSE, f"cannot parse {path}: {exc}")
    return arr, raw


def _digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _axiom_line(name: str, result) -> str:
    if result.passed:
        return f"{name}: pass"
    detail = result.counterexample
    if name == "boundary":
        return f"{name}: fail missing {list(detail)}"
    if name == "elimination":
        A, B, j = detail
        return f"{name}: fail A={A.text()} B={B.text()} j={j}"
    if name == "comparability":
        A, B = detail
        return f"{name}: fail A={A.text()} B={B.text()}"
    if name == "surrounding":
        T, P = detail
        return f"{name}: fail T={T.text()} P={P.text()}"
    T, i, k = detail
    return f"{name}: fail T={T.text()} i={i} k={k}"


def _cmd_type_of(arr: Arrangement, args) -> tuple[int, list[str], dict]:
    parts = args.point.split(",")
    try:
        coords = [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise CliError(PARSE, f"bad point: {exc}")
    if len(coords) != arr.d:
        raise CliError(DIMENSION, f"point has {len(coords)} coordinates, need {arr.d}")
    T = type_of_point(arr, coords)
    return OK, [f"type: {T.text()}"], {"type": T.text()}


def _cmd_check(arr: Arrangement, args) -> tuple[int, list[str], dict]:
    verdict = check_correspondence(arr, args.budget)
    report = is_generic(arr)
    lines = [f"n: {arr.n}", f"d: {arr.d}", f"generic: {str(verdict.generic).lower()}"]
    apex_results = []
    for st in report.apexes:
        tail = "ok" if st.generic else f"offending {list(st.offending)}"
        lines.append(f"apex {st.index}: type {st.type.text()} total {st.total} bound {st.bound} {tail}")
        apex_results.append(
            {
                "index": st.index,
                "type": st.type.text(),
                "total": st.total,
                "bound": st.bound,
                "offending": list(st.offending),
            }
        )
    ax = verdict.axiom_report
    lines.append(f"types: {verdict.type_count}")
    names = ("boundary", "elimination", "comparability", "surrounding", "local_refinement")
    results_ax = {}
    for name in names:
        result = getattr(ax, name)
        lines.append(_axiom_line(name, result))
        results_ax[name] = "pass" if result.passed else "fail"
    lines.append(f"is_tom: {str(ax.is_tom).lower()}")
    lines.append(f"triangulation: {str(verdict.triangulation).lower()}")
    lines.append(f"cells: {verdict.cell_count}")
    lines.append(f"expected_simplices: {verdict.expected_simplices}")
    lines.append(f"consistent: {str(verdict.consistent).lower()}")
    results = {
        "n": arr.n,
        "d": arr.d,
        "generic": verdict.generic,
        "apexes": apex_results,
        "type_count": verdict.type_count,
        "axioms": results_ax,
        "is_tom": ax.is_tom,
        "triangulation": verdict.triangulation,
        "cell_count": verdict.cell_count,
        "expected_simplices": verdict.expected_simplices,
        "consistent": verdict.consistent,
    }
    return (OK if verdict.consistent else INCONSISTENT), lines, results


def _cmd_subdivision(arr: Arrangement, args) -> tuple[int, list[str], dict]:
    sub = dual_subdivision(arr, args.budget)
    lines = ["cells:"]
    cells_json = []
    for g in sub.sorted_cells():
        vol = normalized_volume(g)
        lines.append(f"  {g.text()} vol {vol}")
        cells_json.append({"edges": [list(e) for e in g.sorted_edges()], "volume": vol})
    results: dict = {"cells": cells_json}
    if args.flips:
        if is_generic(arr):
            lines.append("flips: arrangement is generic; subdivision is already a triangulation")
            results["flips"] = None
        else:
            verdict = secondary_face_check(arr, seed=args.seed, budget=args.budget)
            lines.append("flips:")
            flips_json = []
            for idx, t in enumerate(verdict.refinements, 1):
                lines.append(f"  triangulation {idx}:")
                lines.extend(f"    {g.text()}" for g in t.sorted_cells())
                gkz = verdict.gkz_vectors[idx - 1]
                entries = " ".join(
                    f"({i},{j})={gkz.entry(i, j)}"
                    for i in range(1, arr.n + 1)
                    for j in range(1, arr.d + 1)
                )
                lines.append(f"  gkz {idx}: {entries}")
                flips_json.append(
                    {
                        "cells": [[list(e) for e in g.sorted_edges()] for g in t.sorted_cells()],
                        "gkz": list(gkz.values),
                    }
                )
            lines.append(f"face_dimension: {verdict.face_dimension}")
            results["flips"] = {
                "triangulations": flips_json,
                "face_dimension": verdict.face_dimension,
            }
    return OK, lines, results


def render_svg(arr: Arrangement) -> str:
    """SVG picture of a d=3 arrangement: per hyperplane, three rays from
    the planar apex (v_i1 - v_i3, v_i2 - v_i3) in directions (1,1),
    (0,-1), (-1,0); hyperplanes with a non-generic apex are drawn bold."""
    report = is_generic(arr)
    pts = [(p[0] - p[2], p[1] - p[2]) for p in arr.apexes]
    xs = [float(x) for x, _ in pts]
    ys = [float(y) for _, y in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    margin = 0.2 * span
    ray_len = 3.0 * span
    lo_x, hi_x = min(xs) - margin, max(xs) + margin
    lo_y, hi_y = min(ys) - margin, max(ys) + margin
    # y axis points down in SVG; mirror so larger coordinates draw upward
    view = (lo_x, -hi_y, hi_x - lo_x, hi_y - lo_y)
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "viewBox": " ".join(f"{v:.6g}" for v in view),
            "width": "640",
            "height": "640",
        },
    )
    thin = f"{span / 150:.6g}"
    thick = f"{span / 50:.6g}"
    directions = ((1.0, 1.0), (0.0, -1.0), (-1.0, 0.0))
    for status, (ax, ay) in zip(report.apexes, pts):
        bold = not status.generic
        for dx, dy in directions:
            x2 = float(ax) + ray_len * dx
            y2 = float(ay) + ray_len * dy
            ET.SubElement(
                svg,
                "line",
                {
                    "class": "ray bold" if bold else "ray",
                    "x1": f"{float(ax):.6g}",
                    "y1": f"{-float(ay):.6g}",
                    "x2": f"{x2:.6g}",
                    "y2": f"{-y2:.6g}",
                    "stroke": "#000000",
                    "stroke-width": thick if bold else thin,
                },
            )
    for status, (ax, ay) in zip(report.apexes, pts):
        ET.SubElement(
            svg,
            "circle",
            {
                "class": "apex",
                "cx": f"{float(ax):.6g}",
                "cy": f"{-float(ay):.6g}",
                "r": f"{span / 40:.6g}",
                "fill": "#000000",
            },
        )
    return ET.tostring(svg, encoding="unicode") + "\n"


def _cmd_render(arr: Arrangement, args) -> tuple[int, list[str], dict]:
    if arr.d != 3:
        raise CliError(RENDER_DIM, f"rendering needs d=3, got d={arr.d}")
    svg = render_svg(arr)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise CliError(IO, f"cannot write {args.out}: {exc}")
    bold = sum(3 for st in is_generic(arr).apexes if not st.generic)
    lines = [f"svg: {args.out}", f"rays: {3 * arr.n}", f"bold: {bold}"]
    return OK, lines, {"svg": args.out, "rays": 3 * arr.n, "bold": bold}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troparr",
        description="Exact combinatorics of max-plus hyperplane arrangements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, help="arrangement file")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--budget", type=int, default=None, help="candidate enumeration cap")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")

    sp = sub.add_parser("type-of", help="type of a point")
    common(sp)
    sp.add_argument("--point", required=True, help="comma-separated rational coordinates")

    sp = sub.add_parser("check", help="genericity, axioms and correspondence")
    common(sp)

    sp = sub.add_parser("subdivision", help="dual subdivision (and flips)")
    common(sp)
    sp.add_argument("--flips", action="store_true", help="refining triangulations and GKZ data")

    sp = sub.add_parser("render", help="SVG picture (d=3 only)")
    common(sp)
    sp.add_argument("--out", required=True, help="output SVG path")

    return parser


_HANDLERS = {
    "type-of": _cmd_type_of,
    "check": _cmd_check,
    "subdivision": _cmd_subdivision,
    "render": _cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        arr, raw = load_arrangement(args.input, args.format)
        code, lines, results = _HANDLERS[args.command](arr, args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    report = {
        "command": [args.command] + argv[1:],
        "input": _digest(raw),
        "results": results,
        "status": "ok" if code == OK else f"exit {code}",
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"command: {' '.join([args.command] + argv[1:])}")
        print(f"input: {report['input']}")
        for line in lines:
            print(line)
        print(f"status: {report['status']}")
    return code


def entrypoint() -> None:
    sys.exit(main())
