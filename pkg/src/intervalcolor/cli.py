"""Command-line front end.

One subcommand per library entry point, files in and JSON out.  Exit
codes: 0 success or balanced, 1 semantically negative answer (imbalance
above 1, no balanced box coloring), 2 bad input, 3 a broken internal
guarantee.  Results go to standard output, diagnostics to standard
error, and identical inputs and seeds give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .arcs import ArcInstance, arc_color, arc_imbalance
from .core import (
    Coloring,
    Instance,
    InvariantViolation,
    imbalance,
    min_imbalance_oracle,
)
from .formats import (
    FormatError,
    coord_json,
    format_box_instance_json,
    format_coloring_json,
    format_transcript_jsonl,
    parse_arc_json,
    parse_box_instance_json,
    parse_coloring_json,
    parse_hypergraph_text,
    parse_instance_json,
    parse_instance_text,
    parse_nae_text,
)
from .hardness import BoxInstance, box_imbalance, decide_balanced_boxes, reduce_nae_to_boxes
from .k_color import hypergraph_to_instance, k_color, k_color_dewerra
from .online import (
    adversary_general,
    make_algorithm,
    presentation_trace,
    run_online,
)

_ALGORITHM_ALIASES = {"greedy": "greedy_least_loaded"}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def _load_instance(args: argparse.Namespace) -> Instance:
    text = _read_text(args.input)
    if args.format == "text":
        instance = parse_instance_text(text)
    else:
        instance = parse_instance_json(text)
    if getattr(args, "k", None) is not None and args.k != instance.k:
        instance = Instance(instance.intervals, args.k)
    return instance


def _emit(payload: str) -> None:
    sys.stdout.write(payload)


def cmd_color(args: argparse.Namespace) -> int:
    instance = _load_instance(args)
    if args.algorithm == "dewerra":
        coloring = k_color_dewerra(instance)
    else:
        coloring = k_color(instance)
    value = imbalance(instance, coloring).value
    _emit(format_coloring_json(coloring, value))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    instance = _load_instance(args)
    colors = parse_coloring_json(_read_text(args.coloring))
    if len(colors) != instance.n:
        raise FormatError(
            f"coloring has {len(colors)} colors for {instance.n} intervals"
        )
    report = imbalance(instance, Coloring(colors, instance.k))
    witness = None if report.witness is None else coord_json(report.witness)
    _emit(json.dumps({"imbalance": report.value, "witness": witness}) + "\n")
    return 0 if report.value <= 1 else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = _load_instance(args)
    value, coloring = min_imbalance_oracle(instance)
    _emit(json.dumps({"minimum": value, "colors": list(coloring.colors)}) + "\n")
    return 0


def cmd_arcs(args: argparse.Namespace) -> int:
    instance = parse_arc_json(_read_text(args.input))
    if args.k is not None and args.k != instance.k:
        instance = ArcInstance(instance.arcs, instance.circumference, args.k)
    coloring = arc_color(instance)
    value = arc_imbalance(instance, coloring).value
    _emit(format_coloring_json(coloring, value))
    return 0


def cmd_online(args: argparse.Namespace) -> int:
    name = _ALGORITHM_ALIASES.get(args.algorithm, args.algorithm)
    alg = make_algorithm(name, seed=args.seed)
    if args.adversary:
        transcript = adversary_general(alg, args.k, args.rounds)
        trace = presentation_trace(transcript)
        _emit(format_transcript_jsonl(transcript.presented, transcript.colors, trace))
        final = transcript.final_imbalance
        summary = {"final_imbalance": final, "rounds": args.rounds}
        if args.k == 2:
            bound = -(-args.rounds // 3)
            summary["lower_bound"] = bound
            if final < bound:
                raise InvariantViolation(
                    f"adversary certified imbalance {final}, below the"
                    f" guaranteed {bound}"
                )
        _emit(json.dumps(summary) + "\n")
        return 0
    if args.input is None:
        raise FormatError("online without --adversary needs --input STREAM")
    instance = _load_instance(args)
    stream = Instance(instance.intervals[: args.rounds], instance.k)
    coloring, trace = run_online(alg, stream)
    _emit(format_transcript_jsonl(stream.intervals, coloring.colors, trace))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    formula = parse_nae_text(_read_text(args.input))
    instance = reduce_nae_to_boxes(formula, args.k)
    _emit(format_box_instance_json(instance))
    if args.svg is not None:
        Path(args.svg).write_text(_svg_dump(instance), encoding="utf-8")
    return 0


def cmd_decide_boxes(args: argparse.Namespace) -> int:
    instance = parse_box_instance_json(_read_text(args.input))
    coloring = decide_balanced_boxes(instance)
    if coloring is None:
        _emit(json.dumps({"balanced": False}) + "\n")
        return 1
    value = box_imbalance(instance, coloring).value
    _emit(
        json.dumps(
            {"balanced": True, "colors": list(coloring.colors), "imbalance": value}
        )
        + "\n"
    )
    return 0


def cmd_hypergraph(args: argparse.Namespace) -> int:
    matrix = parse_hypergraph_text(_read_text(args.input))
    instance = hypergraph_to_instance(matrix, args.k)
    coloring = k_color(instance)
    value = imbalance(instance, coloring).value
    _emit(format_coloring_json(coloring, value))
    return 0


_SVG_FILL = {
    "clause": "#c0504d",
    "variable": "#4f81bd",
    "chain": "#9bbb59",
    "crossing": "#8064a2",
    "cover": "#dddddd",
}


def _svg_dump(instance: BoxInstance) -> str:
    """Plain axis-aligned rectangles, first two dimensions, y pointing up."""
    def num(value: object) -> str:
        return f"{float(value):g}"  # type: ignore[arg-type]

    if instance.boxes:
        xlo = min(box.bounds[0][0] for box in instance.boxes) - 1
        xhi = max(box.bounds[0][1] for box in instance.boxes) + 1
        ylo = min(box.bounds[1][0] for box in instance.boxes) - 1
        yhi = max(box.bounds[1][1] for box in instance.boxes) + 1
    else:
        xlo, xhi, ylo, yhi = 0, 1, 0, 1
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox='
        f'"{num(xlo)} 0 {num(xhi - xlo)} {num(yhi - ylo)}">'
    ]
    for box in instance.boxes:
        (bx_lo, bx_hi), (by_lo, by_hi) = box.bounds[0], box.bounds[1]
        lines.append(
            f'<rect x="{num(bx_lo)}" y="{num(yhi - by_hi)}"'
            f' width="{num(bx_hi - bx_lo)}" height="{num(by_hi - by_lo)}"'
            f' fill="{_SVG_FILL.get(box.tag, "#999999")}" fill-opacity="0.55"'
            ' stroke="#333333" stroke-width="0.12"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalcolor",
        description="Balanced colorings of intervals, arcs, and boxes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="instance file format (default json)",
        )

    p = sub.add_parser("color", help="balanced k-coloring of an interval file")
    p.add_argument("--input", required=True, help="instance file, or - for stdin")
    p.add_argument("--k", type=int, help="override the instance's color count")
    p.add_argument(
        "--algorithm",
        choices=("sweep", "dewerra"),
        default="sweep",
        help="sweep (default) or iterative rebalancing",
    )
    add_format(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="measure the imbalance of a given coloring")
    p.add_argument("--input", required=True, help="instance file, or - for stdin")
    p.add_argument("--coloring", required=True, help="coloring JSON file")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive minimum imbalance (small n)")
    p.add_argument("--input", required=True, help="instance file, or - for stdin")
    p.add_argument("--k", type=int, help="override the instance's color count")
    add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("arcs", help="k-coloring of circular arcs, spread at most 2")
    p.add_argument("--input", required=True, help="arc instance JSON, or - for stdin")
    p.add_argument("--k", type=int, help="override the instance's color count")
    p.set_defaults(func=cmd_arcs)

    p = sub.add_parser("online", help="online coloring runs and the adversary")
    p.add_argument("--algorithm", required=True, help="round_robin, greedy_least_loaded, or seeded_random")
    p.add_argument("--k", type=int, required=True, help="number of colors")
    p.add_argument("--rounds", type=int, required=True, help="adversary rounds or stream prefix length")
    p.add_argument("--seed", type=int, help="seed for seeded_random")
    p.add_argument("--adversary", action="store_true", help="run the lower-bound adversary")
    p.add_argument("--input", help="instance file to stream when not using --adversary")
    add_format(p)
    p.set_defaults(func=cmd_online)

    p = sub.add_parser("reduce", help="encode a formula as a box coloring question")
    p.add_argument("target", choices=("nae3sat",), help="source problem")
    p.add_argument("--input", required=True, help="formula file, or - for stdin")
    p.add_argument("--k", type=int, default=2, help="colors for the box instance (default 2)")
    p.add_argument("--svg", help="also write the boxes as an SVG drawing")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decide-boxes", help="search for a balanced box coloring")
    p.add_argument("--input", required=True, help="box instance JSON, or - for stdin")
    p.set_defaults(func=cmd_decide_boxes)

    p = sub.add_parser("hypergraph", help="balanced coloring of a consecutive-ones matrix")
    p.add_argument("--input", required=True, help="0/1 matrix file, or - for stdin")
    p.add_argument("--k", type=int, required=True, help="number of colors")
    p.set_defaults(func=cmd_hypergraph)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (FormatError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
