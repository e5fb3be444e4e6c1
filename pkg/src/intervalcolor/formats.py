"""Readers and writers for the files the command line exchanges.

Coordinates travel as JSON integers or strings ("7", "1/2", "0.25"),
never as floats, so exact rational values survive a round trip.  Every
writer emits the same bytes for the same input and ends with a newline.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Sequence, Tuple, Union

from .arcs import ArcInstance, make_arc_instance
from .core import Coloring, Coord, Instance, Interval, make_instance, to_coord
from .hardness import Box, BoxInstance, NaeFormula


class FormatError(ValueError):
    """An input file does not match its documented format."""


def coord_json(value: Coord) -> Union[int, str]:
    """JSON value for a coordinate: int when integral, else "num/den"."""
    if value.denominator == 1:
        return int(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _loads(text: str, what: str) -> Any:
    def reject(name: str) -> Any:
        raise FormatError(f"{what}: non-finite number {name}")

    try:
        return json.loads(text, parse_float=str, parse_constant=reject)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: invalid JSON: {exc}") from None


def _require_int(data: Dict[str, Any], key: str, what: str) -> int:
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f'{what}: "{key}" must be an integer')
    return value


def _require_pairs(data: Dict[str, Any], key: str, what: str) -> List[Any]:
    entries = data.get(key)
    if not isinstance(entries, list):
        raise FormatError(f'{what}: "{key}" must be a list of pairs')
    for pos, entry in enumerate(entries):
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f'{what}: "{key}"[{pos}] must be a two-element list')
    return entries


# --- interval instances ---


def parse_instance_json(text: str) -> Instance:
    """Instance from {"k": int, "intervals": [[lo, hi], ...]}.

    Endpoints may be integers or strings; strings take anything the
    Fraction constructor does ("3", "-1/2", "0.25").
    """
    data = _loads(text, "instance")
    if not isinstance(data, dict):
        raise FormatError("instance: expected a JSON object")
    k = _require_int(data, "k", "instance")
    entries = _require_pairs(data, "intervals", "instance")
    try:
        return make_instance([(lo, hi) for lo, hi in entries], k)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"instance: {exc}") from None


def format_instance_json(instance: Instance) -> str:
    payload = {
        "k": instance.k,
        "intervals": [
            [coord_json(itv.lo), coord_json(itv.hi)] for itv in instance.intervals
        ],
    }
    return json.dumps(payload) + "\n"


def parse_instance_text(text: str) -> Instance:
    """Instance from a "n k" header line and n "lo hi" lines.

    Blank lines are ignored; endpoint tokens follow the same grammar as
    the JSON form's strings.
    """
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise FormatError("instance: empty file, expected a 'n k' header")
    if len(rows[0]) != 2:
        raise FormatError("instance: header must be 'n k'")
    try:
        n, k = int(rows[0][0]), int(rows[0][1])
    except ValueError:
        raise FormatError("instance: header must hold two integers") from None
    if len(rows) - 1 != n:
        raise FormatError(f"instance: header promises {n} intervals, found {len(rows) - 1}")
    for pos, row in enumerate(rows[1:]):
        if len(row) != 2:
            raise FormatError(f"instance: interval line {pos} must be 'lo hi'")
    try:
        return make_instance([(row[0], row[1]) for row in rows[1:]], k)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"instance: {exc}") from None


def format_instance_text(instance: Instance) -> str:
    lines = [f"{instance.n} {instance.k}"]
    for itv in instance.intervals:
        lines.append(f"{coord_json(itv.lo)} {coord_json(itv.hi)}")
    return "\n".join(lines) + "\n"


# --- colorings ---


def parse_coloring_json(text: str) -> Tuple[int, ...]:
    """Colors from {"colors": [...]}; a present "imbalance" field is ignored."""
    data = _loads(text, "coloring")
    if not isinstance(data, dict):
        raise FormatError("coloring: expected a JSON object")
    colors = data.get("colors")
    if not isinstance(colors, list):
        raise FormatError('coloring: "colors" must be a list')
    for pos, color in enumerate(colors):
        if isinstance(color, bool) or not isinstance(color, int):
            raise FormatError(f"coloring: color {pos} must be an integer")
    return tuple(colors)


def format_coloring_json(coloring: Coloring, value: int) -> str:
    return json.dumps({"colors": list(coloring.colors), "imbalance": value}) + "\n"


# --- circular arcs ---


def parse_arc_json(text: str) -> ArcInstance:
    """ArcInstance from {"k":, "circumference":, "arcs": [[start, length], ...]}."""
    data = _loads(text, "arc instance")
    if not isinstance(data, dict):
        raise FormatError("arc instance: expected a JSON object")
    k = _require_int(data, "k", "arc instance")
    circumference = data.get("circumference")
    entries = _require_pairs(data, "arcs", "arc instance")
    try:
        return make_arc_instance(
            [(start, length) for start, length in entries], circumference, k
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(f"arc instance: {exc}") from None


def format_arc_json(instance: ArcInstance) -> str:
    payload = {
        "k": instance.k,
        "circumference": coord_json(instance.circumference),
        "arcs": [
            [coord_json(arc.start), coord_json(arc.length)] for arc in instance.arcs
        ],
    }
    return json.dumps(payload) + "\n"


# --- 0/1 membership matrices ---


def parse_hypergraph_text(text: str) -> Tuple[Tuple[int, ...], ...]:
    """Matrix from a "n m" header and n rows of m space-separated 0/1."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise FormatError("hypergraph: empty file, expected a 'n m' header")
    if len(rows[0]) != 2:
        raise FormatError("hypergraph: header must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
    except ValueError:
        raise FormatError("hypergraph: header must hold two integers") from None
    if len(rows) - 1 != n:
        raise FormatError(f"hypergraph: header promises {n} rows, found {len(rows) - 1}")
    matrix = []
    for pos, row in enumerate(rows[1:]):
        if len(row) != m or any(cell not in ("0", "1") for cell in row):
            raise FormatError(f"hypergraph: row {pos} must be {m} entries of 0 or 1")
        matrix.append(tuple(int(cell) for cell in row))
    return tuple(matrix)


def format_hypergraph_text(matrix: Sequence[Sequence[int]]) -> str:
    width = len(matrix[0]) if len(matrix) else 0
    lines = [f"{len(matrix)} {width}"]
    for row in matrix:
        lines.append(" ".join(str(cell) for cell in row))
    return "\n".join(lines) + "\n"


# --- not-all-equal formulas ---


def parse_nae_text(text: str) -> NaeFormula:
    """Formula from a DIMACS-like file.

    Lines starting with "c" are comments.  A single "p nae <vars>
    <clauses>" header precedes one line of three positive variable
    numbers per clause.
    """
    num_vars = None
    declared = 0
    clauses: List[Tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise FormatError(f"formula: line {lineno}: second 'p' header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "nae":
                raise FormatError(
                    f"formula: line {lineno}: header must be 'p nae <vars> <clauses>'"
                )
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(
                    f"formula: line {lineno}: header counts must be integers"
                ) from None
            continue
        if num_vars is None:
            raise FormatError(f"formula: line {lineno}: clause before 'p nae' header")
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"formula: line {lineno}: expected three variables")
        try:
            clauses.append((int(parts[0]), int(parts[1]), int(parts[2])))
        except ValueError:
            raise FormatError(f"formula: line {lineno}: variables must be integers") from None
    if num_vars is None:
        raise FormatError("formula: missing 'p nae <vars> <clauses>' header")
    if len(clauses) != declared:
        raise FormatError(
            f"formula: header promises {declared} clauses, found {len(clauses)}"
        )
    try:
        return NaeFormula(num_vars, tuple(clauses))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"formula: {exc}") from None


def format_nae_text(formula: NaeFormula) -> str:
    lines = [f"p nae {formula.num_vars} {len(formula.clauses)}"]
    for a, b, c in formula.clauses:
        lines.append(f"{a} {b} {c}")
    return "\n".join(lines) + "\n"


# --- axis-aligned box instances ---


def format_box_instance_json(instance: BoxInstance) -> str:
    boxes = [
        {
            "id": box.id,
            "tag": box.tag,
            "bounds": [[coord_json(lo), coord_json(hi)] for lo, hi in box.bounds],
        }
        for box in instance.boxes
    ]
    provenance = {
        str(box_id): list(entry)
        for box_id, entry in sorted(instance.provenance.items())
    }
    payload = {"d": instance.d, "k": instance.k, "boxes": boxes, "provenance": provenance}
    return json.dumps(payload) + "\n"


def parse_box_instance_json(text: str) -> BoxInstance:
    data = _loads(text, "box instance")
    if not isinstance(data, dict):
        raise FormatError("box instance: expected a JSON object")
    d = _require_int(data, "d", "box instance")
    k = _require_int(data, "k", "box instance")
    entries = data.get("boxes")
    if not isinstance(entries, list):
        raise FormatError('box instance: "boxes" must be a list')
    boxes = []
    for pos, entry in enumerate(entries):
        where = f"box instance: boxes[{pos}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where} must be a JSON object")
        box_id = _require_int(entry, "id", where)
        tag = entry.get("tag")
        if not isinstance(tag, str):
            raise FormatError(f'{where}: "tag" must be a string')
        bound_entries = _require_pairs(entry, "bounds", where)
        try:
            bounds = tuple(
                (to_coord(lo), to_coord(hi)) for lo, hi in bound_entries
            )
            boxes.append(Box(box_id, bounds, tag))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"{where}: {exc}") from None
    provenance: Dict[int, Tuple[Any, ...]] = {}
    raw_prov = data.get("provenance", {})
    if not isinstance(raw_prov, dict):
        raise FormatError('box instance: "provenance" must be an object')
    for key, entry in raw_prov.items():
        if not key.lstrip("-").isdigit() or not isinstance(entry, list):
            raise FormatError(f"box instance: provenance entry {key!r} malformed")
        for part in entry:
            if isinstance(part, bool) or not isinstance(part, (int, str)):
                raise FormatError(f"box instance: provenance entry {key!r} malformed")
        provenance[int(key)] = tuple(entry)
    try:
        return BoxInstance(tuple(boxes), d, k, provenance)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"box instance: {exc}") from None


# --- online transcripts ---


def format_transcript_jsonl(
    presented: Sequence[Interval], colors: Sequence[int], trace: Sequence[int]
) -> str:
    """One JSON line per presentation: interval, chosen color, running imbalance."""
    if not (len(presented) == len(colors) == len(trace)):
        raise ValueError(
            f"mismatched transcript parts: {len(presented)} intervals, "
            f"{len(colors)} colors, {len(trace)} imbalances"
        )
    lines = []
    for itv, color, value in zip(presented, colors, trace):
        record = {
            "interval": [coord_json(itv.lo), coord_json(itv.hi)],
            "color": color,
            "max_imbalance": value,
        }
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n" if lines else ""
