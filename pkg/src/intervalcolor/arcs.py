"""Coloring arcs of a circle with spread at most two.

Arcs are unfolded at the zero angle into closed intervals on the line:
arcs avoiding zero keep their position right of zero, arcs crossing zero
shift left so their counterclockwise part past zero lands on the positive
axis, and arcs covering the whole circle become one interval spanning
everything built so far.  A balanced coloring of the unfolded intervals
pulls back to the arcs with spread at most two, because a circle point has
at most two images on the line.

Three arcs that pairwise intersect without a common point already force a
spread of two for k = 2, so two is tight.
"""

from __future__ import annotations

from dataclasses import dataclass
from bisect import bisect_left, bisect_right
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from intervalcolor.core import (
    Coord,
    CoordInput,
    Coloring,
    ImbalanceReport,
    Instance,
    Interval,
    to_coord,
)
from intervalcolor.k_color import k_color

__all__ = [
    "Arc",
    "ArcInstance",
    "make_arc_instance",
    "arc_contains",
    "unfold",
    "arc_imbalance",
    "arc_color",
    "min_arc_imbalance_oracle",
]


@dataclass(frozen=True)
class Arc:
    """Closed arc starting at `start` and extending `length` counterclockwise.

    A length of at least the circumference means the arc covers the full
    circle.  Validation against the circumference happens in ArcInstance,
    which owns that shared value.
    """

    id: int
    start: Coord
    length: Coord

    def __post_init__(self) -> None:
        for name in ("start", "length"):
            value = getattr(self, name)
            if not isinstance(value, Coord):
                raise TypeError(f"{name} must be a Coord, got {type(value).__name__}")
        if self.length <= 0:
            raise ValueError(f"arc length must be positive, got {self.length}")


@dataclass(frozen=True)
class ArcInstance:
    arcs: Tuple[Arc, ...]
    circumference: Coord
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if not isinstance(self.circumference, Coord):
            raise TypeError("circumference must be a Coord")
        if self.circumference <= 0:
            raise ValueError(f"circumference must be positive, got {self.circumference}")
        if self.k < 1:
            raise ValueError(f"need at least one color, got k={self.k}")
        for pos, arc in enumerate(self.arcs):
            if arc.id != pos:
                raise ValueError(f"arc ids must be 0..n-1 in order; got {arc.id} at {pos}")
            if not (0 <= arc.start < self.circumference):
                raise ValueError(
                    f"arc {arc.id} start {arc.start} outside [0, {self.circumference})"
                )

    @property
    def n(self) -> int:
        return len(self.arcs)


def make_arc_instance(
    pairs: Sequence[Sequence[CoordInput]],
    circumference: CoordInput,
    k: int,
) -> ArcInstance:
    """ArcInstance from (start, length) pairs of ints, strings, or Fractions."""
    arcs = tuple(
        Arc(i, to_coord(start), to_coord(length))
        for i, (start, length) in enumerate(pairs)
    )
    return ArcInstance(arcs, to_coord(circumference), k)


def arc_contains(arc: Arc, circumference: Coord, point: Coord) -> bool:
    """Closed-arc membership of a circle point given by any real coordinate."""
    if arc.length >= circumference:
        return True
    p = point % circumference
    end = arc.start + arc.length
    return arc.start <= p <= end or arc.start <= p + circumference <= end


def unfold(instance: ArcInstance) -> Tuple[Instance, Dict[int, int]]:
    """Line-interval instance equivalent to the arcs, plus the arc-to-interval id map.

    Proper arcs keep their length: [s, s+L] when they stay inside one turn,
    [s-C, s+L-C] when they cross zero (the positive part equals the part of
    the arc counterclockwise from zero).  An arc ending exactly at zero is
    treated as not crossing it.

    Full-circle arcs all become one shared interval.  While the hull of the
    proper intervals is narrower than the circumference C, that interval
    extends the hull by a margin of half the smallest gap between distinct
    endpoints (1 when there are no proper arcs), capped at (C - hull)/4 so
    its width stays below C.  When the hull is at least C wide, it becomes
    [hull_lo - margin, hull_lo - margin + C] instead: exactly one turn,
    anchored just left of the hull.  Either way the interval never covers
    two images of a circle point that carries a proper arc, which is what
    keeps the pulled-back spread at two; a naive hull-covering interval
    would count full arcs twice at some points and allow spread three.
    """
    C = instance.circumference
    proper: Dict[int, Tuple[Coord, Coord]] = {}
    full_ids: List[int] = []
    for arc in instance.arcs:
        if arc.length >= C:
            full_ids.append(arc.id)
        elif arc.start + arc.length > C:
            proper[arc.id] = (arc.start - C, arc.start + arc.length - C)
        else:
            proper[arc.id] = (arc.start, arc.start + arc.length)

    if full_ids:
        if proper:
            coords = sorted({c for bounds in proper.values() for c in bounds})
            hull_lo, hull_hi = coords[0], coords[-1]
            gaps = [b - a for a, b in zip(coords, coords[1:])]
            margin = min(gaps) / 2 if gaps else Coord(1)
        else:
            hull_lo = hull_hi = Coord(0)
            margin = Coord(1)
        hull_width = hull_hi - hull_lo
        if hull_width < C:
            margin = min(margin, (C - hull_width) / 4)
            span = (hull_lo - margin, hull_hi + margin)
        else:
            span = (hull_lo - margin, hull_lo - margin + C)
    else:
        span = None

    intervals = []
    for arc in instance.arcs:
        lo, hi = proper[arc.id] if arc.id in proper else span
        intervals.append(Interval(arc.id, lo, hi))
    mapping = {arc.id: arc.id for arc in instance.arcs}
    return Instance(tuple(intervals), instance.k), mapping


def _measured_points(instance: ArcInstance) -> List[Coord]:
    """Endpoints of proper arcs plus gap midpoints, wrap-aware, in [0, C)."""
    C = instance.circumference
    endpoints = set()
    for arc in instance.arcs:
        if arc.length >= C:
            continue
        endpoints.add(arc.start)
        endpoints.add((arc.start + arc.length) % C)
    if not endpoints:
        return [Coord(0)] if instance.arcs else []
    points = sorted(endpoints)
    mids = [(a + b) / 2 for a, b in zip(points, points[1:])]
    mids.append(((points[-1] + points[0] + C) / 2) % C)
    return sorted(set(points) | set(mids))


def arc_imbalance(instance: ArcInstance, coloring: Coloring) -> ImbalanceReport:
    """Largest color-count spread over all circle points.

    Counts change only at arc endpoints, so endpoints and region midpoints
    (including the region wrapping across zero) cover every distinct count
    profile on the circle.
    """
    if len(coloring.colors) != instance.n:
        raise ValueError(
            f"coloring has {len(coloring.colors)} entries for {instance.n} arcs"
        )
    if coloring.k != instance.k:
        raise ValueError(f"coloring uses k={coloring.k}, instance has k={instance.k}")
    points = _measured_points(instance)
    if not points:
        return ImbalanceReport(0, None)

    C = instance.circumference
    m = len(points)
    k = instance.k
    # difference arrays over point indices, one per color
    diffs = [[0] * (m + 1) for _ in range(k)]

    def add_range(color: int, first: int, last: int) -> None:
        if first <= last:
            diffs[color][first] += 1
            diffs[color][last + 1] -= 1

    for arc, color in zip(instance.arcs, coloring.colors):
        c = color - 1
        if arc.length >= C:
            add_range(c, 0, m - 1)
            continue
        lo, hi = arc.start, arc.start + arc.length
        if hi >= C:
            add_range(c, bisect_left(points, lo), m - 1)
            add_range(c, 0, bisect_right(points, hi - C) - 1)
        else:
            add_range(c, bisect_left(points, lo), bisect_right(points, hi) - 1)

    best = 0
    witness: Optional[Coord] = None
    running = [0] * k
    for idx, point in enumerate(points):
        for c in range(k):
            running[c] += diffs[c][idx]
        spread = max(running) - min(running)
        if spread > best or witness is None:
            best = spread
            witness = point
    return ImbalanceReport(best, witness)


def arc_color(instance: ArcInstance) -> Coloring:
    """Coloring of the arcs with spread at most two.

    Unfolds to the line, colors the intervals balanced there, and carries
    the colors back arc by arc.
    """
    line, mapping = unfold(instance)
    line_coloring = k_color(line)
    colors = tuple(line_coloring.colors[mapping[arc.id]] for arc in instance.arcs)
    return Coloring(colors, instance.k)


def min_arc_imbalance_oracle(
    instance: ArcInstance, limit_n: int = 12
) -> Tuple[int, Coloring]:
    """Exhaustive minimum spread over all arc colorings, desk scale only.

    Returns the minimum and its lexicographically smallest witness coloring.
    Work grows as k^(n-1), so instances beyond limit_n arcs are rejected.
    """
    n, k = instance.n, instance.k
    if n > limit_n:
        raise ValueError(f"exhaustive search limited to {limit_n} arcs, got {n}")
    if n == 0:
        return 0, Coloring((), k)
    best_value: Optional[int] = None
    best_colors: Optional[Tuple[int, ...]] = None
    # the lexicographically smallest minimizer colors arc 0 with 1
    for rest in product(range(1, k + 1), repeat=n - 1):
        colors = (1,) + rest
        value = arc_imbalance(instance, Coloring(colors, k)).value
        if best_value is None or value < best_value:
            best_value = value
            best_colors = colors
            if best_value == 0:
                break
    return best_value, Coloring(best_colors, k)
