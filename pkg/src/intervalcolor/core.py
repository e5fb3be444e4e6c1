"""Exact interval instances, event normalization, and imbalance measurement.

Coordinates are arbitrary-precision rationals so that coinciding endpoints
are detected exactly; floats are rejected at the boundary.  All types are
immutable values and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

__all__ = [
    "Coord",
    "CoordInput",
    "START",
    "END",
    "InvariantViolation",
    "to_coord",
    "Interval",
    "Instance",
    "make_instance",
    "Event",
    "NormalizedInstance",
    "normalize",
    "Coloring",
    "RegionCounts",
    "ImbalanceReport",
    "imbalance",
    "is_balanced",
    "divisibility_predicts_zero",
    "point_cliques",
    "min_imbalance_oracle",
]

Coord = Fraction
CoordInput = Union[Fraction, int, str]

START = 0
END = 1


class InvariantViolation(RuntimeError):
    """A structural guarantee of a construction failed.

    Raised when an internal consistency check trips.  It signals a bug in
    this library (or a hand-assembled intermediate), never bad user input.
    """


def to_coord(value: CoordInput) -> Coord:
    """Convert an int, a decimal or fraction string, or a Fraction to a Coord.

    Floats are rejected: binary rounding would silently merge or split
    coincident endpoints, and the tie-breaking rules depend on exact
    collision detection.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):  # bool passes the int check below
        raise TypeError("coordinate must be int, str, or Fraction, not bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a valid coordinate: {value!r}") from exc
    raise TypeError(
        f"coordinate must be int, str, or Fraction, not {type(value).__name__}"
    )


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; point intervals (lo == hi) are allowed."""

    id: int
    lo: Coord
    hi: Coord

    def __post_init__(self) -> None:
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            raise TypeError("interval endpoints must be Coord; use to_coord()")
        if self.lo > self.hi:
            raise ValueError(f"interval {self.id}: lo {self.lo} > hi {self.hi}")

    def contains(self, x: Coord) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Instance:
    """An ordered list of closed intervals plus the number of colors k."""

    intervals: Tuple[Interval, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for pos, itv in enumerate(self.intervals):
            if itv.id != pos:
                raise ValueError(
                    f"interval ids must be 0..n-1 in order; "
                    f"position {pos} holds id {itv.id}"
                )

    @property
    def n(self) -> int:
        return len(self.intervals)


def make_instance(bounds: Iterable[Sequence[CoordInput]], k: int) -> Instance:
    """Build an Instance from (lo, hi) pairs, assigning ids in order."""
    intervals = tuple(
        Interval(i, to_coord(lo), to_coord(hi)) for i, (lo, hi) in enumerate(bounds)
    )
    return Instance(intervals, k)


class Event(NamedTuple):
    """One endpoint occurrence in the normalized order."""

    rank: int  # 1-based position among all 2n events
    interval: int
    kind: int  # START or END


def _sorted_events(
    intervals: Sequence[Interval],
) -> List[Tuple[Coord, int, int]]:
    """All (coordinate, kind, id) events sorted by coordinate, starts first.

    Floats decorate the sort key only to keep most comparisons cheap;
    rounding is monotone, so exact ties are the only place the Fraction
    itself is consulted and the order stays exact.
    """
    events: List[Tuple[Coord, int, int]] = []
    for itv in intervals:
        events.append((itv.lo, START, itv.id))
        events.append((itv.hi, END, itv.id))
    try:
        events.sort(key=lambda ev: (float(ev[0]), ev))
    except OverflowError:  # coordinates beyond float range: exact, slower path
        events.sort()
    return events


@dataclass(frozen=True)
class NormalizedInstance:
    """Instance with its endpoints spread out into distinct ranks 1..2n.

    Equal coordinates are tie-broken with all starts before all ends, then
    by interval id.  This realizes the usual infinitesimal nudge of
    coinciding endpoints symbolically: every set of intervals covering a
    common point of the original instance covers a common rank region
    afterwards, so nothing that matters to balancedness is lost.
    """

    source: Instance
    start_rank: Tuple[int, ...]
    end_rank: Tuple[int, ...]

    def events(self) -> Tuple[Event, ...]:
        """All 2n events in rank order."""
        n = self.source.n
        out: List[Optional[Event]] = [None] * (2 * n)
        for i in range(n):
            out[self.start_rank[i] - 1] = Event(self.start_rank[i], i, START)
            out[self.end_rank[i] - 1] = Event(self.end_rank[i], i, END)
        return tuple(out)  # type: ignore[arg-type]


def normalize(instance: Instance) -> NormalizedInstance:
    """Rank the 2n endpoint events, breaking coordinate ties deterministically."""
    keyed = _sorted_events(instance.intervals)
    start_rank = [0] * instance.n
    end_rank = [0] * instance.n
    for rank0, (_, kind, i) in enumerate(keyed):
        if kind == START:
            start_rank[i] = rank0 + 1
        else:
            end_rank[i] = rank0 + 1
    for i in range(instance.n):
        if not start_rank[i] < end_rank[i]:
            raise InvariantViolation(f"interval {i}: start rank not below end rank")
    return NormalizedInstance(instance, tuple(start_rank), tuple(end_rank))


@dataclass(frozen=True)
class Coloring:
    """Color per interval, aligned with instance order; colors are 1..k."""

    colors: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for pos, c in enumerate(self.colors):
            if not 1 <= c <= self.k:
                raise ValueError(f"color {c} at position {pos} outside 1..{self.k}")


@dataclass(frozen=True)
class RegionCounts:
    """Per-color counts on one measured region; lo == hi marks a single point."""

    lo: Coord
    hi: Coord
    counts: Tuple[int, ...]


@dataclass(frozen=True)
class ImbalanceReport:
    """Worst-point color imbalance.

    value is the maximum, over all points of the line, of the largest
    color-class count minus the smallest among intervals covering the
    point; colors with zero count there are included in the minimum.
    witness is the first measured point attaining the maximum.  per_region
    optionally lists every measured constant-coverage region.
    """

    value: int
    witness: Coord
    per_region: Optional[Tuple[RegionCounts, ...]] = None


def _event_groups(
    intervals: Sequence[Interval],
) -> Iterator[Tuple[Coord, List[int], List[int]]]:
    """Yield (coordinate, starting ids, ending ids) in ascending order."""
    events = _sorted_events(intervals)
    idx = 0
    m = len(events)
    while idx < m:
        x = events[idx][0]
        starts: List[int] = []
        ends: List[int] = []
        while idx < m and events[idx][0] == x:
            _, kind, i = events[idx]
            (starts if kind == START else ends).append(i)
            idx += 1
        yield x, starts, ends


def imbalance(
    instance: Instance, coloring: Coloring, *, with_regions: bool = False
) -> ImbalanceReport:
    """Measure the worst color-count spread over every point of the line.

    The sweep visits events in normalized rank order but measures once per
    real point: at each distinct coordinate after the intervals starting
    there have been admitted (so a closed interval still counts at its own
    right endpoint), and at the midpoint of each region between consecutive
    distinct coordinates.  Those points realize every coverage set that
    exists on the line, so the maximum is exact.
    """
    if len(coloring.colors) != instance.n:
        raise ValueError(
            f"coloring has {len(coloring.colors)} entries "
            f"for {instance.n} intervals"
        )
    if coloring.k != instance.k:
        raise ValueError(
            f"coloring uses k={coloring.k} but instance has k={instance.k}"
        )
    k = instance.k
    cols = coloring.colors
    counts = [0] * k
    best = 0
    witness = Fraction(0)
    regions: Optional[List[RegionCounts]] = [] if with_regions else None

    groups = list(_event_groups(instance.intervals))
    last = len(groups) - 1

    for pos, (x, starts, ends) in enumerate(groups):
        for i in starts:
            counts[cols[i] - 1] += 1
        spread = max(counts) - min(counts)
        if spread > best:
            best = spread
            witness = x
        if regions is not None:
            regions.append(RegionCounts(x, x, tuple(counts)))
        if ends:
            for i in ends:
                counts[cols[i] - 1] -= 1
            if pos < last:
                # something left, so the open region right of x can differ
                spread = max(counts) - min(counts)
                if spread > best:
                    best = spread
                    witness = (x + groups[pos + 1][0]) / 2
                if regions is not None:
                    regions.append(
                        RegionCounts(x, groups[pos + 1][0], tuple(counts))
                    )
        elif regions is not None and pos < last:
            regions.append(RegionCounts(x, groups[pos + 1][0], tuple(counts)))

    per_region = tuple(regions) if regions is not None else None
    return ImbalanceReport(best, witness, per_region)


def is_balanced(instance: Instance, coloring: Coloring) -> bool:
    """True iff the coloring's imbalance is at most one everywhere."""
    return imbalance(instance, coloring).value <= 1


def divisibility_predicts_zero(instance: Instance) -> bool:
    """True iff every point's coverage depth is a multiple of k.

    When true the minimum achievable imbalance is 0; otherwise it is 1
    (a balanced coloring always exists, and any point whose depth is not a
    multiple of k forces two color counts there to differ).
    """
    k = instance.k
    depth = 0
    groups = list(_event_groups(instance.intervals))
    for pos, (_, starts, ends) in enumerate(groups):
        depth += len(starts)
        if depth % k:
            return False
        if ends:
            depth -= len(ends)
            if pos + 1 < len(groups) and depth % k:
                return False
    return True


def point_cliques(
    intervals: Sequence[Interval],
) -> Tuple[Tuple[Coord, frozenset], ...]:
    """Every coverage set of the line, each with one witness point.

    Measured at every distinct endpoint (after admitting the intervals
    starting there) and at the midpoint of every region between consecutive
    distinct endpoints.  Materializes the sets, so intended for desk-scale
    inputs only.
    """
    active: Set[int] = set()
    out: List[Tuple[Coord, frozenset]] = []
    groups = list(_event_groups(intervals))
    for pos, (x, starts, ends) in enumerate(groups):
        active.update(starts)
        out.append((x, frozenset(active)))
        active.difference_update(ends)
        if pos + 1 < len(groups):
            y = groups[pos + 1][0]
            out.append(((x + y) / 2, frozenset(active)))
    return tuple(out)


def min_imbalance_oracle(
    instance: Instance, limit_n: int = 12
) -> Tuple[int, Coloring]:
    """Exhaustive minimum imbalance with its lexicographically smallest coloring.

    The first interval is pinned to color 1: relabeling colors by order of
    first appearance never changes the imbalance, so the lexicographically
    smallest minimizer always starts with color 1.  Search is depth-first
    in id order, colors ascending, with branch-and-bound on the coverage
    sets completed so far and an early exit once imbalance 0 is found.
    """
    n = instance.n
    k = instance.k
    if n > limit_n:
        raise ValueError(f"oracle limited to n <= {limit_n} intervals, got {n}")
    if n == 0:
        return 0, Coloring((), k)

    seen: Set[frozenset] = set()
    by_last: List[List[Tuple[int, ...]]] = [[] for _ in range(n)]
    for _, clique in point_cliques(instance.intervals):
        if clique and clique not in seen:
            seen.add(clique)
            by_last[max(clique)].append(tuple(sorted(clique)))

    colors = [0] * n
    best_value: Optional[int] = None
    best_colors: Optional[Tuple[int, ...]] = None

    def spread_of(members: Tuple[int, ...]) -> int:
        counts = [0] * k
        for i in members:
            counts[colors[i] - 1] += 1
        return max(counts) - min(counts)

    def dfs(i: int, running: int) -> None:
        nonlocal best_value, best_colors
        if best_value is not None and running >= best_value:
            return
        if i == n:
            best_value = running
            best_colors = tuple(colors)
            return
        choices: Iterable[int] = (1,) if i == 0 else range(1, k + 1)
        for c in choices:
            colors[i] = c
            new_running = running
            for members in by_last[i]:
                s = spread_of(members)
                if s > new_running:
                    new_running = s
            dfs(i + 1, new_running)
            if best_value == 0:
                break
        colors[i] = 0

    dfs(0, 0)
    assert best_value is not None and best_colors is not None
    return best_value, Coloring(best_colors, k)
