"""Hardness constructions: positive not-all-equal 3-SAT to balanced
rectangle coloring, Partition to weighted intervals, and not-all-equal
3-SAT to same-color interval groups.

The rectangle reduction lays a formula out on an integer grid.  Clause
gadgets sit in a bottom row: three rectangles that all overlap in one
shared region and nowhere else, so a balanced 2-coloring exists there
exactly when they are not monochromatic.  Variable rectangles sit in a
top row.  Every literal is wired to its variable by a chain of
rectangles in which consecutive links overlap pairwise and only
pairwise; a chain with an odd number of links forces its two endpoints
to share a color.  Chains run on dedicated horizontal tracks and
vertical columns, and wherever two chains cross, a three-rectangle
crossing gadget lets them pass without constraining each other.  For
k > 2, nested cover rectangles enclose the construction and share a
witness point outside it, which pins k - 2 colors and keeps the core
argument two-colored.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from .core import (
    Coord,
    Coloring,
    ImbalanceReport,
    Instance,
    Interval,
    InvariantViolation,
    _event_groups,
    is_balanced,
    make_instance,
    to_coord,
)

__all__ = [
    "NaeFormula",
    "Box",
    "BoxInstance",
    "WeightedInstance",
    "make_box_instance",
    "boxes_intersect",
    "nae_brute_force",
    "reduce_nae_to_boxes",
    "box_imbalance",
    "decide_balanced_boxes",
    "reduce_partition_to_weighted",
    "weighted_imbalance",
    "reduce_nae_to_multiple_intervals",
    "decide_grouped_intervals",
]

BOX_TAGS = ("clause", "variable", "chain", "crossing", "cover")


@dataclass(frozen=True)
class NaeFormula:
    """Positive not-all-equal 3-SAT: each clause lists three variable ids.

    Variables occur unnegated.  A clause is satisfied when its three
    variables do not all carry the same truth value.  Repeats inside a
    clause are allowed: naming one variable three times makes the clause
    unsatisfiable, naming it twice reduces the clause to an inequality.
    """

    num_vars: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError(f"num_vars must be >= 0, got {self.num_vars}")
        normalized = []
        for pos, clause in enumerate(self.clauses):
            triple = tuple(clause)
            if len(triple) != 3:
                raise ValueError(f"clause {pos} has {len(triple)} literals, not 3")
            for v in triple:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise TypeError(f"clause {pos}: variable ids must be int")
                if not 1 <= v <= self.num_vars:
                    raise ValueError(
                        f"clause {pos}: variable {v} outside 1..{self.num_vars}"
                    )
            normalized.append(triple)
        object.__setattr__(self, "clauses", tuple(normalized))


@dataclass(frozen=True)
class Box:
    """Axis-aligned closed box: one [lo, hi] interval per dimension."""

    id: int
    bounds: Tuple[Tuple[Coord, Coord], ...]
    tag: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds", tuple(tuple(b) for b in self.bounds))
        for dim, (lo, hi) in enumerate(self.bounds):
            if not isinstance(lo, Fraction) or not isinstance(hi, Fraction):
                raise TypeError(
                    f"box {self.id} dim {dim}: bounds must be Coord; use to_coord()"
                )
            if lo > hi:
                raise ValueError(f"box {self.id} dim {dim}: lo {lo} > hi {hi}")
        if self.tag not in BOX_TAGS:
            raise ValueError(f"box {self.id}: unknown tag {self.tag!r}")

    def contains(self, point: Sequence[Coord]) -> bool:
        return all(lo <= x <= hi for (lo, hi), x in zip(self.bounds, point))


@dataclass(frozen=True)
class BoxInstance:
    """Boxes in d dimensions plus the number of colors k.

    provenance maps a box id to the formula element it realizes when the
    instance came out of reduce_nae_to_boxes; hand-built instances leave
    it empty.
    """

    boxes: Tuple[Box, ...]
    d: int
    k: int
    provenance: Mapping[int, Tuple] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "boxes", tuple(self.boxes))
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for pos, box in enumerate(self.boxes):
            if box.id != pos:
                raise ValueError(
                    f"box ids must be 0..n-1 in order; position {pos} holds {box.id}"
                )
            if len(box.bounds) != self.d:
                raise ValueError(
                    f"box {pos} has {len(box.bounds)} dimensions, instance has {self.d}"
                )

    @property
    def n(self) -> int:
        return len(self.boxes)


def make_box_instance(
    bounds: Iterable[Sequence[Sequence[object]]], k: int, tags: Optional[Sequence[str]] = None
) -> BoxInstance:
    """Build a BoxInstance from per-box ((lo, hi), ...) bounds, ids in order."""
    boxes = []
    for i, dims in enumerate(bounds):
        tag = tags[i] if tags is not None else "clause"
        coords = tuple((to_coord(lo), to_coord(hi)) for lo, hi in dims)
        boxes.append(Box(i, coords, tag))
    if boxes:
        d = len(boxes[0].bounds)
    else:
        d = 2
    return BoxInstance(tuple(boxes), d, k)


def boxes_intersect(a: Box, b: Box) -> bool:
    """True iff the closed boxes share at least one point."""
    return all(
        alo <= bhi and blo <= ahi
        for (alo, ahi), (blo, bhi) in zip(a.bounds, b.bounds)
    )


@dataclass(frozen=True)
class WeightedInstance:
    """Intervals with positive integer weights plus the number of colors k."""

    intervals: Tuple[Interval, ...]
    weights: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(self.intervals))
        object.__setattr__(self, "weights", tuple(self.weights))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if len(self.weights) != len(self.intervals):
            raise ValueError(
                f"{len(self.weights)} weights for {len(self.intervals)} intervals"
            )
        for pos, itv in enumerate(self.intervals):
            if itv.id != pos:
                raise ValueError(
                    f"interval ids must be 0..n-1 in order; position {pos} holds {itv.id}"
                )
        for pos, w in enumerate(self.weights):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError(f"weight at position {pos} must be a positive int")

    @property
    def n(self) -> int:
        return len(self.intervals)


def nae_brute_force(
    formula: NaeFormula,
) -> Tuple[bool, Optional[Tuple[bool, ...]]]:
    """Exhaustively decide not-all-equal satisfiability.

    Returns (True, assignment) for the first satisfying assignment in
    counting order (variable 1 is the lowest bit, False before True),
    or (False, None) if none exists.
    """
    if formula.num_vars > 24:
        raise ValueError(
            f"brute force limited to 24 variables, got {formula.num_vars}"
        )
    for bits in range(1 << formula.num_vars):
        for a, b, c in formula.clauses:
            va = bits >> (a - 1) & 1
            if va == bits >> (b - 1) & 1 == bits >> (c - 1) & 1:
                break
        else:
            assignment = tuple(
                bool(bits >> v & 1) for v in range(formula.num_vars)
            )
            return True, assignment
    return False, None


# Grid layout constants for reduce_nae_to_boxes.  Vertical chain runs
# occupy one-unit-wide columns at x = 7j; horizontal runs occupy
# one-unit-tall tracks spaced 6 apart so a crossing gadget (which pokes
# 2 below and 3 above its track) never touches the neighboring track.
_COL_PITCH = 7
_TRACK0 = 8
_TRACK_PITCH = 6

# Literal slot s of a clause attaches to one of the three clause
# rectangles: the wide left one, the wide right one, or the tall one
# covering their overlap.  Columns within the clause and the y level
# where the chain dips into the rectangle differ per slot.
_SLOT_RECT = ("left", "right", "tall")
_SLOT_COL = (0, 2, 1)
_SLOT_DIP = (1, 1, 4)


def reduce_nae_to_boxes(formula: NaeFormula, k: int, d: int = 2) -> BoxInstance:
    """Build a box instance with a balanced k-coloring iff the formula is
    not-all-equal satisfiable.

    Clause i occupies x in [21i, 21i+15] at the bottom: left rectangle
    [21i, 21i+10] x [0, 2], right [21i+5, 21i+15] x [0, 2], tall
    [21i+5, 21i+10] x [0, 5]; all three pairwise intersections equal the
    shared region [21i+5, 21i+10] x [0, 2].  Variable rectangles sit in
    a top row, one column slot per occurrence.  The chain for literal
    slot s of clause i runs: down a column from the variable row, along
    a private horizontal track, and down a second column into the clause
    rectangle.  Crossings between a vertical run and another chain's
    track get the crossing gadget: two overlapping one-tall rectangles
    in the horizontal chain and one pass-through rectangle in the
    vertical chain, arranged so any two of the three share a region that
    the third also covers, hence no color constraint between the chains.
    A chain whose horizontal run has an odd number of crossings would
    have even length, so it gets one extra parity rectangle at the
    variable end.  For k > 2, k - 2 nested cover rectangles contain
    every other box and share the point (xmax + 1, 1) beyond the
    construction.  d > 2 pads every box with zero-length dimensions.

    The finished instance is audited: every pair of boxes must intersect
    exactly when the construction plan says it should, otherwise
    InvariantViolation is raised.
    """
    if k < 2:
        raise ValueError(f"reduction needs k >= 2, got {k}")
    if d < 2:
        raise ValueError(f"reduction needs d >= 2, got {d}")
    m = len(formula.clauses)
    n_conn = 3 * m
    n_covers = k - 2

    # Connection c = 3i + s wires literal slot s of clause i to its
    # variable.  Each connection owns one horizontal track, one column
    # at the clause (bottom) and one column at the variable (top).
    deg = Counter(v for clause in formula.clauses for v in clause)
    var_slot: Dict[int, int] = {}
    var_width: Dict[int, int] = {}
    slot = n_conn
    for v in range(1, formula.num_vars + 1):
        var_slot[v] = slot
        var_width[v] = max(deg.get(v, 0), 1)
        slot += var_width[v]

    var_of = [0] * n_conn
    b_col = [0] * n_conn
    q_col = [0] * n_conn
    track = [0] * n_conn
    dip = [0] * n_conn
    used: Counter = Counter()
    for c in range(n_conn):
        i, s = divmod(c, 3)
        v = formula.clauses[i][s]
        var_of[c] = v
        b_col[c] = 3 * i + _SLOT_COL[s]
        dip[c] = _SLOT_DIP[s]
        track[c] = _TRACK0 + _TRACK_PITCH * c
        q_col[c] = var_slot[v] + used[v]
        used[v] += 1
    vy = _TRACK0 + _TRACK_PITCH * n_conn  # variable row baseline

    # A vertical run and a horizontal track cross exactly when the
    # column lies strictly inside the track's span and the run's y range
    # covers the track.  With tracks ordered by connection and all
    # variable columns right of all clause columns, that reduces to two
    # index comparisons.
    h_cols: List[List[int]] = [[] for _ in range(n_conn)]
    top_tracks: List[List[int]] = [[] for _ in range(n_conn)]
    bot_tracks: List[List[int]] = [[] for _ in range(n_conn)]
    vert_of_col: Dict[int, int] = {}
    for c in range(n_conn):
        vert_of_col[q_col[c]] = c
        vert_of_col[b_col[c]] = c
    for a in range(n_conn):
        for b in range(n_conn):
            if a < b and q_col[a] < q_col[b]:
                top_tracks[a].append(track[b])
                h_cols[b].append(q_col[a])
            if a > b and b_col[a] > b_col[b]:
                bot_tracks[a].append(track[b])
                h_cols[b].append(b_col[a])
    for lst in itertools.chain(h_cols, top_tracks, bot_tracks):
        lst.sort()

    # Construction boxes get ids after the covers so the decider's
    # id-order search colors covers first.
    entries: List[Tuple[Tuple[int, int, int, int], str, Tuple]] = []
    expected: Set[Tuple[int, int]] = set()

    def add(x0: int, x1: int, y0: int, y1: int, tag: str, prov: Tuple) -> int:
        bid = n_covers + len(entries)
        entries.append(((x0, x1, y0, y1), tag, prov))
        return bid

    def expect(a: int, b: int) -> None:
        expected.add((a, b) if a < b else (b, a))

    var_rect: Dict[int, int] = {}
    for v in range(1, formula.num_vars + 1):
        x0 = _COL_PITCH * var_slot[v]
        x1 = _COL_PITCH * (var_slot[v] + var_width[v] - 1) + 1
        var_rect[v] = add(x0, x1, vy, vy + 2, "variable", ("variable", v))

    # registry[(vertical conn, horizontal conn)] collects the three
    # gadget boxes of one crossing.
    registry: Dict[Tuple[int, int], Dict[str, int]] = {}
    pending_junction: List[Tuple[int, int]] = []  # (last link id, connection)

    for c in range(n_conn):
        links: List[int] = []

        def chain_add(
            x0: int, x1: int, y0: int, y1: int, tag: str, detail: Optional[str] = None
        ) -> int:
            if detail is None:
                prov: Tuple = ("chain", c, len(links))
            else:
                prov = ("chain", c, len(links), detail)
            bid = add(x0, x1, y0, y1, tag, prov)
            links.append(bid)
            return bid

        t = track[c]
        xq0, xq1 = _COL_PITCH * q_col[c], _COL_PITCH * q_col[c] + 1
        xb0, xb1 = _COL_PITCH * b_col[c], _COL_PITCH * b_col[c] + 1

        # Chain length is 2*(top crossings) + 3*(track crossings)
        # + 2*(bottom crossings) + 3, odd iff the track crossing count
        # is even; otherwise one parity rectangle restores oddness.
        if len(h_cols[c]) % 2 == 1:
            chain_add(xq0, xq1, vy - 2, vy + 1, "chain", "parity")
            top_end = vy - 1
        else:
            top_end = vy + 1

        # Top vertical run, from the variable row down to the track.
        ups = top_tracks[c]
        if not ups:
            chain_add(xq0, xq1, t, top_end, "chain")
        else:
            chain_add(xq0, xq1, ups[-1] + 2, top_end, "chain")
            for idx in range(len(ups) - 1, -1, -1):
                u = ups[idx]
                hc = (u - _TRACK0) // _TRACK_PITCH
                wid = chain_add(xq0, xq1, u - 2, u + 3, "crossing", "cross-pass")
                registry.setdefault((c, hc), {})["pass"] = wid
                if idx > 0:
                    chain_add(xq0, xq1, ups[idx - 1] + 2, u - 1, "chain")
                else:
                    chain_add(xq0, xq1, t, u - 1, "chain")

        # Horizontal run along the track, traversed variable side first.
        cols = h_cols[c]
        if not cols:
            chain_add(xb0, xq1, t, t + 1, "chain")
        else:
            chain_add(_COL_PITCH * cols[-1] + 2, xq1, t, t + 1, "chain")
            for idx in range(len(cols) - 1, -1, -1):
                j = cols[idx]
                vc = vert_of_col[j]
                g = registry.setdefault((vc, c), {})
                g["right"] = chain_add(
                    _COL_PITCH * j - 1, _COL_PITCH * j + 3, t, t + 1,
                    "crossing", "cross-right",
                )
                g["left"] = chain_add(
                    _COL_PITCH * j - 3, _COL_PITCH * j + 1, t, t + 1,
                    "crossing", "cross-left",
                )
                if idx > 0:
                    chain_add(
                        _COL_PITCH * cols[idx - 1] + 2, _COL_PITCH * j - 2,
                        t, t + 1, "chain",
                    )
                else:
                    chain_add(xb0, _COL_PITCH * j - 2, t, t + 1, "chain")

        # Bottom vertical run, from the track down into the clause rect.
        downs = bot_tracks[c]
        if not downs:
            chain_add(xb0, xb1, dip[c], t + 1, "chain")
        else:
            chain_add(xb0, xb1, downs[-1] + 2, t + 1, "chain")
            for idx in range(len(downs) - 1, -1, -1):
                u = downs[idx]
                hc = (u - _TRACK0) // _TRACK_PITCH
                wid = chain_add(xb0, xb1, u - 2, u + 3, "crossing", "cross-pass")
                registry.setdefault((c, hc), {})["pass"] = wid
                if idx > 0:
                    chain_add(xb0, xb1, downs[idx - 1] + 2, u - 1, "chain")
                else:
                    chain_add(xb0, xb1, dip[c], u - 1, "chain")

        if len(links) % 2 != 1:
            raise InvariantViolation(f"chain {c} has even length {len(links)}")
        for aid, bid in zip(links, links[1:]):
            expect(aid, bid)
        expect(var_rect[var_of[c]], links[0])
        pending_junction.append((links[-1], c))

    clause_rect: Dict[Tuple[int, str], int] = {}
    for i in range(m):
        ox = 21 * i
        left = add(ox, ox + 10, 0, 2, "clause", ("clause", i, "left"))
        right = add(ox + 5, ox + 15, 0, 2, "clause", ("clause", i, "right"))
        tall = add(ox + 5, ox + 10, 0, 5, "clause", ("clause", i, "tall"))
        clause_rect[(i, "left")] = left
        clause_rect[(i, "right")] = right
        clause_rect[(i, "tall")] = tall
        expect(left, right)
        expect(left, tall)
        expect(right, tall)
    for last_link, c in pending_junction:
        i, s = divmod(c, 3)
        expect(last_link, clause_rect[(i, _SLOT_RECT[s])])

    for key, g in registry.items():
        if set(g) != {"pass", "left", "right"}:
            raise InvariantViolation(f"crossing {key} is missing gadget boxes")
        expect(g["pass"], g["left"])
        expect(g["pass"], g["right"])

    if entries:
        xmax = max(e[0][1] for e in entries)
        ymax = max(e[0][3] for e in entries)
    else:
        xmax = ymax = 0
    cover_entries: List[Tuple[Tuple[int, int, int, int], str, Tuple]] = []
    for j in range(1, n_covers + 1):
        cover_entries.append(
            ((-j, xmax + 1 + j, -j, ymax + j), "cover", ("cover", j))
        )
    total = len(cover_entries) + len(entries)
    for a in range(n_covers):
        for b in range(a + 1, total):
            expected.add((a, b))

    boxes: List[Box] = []
    provenance: Dict[int, Tuple] = {}
    pad = ((Fraction(0), Fraction(0)),) * (d - 2)
    for bid, ((x0, x1, y0, y1), tag, prov) in enumerate(
        itertools.chain(cover_entries, entries)
    ):
        bounds = ((Fraction(x0), Fraction(x1)), (Fraction(y0), Fraction(y1))) + pad
        boxes.append(Box(bid, bounds, tag))
        provenance[bid] = prov

    instance = BoxInstance(tuple(boxes), d, k, provenance)
    _audit_reduction(instance, expected)
    return instance


def _audit_reduction(instance: BoxInstance, expected: Set[Tuple[int, int]]) -> None:
    """Check that boxes intersect exactly as the construction planned."""
    boxes = instance.boxes
    for a in range(len(boxes)):
        for b in range(a + 1, len(boxes)):
            actual = boxes_intersect(boxes[a], boxes[b])
            planned = (a, b) in expected
            if actual != planned:
                kind = "unplanned" if actual else "missing"
                raise InvariantViolation(
                    f"{kind} intersection between box {a} "
                    f"{instance.provenance.get(a)} and box {b} "
                    f"{instance.provenance.get(b)}"
                )


def _dim_samples_and_masks(
    boxes: Sequence[Box], d: int
) -> List[Tuple[List[Coord], List[int]]]:
    """Per dimension: sample coordinates (endpoints and midpoints between
    consecutive endpoints) and, per sample, the bitmask of boxes whose
    projection covers it."""
    per_dim: List[Tuple[List[Coord], List[int]]] = []
    for dim in range(d):
        coords = sorted(
            {b.bounds[dim][0] for b in boxes} | {b.bounds[dim][1] for b in boxes}
        )
        samples: List[Coord] = []
        for idx, x in enumerate(coords):
            if idx:
                samples.append((coords[idx - 1] + x) / 2)
            samples.append(x)
        masks: List[int] = []
        for x in samples:
            msk = 0
            for box in boxes:
                lo, hi = box.bounds[dim]
                if lo <= x <= hi:
                    msk |= 1 << box.id
            masks.append(msk)
        per_dim.append((samples, masks))
    return per_dim


def _spread_of_mask(msk: int, colors: Tuple[int, ...], k: int) -> int:
    counts = [0] * k
    while msk:
        low = msk & -msk
        counts[colors[low.bit_length() - 1] - 1] += 1
        msk ^= low
    return max(counts) - min(counts)


def box_imbalance(instance: BoxInstance, coloring: Coloring) -> ImbalanceReport:
    """Worst color-count spread over every point of d-space.

    Samples the arrangement grid: the Cartesian product, over
    dimensions, of all box endpoints plus the midpoints between
    consecutive endpoints.  Every distinct covering set attains one of
    those samples, so the maximum is exact.  witness is the first grid
    point (lexicographic in dimension order) attaining the maximum, as a
    coordinate tuple, or None for an empty instance.
    """
    if len(coloring.colors) != instance.n:
        raise ValueError(
            f"coloring has {len(coloring.colors)} entries for {instance.n} boxes"
        )
    if coloring.k != instance.k:
        raise ValueError(
            f"coloring uses k={coloring.k} but instance has k={instance.k}"
        )
    if not instance.boxes:
        return ImbalanceReport(0, None)
    per_dim = _dim_samples_and_masks(instance.boxes, instance.d)
    spread_cache: Dict[int, int] = {0: 0}
    best = -1
    witness: Optional[Tuple[Coord, ...]] = None
    for combo in itertools.product(*(range(len(p[0])) for p in per_dim)):
        msk = per_dim[0][1][combo[0]]
        for dim in range(1, instance.d):
            msk &= per_dim[dim][1][combo[dim]]
            if not msk:
                break
        spread = spread_cache.get(msk)
        if spread is None:
            spread = _spread_of_mask(msk, coloring.colors, instance.k)
            spread_cache[msk] = spread
        if spread > best:
            best = spread
            witness = tuple(per_dim[dim][0][combo[dim]] for dim in range(instance.d))
    return ImbalanceReport(best, witness)


def decide_balanced_boxes(
    instance: BoxInstance, limit_n: int = 600
) -> Optional[Coloring]:
    """Search for a balanced k-coloring of the boxes, or return None.

    Exhaustive backtracking in box id order, colors ascending, so the
    first balanced coloring in that order is returned.  A partial
    assignment is abandoned as soon as any arrangement cell whose boxes
    are all colored shows a spread above one.  That prune makes the
    search practical on reduction outputs, where chains propagate forced
    colors link by link; arbitrary instances this size may still take
    exponential time.
    """
    n = instance.n
    k = instance.k
    if n > limit_n:
        raise ValueError(f"decider limited to n <= {limit_n} boxes, got {n}")
    if n == 0:
        return Coloring((), k)

    per_dim = _dim_samples_and_masks(instance.boxes, instance.d)
    distinct: Set[int] = set()
    if instance.d == 2:
        ymasks = per_dim[1][1]
        for mx in per_dim[0][1]:
            if not mx:
                continue
            for my in ymasks:
                both = mx & my
                if both:
                    distinct.add(both)
    else:
        for combo in itertools.product(*(p[1] for p in per_dim)):
            both = combo[0]
            for msk in combo[1:]:
                both &= msk
                if not both:
                    break
            if both:
                distinct.add(both)

    cells = sorted(distinct)
    members: List[List[int]] = []
    for msk in cells:
        ids = []
        while msk:
            low = msk & -msk
            ids.append(low.bit_length() - 1)
            msk ^= low
        members.append(ids)
    box_cells: List[List[int]] = [[] for _ in range(n)]
    for idx, ids in enumerate(members):
        for b in ids:
            box_cells[b].append(idx)
    counts = [[0] * k for _ in cells]
    remaining = [len(ids) for ids in members]
    colors = [0] * n

    def place(b: int, color: int) -> bool:
        ok = True
        for idx in box_cells[b]:
            cnt = counts[idx]
            cnt[color - 1] += 1
            remaining[idx] -= 1
            if remaining[idx] == 0 and max(cnt) - min(cnt) > 1:
                ok = False
        if not ok:
            unplace(b, color)
        return ok

    def unplace(b: int, color: int) -> None:
        for idx in box_cells[b]:
            counts[idx][color - 1] -= 1
            remaining[idx] += 1

    i = 0
    while True:
        if i == n:
            return Coloring(tuple(colors), k)
        color = colors[i] + 1
        if color > k:
            colors[i] = 0
            i -= 1
            if i < 0:
                return None
            unplace(i, colors[i])
            continue
        colors[i] = color
        if place(i, color):
            i += 1


def reduce_partition_to_weighted(values: Sequence[int]) -> WeightedInstance:
    """Partition to weighted interval coloring: n identical intervals
    [0, 1] carrying the given weights, k = 2.  The weighted imbalance of
    a 2-coloring is the absolute difference of the two side sums, so
    zero is achievable iff the values split evenly."""
    weights = tuple(values)
    intervals = tuple(
        Interval(i, Fraction(0), Fraction(1)) for i in range(len(weights))
    )
    return WeightedInstance(intervals, weights, 2)


def weighted_imbalance(weighted: WeightedInstance, coloring: Coloring) -> int:
    """Worst weighted color-count spread over every point of the line.

    Identical to the unweighted sweep except each interval contributes
    its weight instead of one.
    """
    if len(coloring.colors) != weighted.n:
        raise ValueError(
            f"coloring has {len(coloring.colors)} entries "
            f"for {weighted.n} intervals"
        )
    if coloring.k != weighted.k:
        raise ValueError(
            f"coloring uses k={coloring.k} but instance has k={weighted.k}"
        )
    k = weighted.k
    cols = coloring.colors
    w = weighted.weights
    counts = [0] * k
    best = 0
    groups = list(_event_groups(weighted.intervals))
    last = len(groups) - 1
    for pos, (_, starts, ends) in enumerate(groups):
        for i in starts:
            counts[cols[i] - 1] += w[i]
        spread = max(counts) - min(counts)
        if spread > best:
            best = spread
        if ends:
            for i in ends:
                counts[cols[i] - 1] -= w[i]
            if pos < last:
                spread = max(counts) - min(counts)
                if spread > best:
                    best = spread
    return best


def reduce_nae_to_multiple_intervals(
    formula: NaeFormula,
) -> Tuple[Instance, Tuple[Tuple[int, ...], ...]]:
    """Not-all-equal 3-SAT to interval coloring with same-color groups.

    Clause i becomes three unit intervals at [3i, 3i+1], disjoint from
    every other clause; interval 3i+s stands for literal slot s.  Group
    g collects the intervals of variable g+1, which a grouped coloring
    must paint alike.  With k = 2, a balanced grouped coloring exists
    iff the formula is satisfiable: inside one clause the spread is 1
    when the three intervals are not monochromatic and 3 when they are.
    """
    bounds = []
    for i in range(len(formula.clauses)):
        for _ in range(3):
            bounds.append((3 * i, 3 * i + 1))
    instance = make_instance(bounds, 2)
    groups = tuple(
        tuple(
            3 * i + s
            for i, clause in enumerate(formula.clauses)
            for s in range(3)
            if clause[s] == v
        )
        for v in range(1, formula.num_vars + 1)
    )
    return instance, groups


def decide_grouped_intervals(
    instance: Instance,
    groups: Sequence[Sequence[int]],
    limit_groups: int = 20,
) -> Optional[Coloring]:
    """Search for a balanced coloring constant on each group, or None.

    Groups must partition the interval ids.  Brute force over the k^g
    group color assignments in counting order, so the first balanced
    assignment in that order is returned.
    """
    flat = sorted(i for group in groups for i in group)
    if flat != list(range(instance.n)):
        raise ValueError("groups must partition the interval ids exactly")
    if len(groups) > limit_groups:
        raise ValueError(
            f"brute force limited to {limit_groups} groups, got {len(groups)}"
        )
    k = instance.k
    colors = [0] * instance.n
    for assignment in itertools.product(range(1, k + 1), repeat=len(groups)):
        for group, color in zip(groups, assignment):
            for i in group:
                colors[i] = color
        coloring = Coloring(tuple(colors), k)
        if is_balanced(instance, coloring):
            return coloring
    return None
