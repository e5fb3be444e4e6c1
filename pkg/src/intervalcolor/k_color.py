"""Balanced k-coloring via constraint construction and bipartite edge coloring.

The event scan cuts the line into windows holding k events of one type and
emits one k-item constraint per window: all items in a constraint must get
pairwise distinct colors.  Padding with virtual items keeps every constraint
at exactly k items and every item in exactly one start-type and one end-type
constraint, so the constraints form a k-regular bipartite multigraph whose
edges are the items.  A proper k-edge-coloring of that graph (which exists
on bipartite multigraphs) assigns each interval its color.

Items are plain ints: ids below the instance size are real intervals;
higher ids are virtual, even offsets for the x padding items and odd
offsets for the y carry-over items.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from intervalcolor.core import (
    END,
    START,
    Coloring,
    Instance,
    Interval,
    InvariantViolation,
    NormalizedInstance,
    imbalance,
    make_instance,
    normalize,
)
from intervalcolor.two_color import two_color

__all__ = [
    "REAL",
    "VIRTUAL_X",
    "VIRTUAL_Y",
    "item_kind",
    "describe_item",
    "Constraint",
    "build_constraints",
    "EdgeItem",
    "EdgeGraph",
    "constraints_to_graph",
    "edge_color",
    "k_color",
    "k_color_dewerra",
    "hypergraph_to_instance",
]

REAL = "real"
VIRTUAL_X = "x"
VIRTUAL_Y = "y"


def item_kind(item: int, n_real: int) -> str:
    """Classify an item id as a real interval or an x/y virtual."""
    if item < n_real:
        return REAL
    return VIRTUAL_X if (item - n_real) % 2 == 0 else VIRTUAL_Y


def describe_item(item: int, n_real: int) -> str:
    if item < n_real:
        return f"I{item}"
    offset = item - n_real
    return f"{'x' if offset % 2 == 0 else 'y'}{offset // 2}"


class Constraint(NamedTuple):
    """Exactly k items that must receive pairwise distinct colors."""

    id: int
    items: Tuple[int, ...]
    side: str  # "start" or "end"


def build_constraints(
    norm: NormalizedInstance, k: int, collect_occurrences: bool = True
) -> Tuple[List[Constraint], Dict[int, List[int]]]:
    """Scan events in rank order and emit the distinct-color constraints.

    A window collects events of one type (chosen by the first event after a
    clear) into an active list.  k collected events emit one constraint and
    clear.  An event of the opposite type closes the window early with two
    constraints instead: the active items padded to k with fresh x virtuals
    on the window's own side, and the interrupting interval plus the same
    x's padded with fresh y virtuals on the opposite side.  The y's become
    the new active list, carrying the still-open overlap forward.

    Returns the constraints and a map from each item to the ids of the
    constraints containing it.  Callers that only need the constraints can
    pass collect_occurrences=False to skip the map (returned empty); at
    scale it costs more to build than the constraints themselves.
    """
    if k < 2:
        raise ValueError(f"constraint construction needs k >= 2, got {k}")
    n = norm.source.n
    constraints: List[Constraint] = []
    occurrences: Dict[int, List[int]] = {}
    next_x = 0
    next_y = 0
    active: List[int] = []
    collecting = 0  # 0 at root, +1 collecting starts, -1 collecting ends
    depth = 0

    if collect_occurrences:
        def emit(items: Tuple[int, ...], side: str) -> None:
            cid = len(constraints)
            constraints.append(Constraint(cid, items, side))
            for item in items:
                known = occurrences.get(item)
                if known is None:
                    occurrences[item] = [cid]
                else:
                    known.append(cid)
    else:
        def emit(items: Tuple[int, ...], side: str) -> None:
            constraints.append(Constraint(len(constraints), items, side))

    for ev in norm.events():
        is_start = ev.kind == START
        depth += 1 if is_start else -1
        if collecting == 0:
            collecting = 1 if is_start else -1
        if is_start == (collecting == 1):
            active.append(ev.interval)
            if len(active) == k:
                emit(tuple(active), "start" if collecting == 1 else "end")
                active.clear()
                collecting = 0
                if depth % k:
                    raise InvariantViolation(
                        f"window cleared at depth {depth}, not a multiple of {k}"
                    )
        else:
            j = len(active)
            xs = tuple(n + 2 * (next_x + t) for t in range(k - j))
            next_x += k - j
            ys = tuple(n + 2 * (next_y + t) + 1 for t in range(j - 1))
            next_y += j - 1
            own = "start" if collecting == 1 else "end"
            opposite = "end" if collecting == 1 else "start"
            emit(tuple(active) + xs, own)
            emit(ys + (ev.interval,) + xs, opposite)
            active[:] = ys
            if not ys:
                collecting = 0
                if depth % k:
                    raise InvariantViolation(
                        f"window cleared at depth {depth}, not a multiple of {k}"
                    )
    if collecting != 0 or active:
        raise InvariantViolation("event scan ended inside an open window")
    return constraints, occurrences


class EdgeItem(NamedTuple):
    """One multigraph edge: an item joining its two constraints."""

    item: int
    start_pos: int  # position within EdgeGraph.start_vertices
    end_pos: int  # position within EdgeGraph.end_vertices


@dataclass(frozen=True)
class EdgeGraph:
    """Bipartite multigraph of constraints (vertices) and items (edges)."""

    start_vertices: Tuple[int, ...]  # constraint ids on the start side
    end_vertices: Tuple[int, ...]  # constraint ids on the end side
    edges: Tuple[EdgeItem, ...]


def constraints_to_graph(constraints: Sequence[Constraint]) -> EdgeGraph:
    """Join the two constraints of every item by an edge.

    Every item must occur in exactly two constraints of opposite sides;
    anything else means the construction upstream is broken.  Edges come
    out in the order of each item's second occurrence.  Item ids are
    dense in the sweep construction, so pairing state lives in flat
    arrays; sparse hand-built ids are compacted first.
    """
    start_pos: Dict[int, int] = {}
    end_pos: Dict[int, int] = {}
    total = 0
    top = -1
    for c in constraints:
        if c.side == "start":
            start_pos[c.id] = len(start_pos)
        else:
            end_pos[c.id] = len(end_pos)
        total += len(c.items)
        for item in c.items:
            if item > top:
                top = item

    names = None  # dense index -> original item id, when compacted
    if top > 4 * total + 64:
        remap: Dict[int, int] = {}
        for c in constraints:
            for item in c.items:
                if item not in remap:
                    remap[item] = len(remap)
        names = list(remap)
        constraints = [
            Constraint(c.id, tuple(remap[item] for item in c.items), c.side)
            for c in constraints
        ]
        top = len(names) - 1

    counts = bytearray(top + 1)
    first_pos = [0] * (top + 1)
    first_on_start = bytearray(top + 1)
    edges: List[EdgeItem] = []
    for c in constraints:
        on_start = c.side == "start"
        pos = start_pos[c.id] if on_start else end_pos[c.id]
        for item in c.items:
            seen = counts[item]
            if seen == 0:
                counts[item] = 1
                first_pos[item] = pos
                first_on_start[item] = on_start
            elif seen == 1:
                counts[item] = 2
                name = names[item] if names is not None else item
                if first_on_start[item] == on_start:
                    raise InvariantViolation(
                        f"item {name} occurs twice on the {c.side} side"
                    )
                if on_start:
                    edges.append(EdgeItem(name, pos, first_pos[item]))
                else:
                    edges.append(EdgeItem(name, first_pos[item], pos))
            else:
                name = names[item] if names is not None else item
                raise InvariantViolation(
                    f"item {name} occurs in more than 2 constraints"
                )
    if 2 * len(edges) != total:
        lonely = next(i for i in range(top + 1) if counts[i] == 1)
        name = names[lonely] if names is not None else lonely
        raise InvariantViolation(f"item {name} occurs in 1 constraints, expected 2")

    # dict insertion order is position order on both sides
    return EdgeGraph(tuple(start_pos), tuple(end_pos), tuple(edges))


def edge_color(graph: EdgeGraph, k: int) -> Tuple[int, ...]:
    """Proper edge coloring of a bipartite multigraph with colors 1..k.

    For each edge (u, v) in order: let a be the smallest color free at u
    and b the smallest free at v.  If they agree, use them.  Otherwise
    swapping a and b along a maximal alternating path, either from v
    (making a free at both ends) or from u (making b free at both ends),
    legalizes the edge: the walk from v cannot reach u because a is free
    at u and start-side vertices are only entered through a-colored
    edges, and mirrored for the walk from u.  Both walks advance in
    lockstep and the first to terminate is swapped, so each edge costs
    twice the shorter path rather than the length of a fixed one.
    """
    nl = len(graph.start_vertices)
    nr = len(graph.end_vertices)
    full = (1 << k) - 1
    free_l = [full] * nl
    free_r = [full] * nr
    slot_l = [-1] * (nl * k)  # (vertex, color) -> edge index
    slot_r = [-1] * (nr * k)
    starts = [e.start_pos for e in graph.edges]
    ends = [e.end_pos for e in graph.edges]
    colors = [0] * len(starts)

    for idx, (u, v) in enumerate(zip(starts, ends)):
        fu = free_l[u]
        fv = free_r[v]
        if not fu or not fv:
            raise InvariantViolation(f"vertex degree exceeds {k}")
        a = (fu & -fu).bit_length() - 1
        b = (fv & -fv).bit_length() - 1
        if a == b:
            c = a
        else:
            # Two maximal alternating paths could free a shared color:
            # from v seeking a, or from u seeking b.  They lie in
            # different components of the a/b-subgraph (a is free at u
            # and start-side vertices are only entered through a-edges,
            # so the walk from v cannot reach u; mirrored for the other
            # walk), so walking both in lockstep and swapping whichever
            # ends first costs twice the shorter path, not the full one.
            ab = a + b
            path_v: List[int] = []
            vert_v = v
            right_v = True
            want_v = a
            path_u: List[int] = []
            vert_u = u
            right_u = False
            want_u = b
            while True:
                e2 = (
                    slot_r[vert_v * k + want_v]
                    if right_v
                    else slot_l[vert_v * k + want_v]
                )
                if e2 < 0:
                    path, vertex, on_right, want, c = path_v, vert_v, right_v, want_v, a
                    break
                path_v.append(e2)
                vert_v = starts[e2] if right_v else ends[e2]
                right_v = not right_v
                want_v = ab - want_v
                e2 = (
                    slot_r[vert_u * k + want_u]
                    if right_u
                    else slot_l[vert_u * k + want_u]
                )
                if e2 < 0:
                    path, vertex, on_right, want, c = path_u, vert_u, right_u, want_u, b
                    break
                path_u.append(e2)
                vert_u = starts[e2] if right_u else ends[e2]
                right_u = not right_u
                want_u = ab - want_u
            if path:
                # Swap a and b along the path in one pass.  Interior
                # vertices keep both colors occupied, just by swapped
                # edges, and every such slot is rewritten here; only the
                # two path ends change their free sets.
                swap = ab + 2  # colors are stored 1-based
                for e2 in path:
                    c2 = swap - colors[e2]
                    colors[e2] = c2
                    ci = c2 - 1
                    slot_l[starts[e2] * k + ci] = e2
                    slot_r[ends[e2] * k + ci] = e2
                if c == a:
                    slot_r[v * k + a] = -1  # first edge moved off a
                    free_r[v] &= ~(1 << b)  # and now occupies b
                else:
                    slot_l[u * k + b] = -1  # first edge moved off b
                    free_l[u] &= ~(1 << a)  # and now occupies a
                last_freed = ab - want  # old color of the final path edge
                if on_right:
                    slot_r[vertex * k + last_freed] = -1
                    free_r[vertex] = (free_r[vertex] | (1 << last_freed)) & ~(1 << want)
                else:
                    slot_l[vertex * k + last_freed] = -1
                    free_l[vertex] = (free_l[vertex] | (1 << last_freed)) & ~(1 << want)
            if slot_l[u * k + c] >= 0 or slot_r[v * k + c] >= 0:
                raise InvariantViolation("alternating path failed to free a color")
        colors[idx] = c + 1
        slot_l[u * k + c] = idx
        slot_r[v * k + c] = idx
        free_l[u] &= ~(1 << c)
        free_r[v] &= ~(1 << c)

    return tuple(colors)


def k_color(instance: Instance) -> Coloring:
    """Balanced k-coloring of a closed-interval instance.

    k = 1 trivially colors everything alike.  Otherwise composes the
    constraint scan, the constraint multigraph, and its edge coloring;
    every real interval takes the color of its item's edge and virtual
    items' colors are discarded.
    """
    k = instance.k
    if k == 1:
        return Coloring((1,) * instance.n, 1)
    constraints, _ = build_constraints(
        normalize(instance), k, collect_occurrences=False
    )
    graph = constraints_to_graph(constraints)
    edge_colors = edge_color(graph, k)
    colors = [0] * instance.n
    for idx, edge in enumerate(graph.edges):
        if edge.item < instance.n:
            colors[edge.item] = edge_colors[idx]
    return Coloring(tuple(colors), k)


def k_color_dewerra(
    instance: Instance,
    max_extra: Optional[int] = None,
    return_passes: bool = False,
):
    """Balanced k-coloring by repeated pairwise rebalancing.

    Starts from the round-robin-by-id coloring.  Each pass finds the color
    pair (i, j) whose pointwise count difference is largest (ties to the
    lexicographically smallest pair), stops if that difference is at most
    one, and otherwise 2-colors the intervals of those two colors from
    scratch; the class containing the lowest extracted id keeps color i.

    Each pass drives its own pair's difference to at most 1 and never
    increases the overall worst difference, and a sum-of-squares potential
    over the measured points guarantees termination.  The scheme is
    classically credited with needing at most k(k-1)/2 passes, but pairs
    already balanced can re-break at small differences, and moderate random
    instances routinely exceed that figure.  The pass budget is therefore
    capped at k(k-1)/2 + max_extra (max_extra defaults to k); exhausting
    the cap raises InvariantViolation rather than looping on.

    With return_passes=True, returns (coloring, passes) instead of the
    coloring alone.
    """
    k = instance.k
    if k < 2:
        raise ValueError(f"pairwise rebalancing needs k >= 2, got {k}")
    n = instance.n
    colors = [(i % k) + 1 for i in range(n)]
    limit = k * (k - 1) // 2 + (k if max_extra is None else max_extra)

    for done in range(limit + 1):
        value, pair = _worst_pair(instance, colors)
        if value <= 1:
            coloring = Coloring(tuple(colors), k)
            return (coloring, done) if return_passes else coloring
        i, j = pair
        extracted = [t for t in range(n) if colors[t] in (i, j)]
        sub = Instance(
            tuple(
                Interval(pos, instance.intervals[t].lo, instance.intervals[t].hi)
                for pos, t in enumerate(extracted)
            ),
            2,
        )
        sub_colors = two_color(sub).colors
        keep = sub_colors[0]  # class of the lowest extracted id keeps color i
        for pos, t in enumerate(extracted):
            colors[t] = i if sub_colors[pos] == keep else j
    raise InvariantViolation(
        f"rebalancing did not converge within {limit} passes"
    )


def _worst_pair(
    instance: Instance, colors: List[int]
) -> Tuple[int, Tuple[int, int]]:
    """Largest pointwise count difference over all color pairs.

    Returns (difference, (i, j)) with the lexicographically smallest pair
    among maximizers.
    """
    k = instance.k
    coloring = Coloring(tuple(colors), k)
    report = imbalance(instance, coloring, with_regions=True)
    best = 0
    best_pair = (1, 2)
    for region in report.per_region:
        counts = region.counts
        for i in range(k):
            for j in range(i + 1, k):
                diff = abs(counts[i] - counts[j])
                if diff > best:
                    best = diff
                    best_pair = (i + 1, j + 1)
    return best, best_pair


def hypergraph_to_instance(matrix: Sequence[Sequence[int]], k: int) -> Instance:
    """Intervals [first 1, last 1] per row of a consecutive-ones matrix.

    Column j of the matrix becomes point j on the line (1-based), so a
    balanced coloring of the intervals is balanced on every column.
    All-zero rows become isolated points beyond the last column and may
    take any color.  Rows whose 1-entries are not consecutive under the
    given column order are rejected.
    """
    width = len(matrix[0]) if len(matrix) else 0
    bounds = []
    zero_rows = 0
    for r, row in enumerate(matrix):
        if len(row) != width:
            raise ValueError(f"row {r} has {len(row)} entries, expected {width}")
        ones = [c for c, entry in enumerate(row) if entry == 1]
        if any(entry not in (0, 1) for entry in row):
            raise ValueError(f"row {r} contains entries other than 0 and 1")
        if not ones:
            spot = width + 1 + zero_rows
            zero_rows += 1
            bounds.append((spot, spot))
            continue
        first, last = ones[0], ones[-1]
        if last - first + 1 != len(ones):
            raise ValueError(
                f"row {r}: ones are not consecutive in the given column order"
            )
        bounds.append((first + 1, last + 1))
    return make_instance(bounds, k)
