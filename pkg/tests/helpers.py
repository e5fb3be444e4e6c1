"""Shared random generators and timing utilities for the test suite."""

import gc
import time
from fractions import Fraction

from intervalcolor.core import Coloring, Instance, make_instance


def random_instance(rng, n, k, collide=0.3, span=60):
    """Random closed-interval instance.

    With probability `collide` an endpoint is drawn from a small shared
    pool, forcing coordinate collisions (equal starts, equal ends, and
    touching start/end pairs).  Coordinates are halves of integers so
    non-integer ties occur too.
    """
    pool = [Fraction(rng.randrange(-span, span), 2) for _ in range(max(4, n // 2))]

    def coord():
        if rng.random() < collide:
            return rng.choice(pool)
        return Fraction(rng.randrange(-span, span), 2)

    bounds = []
    for _ in range(n):
        a, b = coord(), coord()
        if b < a:
            a, b = b, a
        bounds.append((a, b))
    return make_instance(bounds, k)


def random_coloring(rng, n, k):
    return Coloring(tuple(rng.randint(1, k) for _ in range(n)), k)


def random_arc_instance(rng, n, k, circumference=20, full_rate=0.1):
    """Random arc instance on a fixed circumference.

    Starts and lengths are halves of integers so endpoint collisions occur;
    roughly full_rate of the arcs cover the whole circle.
    """
    from intervalcolor.arcs import make_arc_instance

    C = Fraction(circumference)
    pairs = []
    for _ in range(n):
        start = Fraction(rng.randrange(0, 2 * circumference), 2)
        if rng.random() < full_rate:
            length = C + Fraction(rng.randrange(0, 2 * circumference), 2)
        else:
            length = Fraction(rng.randrange(1, 2 * circumference), 2)
        pairs.append((start, length))
    return make_arc_instance(pairs, C, k)


def brute_force_counts(instance: Instance, coloring: Coloring, x):
    """Per-color counts at x by direct membership testing."""
    counts = [0] * instance.k
    for itv in instance.intervals:
        if itv.contains(x):
            counts[coloring.colors[itv.id] - 1] += 1
    return tuple(counts)


def random_bipartite_multigraph(rng, n_left, n_right, m, max_degree):
    """Random bipartite multigraph with all degrees capped at max_degree."""
    from intervalcolor.k_color import EdgeGraph, EdgeItem

    deg_l = [0] * n_left
    deg_r = [0] * n_right
    edges = []
    for item in range(m):
        for _ in range(80):
            u = rng.randrange(n_left)
            v = rng.randrange(n_right)
            if deg_l[u] < max_degree and deg_r[v] < max_degree:
                deg_l[u] += 1
                deg_r[v] += 1
                edges.append(EdgeItem(item, u, v))
                break
    return EdgeGraph(tuple(range(n_left)), tuple(range(n_right)), tuple(edges))


def assert_proper_edge_coloring(graph, colors, k):
    """Fail unless colors is a proper edge coloring with colors in 1..k."""
    seen = set()
    for edge, color in zip(graph.edges, colors):
        assert 1 <= color <= k
        for key in (("L", edge.start_pos, color), ("R", edge.end_pos, color)):
            assert key not in seen, f"color {color} repeated at vertex {key}"
            seen.add(key)


def steady_seconds(fn, reps=3):
    """Best-of-reps wall time with the cyclic collector quiesced.

    Collector pauses scale with the live heap, not with the measured
    work, so they are excluded to keep doubling ratios meaningful.
    """
    best = float("inf")
    for _ in range(reps):
        gc.collect()
        gc.disable()
        t0 = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - t0
        gc.enable()
        best = min(best, elapsed)
    return best


def steady_pair_seconds(fn_small, fn_big, reps=4):
    """Interleaved best-of wall times for a sizing comparison.

    Running small and big back to back inside each rep means background
    load drifts hit both, so their best-of ratio stays meaningful on a
    busy machine.
    """
    best_small = best_big = float("inf")
    for _ in range(reps):
        gc.collect()
        gc.disable()
        t0 = time.perf_counter()
        fn_small()
        t1 = time.perf_counter()
        fn_big()
        t2 = time.perf_counter()
        gc.enable()
        best_small = min(best_small, t1 - t0)
        best_big = min(best_big, t2 - t1)
    return best_small, best_big
