"""Balanced k-coloring of intervals, circular arcs, and related constructions."""

from intervalcolor.arcs import (
    Arc,
    ArcInstance,
    arc_color,
    arc_imbalance,
    make_arc_instance,
    min_arc_imbalance_oracle,
    unfold,
)
from intervalcolor.core import (
    Coord,
    CoordInput,
    Coloring,
    Event,
    ImbalanceReport,
    Instance,
    Interval,
    InvariantViolation,
    NormalizedInstance,
    RegionCounts,
    divisibility_predicts_zero,
    imbalance,
    is_balanced,
    make_instance,
    min_imbalance_oracle,
    normalize,
    point_cliques,
    to_coord,
)
from intervalcolor.formats import FormatError
from intervalcolor.hardness import (
    Box,
    BoxInstance,
    NaeFormula,
    WeightedInstance,
    box_imbalance,
    decide_balanced_boxes,
    decide_grouped_intervals,
    make_box_instance,
    nae_brute_force,
    reduce_nae_to_boxes,
    reduce_nae_to_multiple_intervals,
    reduce_partition_to_weighted,
    weighted_imbalance,
)
from intervalcolor.k_color import (
    EdgeGraph,
    EdgeItem,
    build_constraints,
    constraints_to_graph,
    edge_color,
    hypergraph_to_instance,
    k_color,
    k_color_dewerra,
)
from intervalcolor.online import (
    AlwaysColor,
    GreedyLeastLoaded,
    OnlineAlgorithm,
    RoundRobin,
    SeededRandom,
    Transcript,
    adversary_general,
    adversary_k2,
    make_algorithm,
    presentation_trace,
    run_online,
    transcript_instance,
)
from intervalcolor.two_color import two_color

__all__ = [
    "AlwaysColor",
    "Arc",
    "ArcInstance",
    "Box",
    "BoxInstance",
    "Coord",
    "CoordInput",
    "Coloring",
    "EdgeGraph",
    "EdgeItem",
    "Event",
    "FormatError",
    "GreedyLeastLoaded",
    "ImbalanceReport",
    "Instance",
    "Interval",
    "InvariantViolation",
    "NaeFormula",
    "NormalizedInstance",
    "OnlineAlgorithm",
    "RegionCounts",
    "RoundRobin",
    "SeededRandom",
    "Transcript",
    "WeightedInstance",
    "adversary_general",
    "adversary_k2",
    "arc_color",
    "arc_imbalance",
    "box_imbalance",
    "build_constraints",
    "constraints_to_graph",
    "decide_balanced_boxes",
    "decide_grouped_intervals",
    "divisibility_predicts_zero",
    "edge_color",
    "hypergraph_to_instance",
    "imbalance",
    "is_balanced",
    "k_color",
    "k_color_dewerra",
    "make_algorithm",
    "make_arc_instance",
    "make_box_instance",
    "make_instance",
    "min_arc_imbalance_oracle",
    "min_imbalance_oracle",
    "nae_brute_force",
    "normalize",
    "point_cliques",
    "presentation_trace",
    "reduce_nae_to_boxes",
    "reduce_nae_to_multiple_intervals",
    "reduce_partition_to_weighted",
    "run_online",
    "to_coord",
    "transcript_instance",
    "two_color",
    "unfold",
    "weighted_imbalance",
]
