"""Reductions, the box decider, and their gadget-level guarantees."""

import random
from fractions import Fraction
from itertools import product

import pytest

from intervalcolor.core import Coloring, Interval
from intervalcolor.hardness import (
    Box,
    BoxInstance,
    NaeFormula,
    WeightedInstance,
    _dim_samples_and_masks,
    box_imbalance,
    boxes_intersect,
    decide_balanced_boxes,
    decide_grouped_intervals,
    make_box_instance,
    nae_brute_force,
    reduce_nae_to_boxes,
    reduce_nae_to_multiple_intervals,
    reduce_partition_to_weighted,
    weighted_imbalance,
)


def random_formula(rng, max_clauses=3, max_vars=5):
    nv = rng.randint(1, max_vars)
    nc = rng.randint(0, max_clauses)
    clauses = [tuple(rng.randint(1, nv) for _ in range(3)) for _ in range(nc)]
    return NaeFormula(nv, clauses)


def distinct_cell_masks(instance):
    per_dim = _dim_samples_and_masks(instance.boxes, instance.d)
    seen = set()
    for combo in product(*(p[1] for p in per_dim)):
        msk = combo[0]
        for other in combo[1:]:
            msk &= other
        if msk:
            seen.add(msk)
    return seen


def test_formula_validation():
    with pytest.raises(ValueError):
        NaeFormula(2, [(1, 2, 3)])
    with pytest.raises(ValueError):
        NaeFormula(3, [(1, 2)])
    with pytest.raises(TypeError):
        NaeFormula(3, [(1, 2, True)])
    with pytest.raises(ValueError):
        NaeFormula(-1, [])


def test_brute_force_examples():
    assert nae_brute_force(NaeFormula(3, [(1, 2, 3)]))[0]
    assert nae_brute_force(NaeFormula(1, [(1, 1, 1)])) == (False, None)
    sat, assignment = nae_brute_force(NaeFormula(2, [(1, 1, 2)]))
    assert sat and assignment[0] != assignment[1]
    with pytest.raises(ValueError):
        nae_brute_force(NaeFormula(25, []))


def test_brute_force_witness_satisfies():
    rng = random.Random(3)
    for _ in range(20):
        formula = random_formula(rng)
        sat, assignment = nae_brute_force(formula)
        if not sat:
            continue
        for a, b, c in formula.clauses:
            vals = {assignment[a - 1], assignment[b - 1], assignment[c - 1]}
            assert len(vals) == 2


def test_box_validation():
    with pytest.raises(ValueError):
        Box(0, ((Fraction(1), Fraction(0)),), "clause")
    with pytest.raises(TypeError):
        Box(0, ((0.0, 1.0),), "clause")
    with pytest.raises(ValueError):
        Box(0, ((Fraction(0), Fraction(1)),), "wall")
    with pytest.raises(ValueError):
        BoxInstance((Box(1, ((Fraction(0), Fraction(1)),), "clause"),), 1, 2)
    with pytest.raises(ValueError):
        make_box_instance([[(0, 1)], [(0, 1), (0, 1)]], 2)


def test_boxes_intersect_touching_edges_count():
    a = Box(0, ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1))), "chain")
    b = Box(1, ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1))), "chain")
    c = Box(2, ((Fraction(2), Fraction(3)), (Fraction(5), Fraction(6))), "chain")
    assert boxes_intersect(a, b)
    assert not boxes_intersect(a, c)


def test_reduce_single_clause_shape():
    inst = reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), 2)
    tags = [b.tag for b in inst.boxes]
    assert tags.count("clause") == 3
    assert tags.count("variable") == 3
    assert tags.count("cover") == 0
    lengths = {}
    for prov in inst.provenance.values():
        if prov[0] == "chain":
            lengths[prov[1]] = lengths.get(prov[1], 0) + 1
    assert set(lengths) == {0, 1, 2}
    assert all(n % 2 == 1 for n in lengths.values())
    coloring = decide_balanced_boxes(inst)
    assert coloring is not None
    assert box_imbalance(inst, coloring).value <= 1


def test_reduce_unsat_clause_has_no_balanced_coloring():
    inst = reduce_nae_to_boxes(NaeFormula(1, [(1, 1, 1)]), 2)
    assert decide_balanced_boxes(inst) is None


def test_reduce_argument_errors():
    with pytest.raises(ValueError):
        reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), 1)
    with pytest.raises(ValueError):
        reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), 2, d=1)


def test_reduce_lifts_to_three_dimensions():
    inst = reduce_nae_to_boxes(NaeFormula(2, [(1, 1, 2)]), 2, d=3)
    assert inst.d == 3
    assert all(b.bounds[2] == (Fraction(0), Fraction(0)) for b in inst.boxes)
    assert decide_balanced_boxes(inst) is not None


def test_clause_rectangles_share_exactly_one_cell():
    inst = reduce_nae_to_boxes(NaeFormula(4, [(1, 2, 3), (2, 3, 4)]), 2)
    by_prov = {prov: bid for bid, prov in inst.provenance.items()}
    masks = distinct_cell_masks(inst)
    for i in range(2):
        triple = 0
        for name in ("left", "right", "tall"):
            triple |= 1 << by_prov[("clause", i, name)]
        covering = {m for m in masks if m & triple == triple}
        assert len(covering) == 1
        # the shared cell holds nothing but the three clause rectangles
        assert covering.pop() == triple


def test_chain_links_overlap_consecutively_only():
    inst = reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3), (3, 1, 2)]), 2)
    chains = {}
    for bid, prov in inst.provenance.items():
        if prov[0] == "chain":
            chains.setdefault(prov[1], {})[prov[2]] = bid
    for links in chains.values():
        ordered = [links[pos] for pos in sorted(links)]
        for a in range(len(ordered)):
            for b in range(a + 1, len(ordered)):
                touching = boxes_intersect(
                    inst.boxes[ordered[a]], inst.boxes[ordered[b]]
                )
                assert touching == (b == a + 1), (a, b)


def test_chains_force_variable_and_clause_rectangle_to_agree():
    formula = NaeFormula(3, [(1, 2, 3), (1, 3, 2)])
    inst = reduce_nae_to_boxes(formula, 2)
    coloring = decide_balanced_boxes(inst)
    assert coloring is not None
    by_prov = {prov: bid for bid, prov in inst.provenance.items()}
    names = ("left", "right", "tall")
    for i, clause in enumerate(formula.clauses):
        for s in range(3):
            var_id = by_prov[("variable", clause[s])]
            rect_id = by_prov[("clause", i, names[s])]
            assert coloring.colors[var_id] == coloring.colors[rect_id]


def test_covers_take_their_own_colors():
    for k in (3, 4):
        inst = reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), k)
        cover_ids = [b.id for b in inst.boxes if b.tag == "cover"]
        assert len(cover_ids) == k - 2
        coloring = decide_balanced_boxes(inst)
        assert coloring is not None
        assert box_imbalance(inst, coloring).value <= 1
        cover_colors = {coloring.colors[i] for i in cover_ids}
        assert len(cover_colors) == len(cover_ids)
        rest = {coloring.colors[b.id] for b in inst.boxes if b.tag != "cover"}
        assert not rest & cover_colors


def test_cover_solvability_matches_two_color_case():
    sat = NaeFormula(3, [(1, 2, 3)])
    unsat = NaeFormula(1, [(1, 1, 1)])
    assert decide_balanced_boxes(reduce_nae_to_boxes(sat, 3)) is not None
    assert decide_balanced_boxes(reduce_nae_to_boxes(unsat, 3)) is None


def test_reduction_equivalence_on_random_formulas():
    rng = random.Random(41)
    for _ in range(20):
        formula = random_formula(rng)
        sat, _ = nae_brute_force(formula)
        inst = reduce_nae_to_boxes(formula, 2)
        coloring = decide_balanced_boxes(inst)
        assert (coloring is not None) == sat
        if coloring is not None:
            assert box_imbalance(inst, coloring).value <= 1


def test_decider_is_deterministic():
    inst = reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), 2)
    assert decide_balanced_boxes(inst) == decide_balanced_boxes(inst)


def test_decider_empty_and_limit():
    assert decide_balanced_boxes(BoxInstance((), 2, 2)) == Coloring((), 2)
    inst = reduce_nae_to_boxes(NaeFormula(3, [(1, 2, 3)]), 2)
    with pytest.raises(ValueError):
        decide_balanced_boxes(inst, limit_n=10)


def test_box_imbalance_basics():
    single = make_box_instance([[(0, 1), (0, 1)]], 2)
    assert box_imbalance(single, Coloring((1,), 2)).value == 1
    disjoint = make_box_instance([[(0, 1), (0, 1)], [(5, 6), (0, 1)]], 2)
    assert box_imbalance(disjoint, Coloring((1, 2), 2)).value == 1
    empty = make_box_instance([], 2)
    report = box_imbalance(empty, Coloring((), 2))
    assert report.value == 0 and report.witness is None
    with pytest.raises(ValueError):
        box_imbalance(single, Coloring((), 2))
    with pytest.raises(ValueError):
        box_imbalance(single, Coloring((1,), 3))


def test_three_rectangles_can_force_spread_two():
    # pairwise-only regions for each pair plus one triple region: any
    # 2-coloring leaves some pair monochromatic in its private region
    inst = make_box_instance(
        [[(0, 6), (0, 2)], [(4, 10), (0, 2)], [(0, 10), (1, 2)]], 2
    )
    values = [
        box_imbalance(inst, Coloring(c, 2)).value
        for c in product((1, 2), repeat=3)
    ]
    assert min(values) == 2


def test_partition_reduction_examples():
    w = reduce_partition_to_weighted([1, 1, 2])
    assert w.k == 2 and w.n == 3
    best = min(
        weighted_imbalance(w, Coloring(c, 2)) for c in product((1, 2), repeat=3)
    )
    assert best == 0
    w2 = reduce_partition_to_weighted([1, 2])
    assert min(
        weighted_imbalance(w2, Coloring(c, 2)) for c in product((1, 2), repeat=2)
    ) == 1
    assert weighted_imbalance(reduce_partition_to_weighted([]), Coloring((), 2)) == 0


def test_weighted_validation():
    with pytest.raises(ValueError):
        reduce_partition_to_weighted([1, 0])
    with pytest.raises(ValueError):
        reduce_partition_to_weighted([1, -2])
    w = reduce_partition_to_weighted([3])
    with pytest.raises(ValueError):
        weighted_imbalance(w, Coloring((1, 2), 2))


def test_weighted_imbalance_varying_overlap():
    inst = WeightedInstance(
        (
            Interval(0, Fraction(0), Fraction(2)),
            Interval(1, Fraction(1), Fraction(3)),
        ),
        (3, 1),
        2,
    )
    assert weighted_imbalance(inst, Coloring((1, 2), 2)) == 3
    assert weighted_imbalance(inst, Coloring((1, 1), 2)) == 4


def test_multiple_intervals_reduction_examples():
    inst, groups = reduce_nae_to_multiple_intervals(NaeFormula(3, [(1, 2, 3)]))
    assert inst.n == 3 and groups == ((0,), (1,), (2,))
    assert decide_grouped_intervals(inst, groups) is not None

    inst, groups = reduce_nae_to_multiple_intervals(NaeFormula(1, [(1, 1, 1)]))
    assert groups == ((0, 1, 2),)
    assert decide_grouped_intervals(inst, groups) is None

    inst, groups = reduce_nae_to_multiple_intervals(
        NaeFormula(4, [(1, 2, 3), (1, 2, 4)])
    )
    assert inst.n == 6
    assert groups == ((0, 3), (1, 4), (2,), (5,))


def test_multiple_intervals_matches_brute_force():
    rng = random.Random(17)
    for _ in range(25):
        formula = random_formula(rng, max_clauses=4, max_vars=5)
        sat, _ = nae_brute_force(formula)
        inst, groups = reduce_nae_to_multiple_intervals(formula)
        assert (decide_grouped_intervals(inst, groups) is not None) == sat


def test_grouped_decider_validation():
    inst, groups = reduce_nae_to_multiple_intervals(NaeFormula(3, [(1, 2, 3)]))
    with pytest.raises(ValueError):
        decide_grouped_intervals(inst, groups[:-1])
    with pytest.raises(ValueError):
        decide_grouped_intervals(inst, groups, limit_groups=2)
