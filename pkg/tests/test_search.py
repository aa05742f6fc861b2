"""Balanced-partition enumeration, filters, classification and the search."""

import random
from itertools import combinations

import pytest

from cycdecomp.search import (
    DecompInstance,
    NodeBudgetExceeded,
    SearchConfig,
    apply_filters,
    classify_structure,
    distance_class_check,
    enumerate_balanced_partitions,
    make_instance,
    pairwise_products,
    search,
)

PAPER_SET = (6, 16, 26, 41)
PAPER_BLOCKS = [[(0, 1), (0, 2), (2, 3)], [(0, 3), (1, 2), (1, 3)]]


def brute_force_two_blocks(values):
    """Oracle: all unordered equal-sum splits via the 2^6 subset scan."""
    pairs = list(combinations(range(len(values)), 2))
    prods = [values[i] * values[j] for i, j in pairs]
    total = sum(prods)
    if total % 2:
        return []
    found = []
    n = len(pairs)
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue  # fix pair 0 in the first block to kill the mirror copy
        if mask == (1 << n) - 1:
            continue
        if sum(prods[i] for i in range(n) if mask >> i & 1) * 2 == total:
            a = [pairs[i] for i in range(n) if mask >> i & 1]
            b = [pairs[i] for i in range(n) if not mask >> i & 1]
            found.append([a, b])
    return found


# ---------------------------------------------------------------------------
# pairwise products


def test_pairwise_products_paper_set():
    prods = pairwise_products(PAPER_SET)
    assert [p for _, p in prods] == [96, 156, 246, 416, 656, 1066]
    assert [ij for ij, _ in prods] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_pairwise_products_edges():
    assert pairwise_products((1, 1)) == [((0, 1), 1)]
    assert [p for _, p in pairwise_products((0, 5, 7))] == [0, 0, 35]
    with pytest.raises(ValueError):
        pairwise_products((3,))


# ---------------------------------------------------------------------------
# balanced partitions


def test_paper_partition_unique_against_subset_oracle():
    parts = enumerate_balanced_partitions(PAPER_SET, 2)
    oracle = brute_force_two_blocks(PAPER_SET)
    assert len(parts) == len(oracle) == 1
    got = sorted(tuple(sorted(blk)) for blk in parts[0])
    expected = sorted(tuple(sorted(blk)) for blk in PAPER_BLOCKS)
    assert got == expected
    sums = [sum(PAPER_SET[i] * PAPER_SET[j] for i, j in blk) for blk in parts[0]]
    assert sums == [1318, 1318]


def test_odd_total_has_no_partition():
    assert enumerate_balanced_partitions((1, 2, 3, 4), 2) == []


def test_all_ones_count():
    parts = enumerate_balanced_partitions((1, 1, 1, 1), 2)
    assert len(parts) == 10  # C(6,3)/2 unordered 3+3 splits


def test_partition_enumeration_matches_oracle_random():
    rng = random.Random(14)
    for _ in range(40):
        vals = tuple(rng.randint(1, 15) for _ in range(4))
        ours = enumerate_balanced_partitions(vals, 2)
        oracle = brute_force_two_blocks(vals)
        canon = lambda ps: sorted(sorted(tuple(sorted(b)) for b in p) for p in ps)
        assert canon(ours) == canon(oracle), vals


def test_partition_blocks_ordered_canonically():
    for part in enumerate_balanced_partitions((1, 1, 1, 1), 2):
        assert part[0][0] == (0, 1)
        assert all(blk == sorted(blk) for blk in part)


def test_equal_size_toggle():
    # (1,4,8,12) splits only as 2+4; equal-size must reject it
    assert len(enumerate_balanced_partitions((1, 4, 8, 12), 2)) == 1
    assert enumerate_balanced_partitions((1, 4, 8, 12), 2, equal_size=True) == []
    assert len(enumerate_balanced_partitions(PAPER_SET, 2, equal_size=True)) == 1


def test_scaling_bijection():
    rng = random.Random(15)
    canon = lambda ps: sorted(sorted(tuple(sorted(b)) for b in p) for p in ps)
    for lam in (2, 3):
        for _ in range(10):
            vals = tuple(rng.randint(1, 12) for _ in range(4))
            scaled = tuple(lam * v for v in vals)
            base = enumerate_balanced_partitions(vals, 2)
            up = enumerate_balanced_partitions(scaled, 2)
            assert canon(base) == canon(up)
            for part in up:
                sums = {sum(scaled[i] * scaled[j] for i, j in blk) for blk in part}
                base_sum = sum(v1 * v2 for v1, v2 in combinations(vals, 2)) // 2
                assert sums == {lam * lam * base_sum}


def test_signed_tuples_accepted():
    # no positivity pruning may fire on signed inputs
    vals = (-6, 16, -26, 41)
    parts = enumerate_balanced_partitions(vals, 2)
    for part in parts:
        sums = {sum(vals[i] * vals[j] for i, j in blk) for blk in part}
        assert len(sums) == 1


# ---------------------------------------------------------------------------
# distance classes


def test_distance_class_paper_orderings():
    sums, balanced = distance_class_check((16, 6, 26, 41), 5)
    assert sums == [96 + 156 + 1066, 416 + 246 + 656] == [1318, 1318]
    assert balanced

    sums, balanced = distance_class_check((6, 16, 26, 41), 5)
    assert sums == [1578, 1058]
    assert not balanced

    sums, balanced = distance_class_check((1, 1, 1, 1), 5)
    assert sums == [3, 3] and balanced


def test_distance_class_rejects_bad_e():
    with pytest.raises(ValueError):
        distance_class_check((1, 2, 3), 4)
    with pytest.raises(ValueError):
        distance_class_check((1, 2, 3, 4, 5, 6, 7, 8), 9)


def test_balanced_ordering_appears_in_partition_enumeration():
    # sufficiency: the distance-class partition is among the enumerated ones
    from cycdecomp.search import distance_class_blocks

    vals = (16, 6, 26, 41)
    _, balanced = distance_class_check(vals, 5)
    assert balanced
    classes = distance_class_blocks(4, 5)
    parts = enumerate_balanced_partitions(vals, 2)
    canon = lambda p: sorted(tuple(sorted(b)) for b in p)
    assert canon(classes) in [canon(p) for p in parts]


# ---------------------------------------------------------------------------
# structure classification


def test_classify_paper_blocks():
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    structures = classify_structure(inst)
    assert [s.tag for s in structures] == ["hamiltonian-path", "hamiltonian-path"]
    rewrites = {(rw.edge_product, rw.grouped) for s in structures for rw in s.rewrites}
    assert rewrites == {(96, 1222), (246, 1072), (416, 902), (1066, 252)}
    for s in structures:
        for rw in s.rewrites:
            assert rw.edge_product + rw.grouped == 1318


def test_classify_star_and_triangle():
    inst = make_instance((1, 1, 1, 1), [[(0, 1), (0, 2), (0, 3)], [(1, 2), (1, 3), (2, 3)]])
    tags = [s.tag for s in classify_structure(inst)]
    assert sorted(tags) == ["star", "triangle"]
    star = next(s for s in classify_structure(inst) if s.tag == "star")
    assert star.rewrites == ()  # removing the hub leaves no edge


def test_classify_other_shapes_unclassified():
    inst = make_instance((1, 4, 8, 12), [[(0, 1), (2, 3)], [(0, 2), (0, 3), (1, 2), (1, 3)]])
    assert [s.tag for s in classify_structure(inst)] == ["unclassified", "unclassified"]
    assert inst.tags == ("unclassified", "unclassified")


# ---------------------------------------------------------------------------
# instances and filters


def test_make_instance_validates():
    with pytest.raises(ValueError):
        make_instance(PAPER_SET, [[(0, 1)], [(0, 2), (2, 3)]])  # uncovered pairs
    with pytest.raises(ValueError):
        make_instance(PAPER_SET, [[(0, 1), (0, 2), (0, 3)], [(1, 2), (1, 3), (2, 3)]])
    with pytest.raises(ValueError):
        make_instance(PAPER_SET, PAPER_BLOCKS + [[(0, 1)]])


def test_instance_consistency_fields():
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    assert inst.m * inst.block_sum == sum(p for _, p in pairwise_products(PAPER_SET))
    assert inst.sum_squares == 2649
    assert inst.gap == 1331


def test_apply_filters_paper_instance():
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    rep = apply_filters(inst, ["cube_gap"])
    assert rep.passed and rep.details["cube_gap"]["root"] == 11
    rep = apply_filters(inst, ["prime_gap"])
    assert rep.passed and rep.details["prime_gap"]["value"] == 13
    rep = apply_filters(inst, ["cube_gap", "prime_gap"])
    assert rep.passed


def test_apply_filters_trivial_cube():
    inst = make_instance((1, 1, 1, 1), [[(0, 1), (0, 2), (0, 3)], [(1, 2), (1, 3), (2, 3)]])
    rep = apply_filters(inst, ["cube_gap"])
    assert rep.passed and rep.details["cube_gap"] == {"gap": 1, "root": 1}


def test_apply_filters_unknown_name():
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    with pytest.raises(ValueError):
        apply_filters(inst, ["magic"])


def test_instance_json_round_trip():
    from cycdecomp.search import instance_from_json_dict
    import json

    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    again = instance_from_json_dict(json.loads(inst.to_json_line()))
    assert again == inst
    assert again.to_json_line() == inst.to_json_line()


# ---------------------------------------------------------------------------
# search


def run_search(**kwargs):
    return list(search(SearchConfig(**kwargs)))


def test_search_finds_paper_instance():
    insts = run_search(k=4, m=2, lo=1, hi=41, distinct=True, filters=("cube_gap",))
    by_tuple = {i.values: i for i in insts}
    assert (6, 16, 26, 41) in by_tuple
    paper = by_tuple[(6, 16, 26, 41)]
    assert paper.block_sum == 1318
    assert len([i for i in insts if i.values == (6, 16, 26, 41)]) == 1


def test_search_empty_for_k2():
    assert run_search(k=2, m=2, lo=1, hi=9) == []


def test_search_oracle_equivalence_1_12():
    from itertools import combinations_with_replacement

    insts = run_search(k=4, m=2, lo=1, hi=12)
    keys = [i.key for i in insts]
    assert len(keys) == len(set(keys)) == 226

    oracle_keys = set()
    for vals in combinations_with_replacement(range(1, 13), 4):
        for blocks in brute_force_two_blocks(vals):
            oracle_keys.add(make_instance(vals, blocks).key)
    assert set(keys) == oracle_keys


def test_search_lexicographic_order():
    insts = run_search(k=4, m=2, lo=1, hi=10)
    assert [i.values for i in insts] == sorted(i.values for i in insts)


def test_search_distinct_and_limit():
    insts = run_search(k=4, m=2, lo=1, hi=12, distinct=True)
    assert all(len(set(i.values)) == 4 for i in insts)
    capped = run_search(k=4, m=2, lo=1, hi=12, distinct=True, limit=3)
    assert capped == insts[:3]


def test_search_determinism_across_jobs():
    kwargs = dict(k=4, m=2, lo=1, hi=16)
    base = [i.to_json_line() for i in run_search(**kwargs)]
    for jobs in (2, 3):
        par = [i.to_json_line() for i in run_search(jobs=jobs, **kwargs)]
        assert par == base, jobs


def test_search_distance_class_only():
    insts = run_search(k=4, m=2, lo=1, hi=41, distinct=True,
                       filters=("distance_class_only", "cube_gap"))
    assert any(sorted(i.values) == [6, 16, 26, 41] for i in insts)
    for inst in insts:
        sums = {sum(inst.values[i] * inst.values[j] for i, j in blk) for blk in inst.blocks}
        assert len(sums) == 1


def test_search_node_budget_aborts_with_clean_prefix():
    kwargs = dict(k=4, m=2, lo=1, hi=12)
    full = run_search(**kwargs)
    gen = search(SearchConfig(node_budget=500, **kwargs))
    partial = []
    with pytest.raises(NodeBudgetExceeded):
        for inst in gen:
            partial.append(inst)
    assert partial == full[: len(partial)]
    assert len(partial) < len(full)


def test_search_budget_determinism_across_jobs():
    kwargs = dict(k=4, m=2, lo=1, hi=12, node_budget=900)
    outs = []
    for jobs in (1, 2):
        got = []
        with pytest.raises(NodeBudgetExceeded):
            for inst in search(SearchConfig(jobs=jobs, **kwargs)):
                got.append(inst.to_json_line())
        outs.append(got)
    assert outs[0] == outs[1]


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(k=1, m=2, lo=1, hi=5)
    with pytest.raises(ValueError):
        SearchConfig(k=4, m=1, lo=1, hi=5)
    with pytest.raises(ValueError):
        SearchConfig(k=4, m=2, lo=5, hi=1)
    with pytest.raises(ValueError):
        SearchConfig(k=4, m=2, lo=0, hi=5)
    with pytest.raises(ValueError):
        SearchConfig(k=4, m=2, lo=1, hi=5, limit=0)
    with pytest.raises(ValueError):
        SearchConfig(k=4, m=2, lo=1, hi=5, filters=("nope",))
    with pytest.raises(ValueError):
        SearchConfig(k=5, m=2, lo=1, hi=5, filters=("distance_class_only",))
    with pytest.raises(ValueError):
        SearchConfig(k=6, m=2, lo=1, hi=5, filters=("distance_class_only",))
