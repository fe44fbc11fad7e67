"""
Acceptance-scale runs over generated instances.

Deselected by default; run with `pytest -m slow`.
"""

import random
from itertools import combinations

import pytest

from src.data_classes import Interval, PQParams
from src.discrete import PosetSystem, TreeSystem, random_poset, random_tree, random_subtree
from src.geometry import count_pair_intersections, intersect_family, stab_count
from src.oracles import (
    Scheme,
    StabBound,
    check_pq_property,
    five_cycle_rectangles,
    gen_planar_instance,
    gen_poset_instance,
    gen_reduction_instance,
    gen_tree_instance,
    min_stab_bruteforce,
    verify_stabbing,
)
from src.ordered_helly import check_lemma_sysmin, stab_generic
from src.planar_hd import (
    PLANAR,
    StabMode,
    decide_xstar_right,
    planar_family,
    right_intersection_decide,
    stab_planar,
    xstar_bruteforce,
    xstar_randomized,
)
from src.sweepline import count_interval_pairs, count_polygon_pairs_sweep, max_stab_point
from tests.conftest import integer_boxes, random_polygons

pytestmark = pytest.mark.slow

PAIRS = [(3, 3), (4, 4), (5, 4), (7, 5)]


@pytest.mark.parametrize("seed", range(200))
def test_planar_instances_are_stabbed_within_budget(seed):
    p, q = PAIRS[seed % len(PAIRS)]
    scheme = list(Scheme)[seed % len(Scheme)]
    n = 10 + (7 * seed) % 31
    family = gen_planar_instance(n, p, q, seed, scheme)
    result = stab_planar(family, PQParams(p, q))
    assert len(result.points) <= p - q + 1
    assert result.complete
    assert verify_stabbing(family, result.points).verdict


@pytest.mark.parametrize("seed", range(20))
def test_randomized_mode_matches_bruteforce_points(seed):
    family = gen_planar_instance(30, 5, 4, seed)
    exact = stab_planar(family, PQParams(5, 4))
    randomized = stab_planar(family, PQParams(5, 4), StabMode.RANDOMIZED, seed)
    assert randomized.points[0] == exact.points[0]
    assert len(randomized.points) <= 2
    assert verify_stabbing(family, randomized.points).verdict
    assert randomized.statistics["decide_calls"] > 0


@pytest.mark.parametrize("p, q", [(5, 4), (7, 5)])
@pytest.mark.parametrize("seed", range(5))
def test_adversarial_budget_is_tight(p, q, seed):
    family = gen_planar_instance(12, p, q, seed, Scheme.ADVERSARIAL)
    assert min_stab_bruteforce(family, p - q + 1) == p - q + 1
    assert len(stab_planar(family, PQParams(p, q)).points) == p - q + 1


@pytest.mark.parametrize("seed", range(40))
def test_lexmin_lemma_on_random_intersecting_polygons(seed):
    polygons = random_polygons(4, seed, spread=1.0)
    if intersect_family(polygons) is None:
        pytest.skip("sampled polygons share no point")
    assert check_lemma_sysmin(planar_family(polygons), PLANAR)


@pytest.mark.parametrize("seed", range(40))
def test_lemma_on_trees_and_posets(seed):
    rng = random.Random(seed)
    tree = random_tree(10, rng)
    subtrees = [random_subtree(tree, rng) for _ in range(4)]
    if frozenset.intersection(*subtrees):
        system = TreeSystem(tree)
        assert check_lemma_sysmin(system.family(subtrees), system)

    poset = random_poset(8, 0.4, rng)
    system = PosetSystem(poset)
    ideals = [poset.down_closure(rng.sample(range(8), 3)) for _ in range(system.h + 1)]
    if frozenset.intersection(*ideals):
        assert check_lemma_sysmin(system.family(ideals), system)


@pytest.mark.parametrize("n", [10, 20, 40])
def test_randomized_xstar_matches_bruteforce(n):
    decide_calls = []
    for instance in range(100):
        family = gen_planar_instance(n, 7, 5, instance)
        expected = xstar_bruteforce(family)
        for seed in range(10):
            outcome = xstar_randomized(family, PQParams(7, 5), seed)
            assert outcome.point == expected
            if not outcome.fallback:
                decide_calls.append(outcome.trace.decide_calls)
    assert decide_calls
    mean = sum(decide_calls) / len(decide_calls)
    print(f"n={n}: mean decide calls {mean:.2f} over {len(decide_calls)} runs")
    assert mean >= 1


@pytest.mark.parametrize("instance", range(100))
def test_randomized_xstar_is_exact_without_general_position(instance):
    family = planar_family(integer_boxes(10 + instance % 21, instance))
    expected = xstar_bruteforce(family)
    for seed in range(3):
        outcome = xstar_randomized(family, seed=seed)
        assert outcome.point == expected


@pytest.mark.parametrize("seed", range(60))
def test_right_decision_matches_quadratic(seed):
    rng = random.Random(seed)
    family = planar_family(random_polygons(12, seed, spread=4.0))
    best = xstar_bruteforce(family)
    t = rng.uniform(-5, 5)
    assert decide_xstar_right(family, t) == (best is not None and best.x > t)


@pytest.mark.parametrize("seed", range(50))
def test_duplicate_detection_through_reduction(seed):
    rng = random.Random(seed)
    values = [rng.randint(0, 30) for _ in range(rng.randint(1, 12))]
    family, line = gen_reduction_instance(values)
    assert right_intersection_decide(family, line) == (len(set(values)) < len(values))


@pytest.mark.parametrize("seed", range(50))
def test_sweep_agrees_with_candidate_enumeration(seed):
    polygons = random_polygons(12, seed)
    point, count = max_stab_point(polygons)
    assert stab_count(polygons, point) == count
    candidates = PLANAR.candidates(polygons)
    assert count == max(stab_count(polygons, c) for c in candidates)
    assert count_polygon_pairs_sweep(polygons).count == count_pair_intersections(polygons)


@pytest.mark.parametrize("seed", range(50))
def test_interval_pairs(seed):
    rng = random.Random(seed)
    intervals = []
    for _ in range(rng.randint(0, 25)):
        a, b = sorted((rng.randint(0, 40), rng.randint(0, 40)))
        intervals.append(Interval.of(a, b))
    expected = sum(1 for a, b in combinations(intervals, 2) if a.lo <= b.hi and b.lo <= a.hi)
    assert count_interval_pairs(intervals) == expected


@pytest.mark.parametrize("seed", range(30))
def test_tree_and_poset_instances(seed):
    tree, family = gen_tree_instance(15, 4, 3, seed)
    system = TreeSystem(tree)
    result = stab_generic(family, system, 4, 3)
    assert len(result.points) <= 2
    assert verify_stabbing(family, result.points, system).verdict

    poset, family = gen_poset_instance(15, 5, 4, seed)
    system = PosetSystem(poset)
    result = stab_generic(family, system, 5, 4)
    assert len(result.points) <= 2
    assert verify_stabbing(family, result.points, system).verdict


@pytest.mark.parametrize("seed", range(20))
def test_generic_and_planar_loops_agree(seed):
    family = gen_planar_instance(16, 5, 4, seed)
    planar = stab_planar(family, PQParams(5, 4))
    generic = stab_generic(family, PLANAR, 5, 4)
    assert len(planar.points) <= 2 and len(generic.points) <= 2
    assert planar.points[0] == generic.points[0]
    assert check_pq_property(family, 5, 4).verdict


def test_negative_control_without_the_property():
    family = five_cycle_rectangles()
    assert not check_pq_property(family, 3, 3).verdict
    assert min_stab_bruteforce(family, 2) is StabBound.EXCEEDS_BUDGET
    result = stab_planar(family, PQParams(3, 3))
    assert not result.complete
    assert result.uncovered
    assert not verify_stabbing(family, result.points).verdict
