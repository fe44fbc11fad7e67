from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from src.data_classes import ConvexPolygon, Interval, Point2
from src.errors import PreconditionError
from src.geometry import count_pair_intersections, stab_count
from src.sweepline import (
    PolygonSweep,
    count_interval_pairs,
    count_polygon_pairs_sweep,
    max_stab_point,
)
from tests.conftest import boxes, deepest_candidate, intervals, random_polygons


def quadratic_interval_pairs(items):
    return sum(1 for a, b in combinations(items, 2) if a.overlaps(b))


def test_nested_squares():
    nested = [ConvexPolygon.box(-i - 1, -i - 1, i + 1, i + 1) for i in range(10)]
    assert max_stab_point(nested, check_invariants=True) == (Point2.of(-1, -1), 10)


def test_crossing_bars_meet_away_from_vertices():
    bars = [
        ConvexPolygon.from_points([Point2.of(0, 0), Point2.of(1, 0), Point2.of(5, 4),
                                   Point2.of(4, 4)]),
        ConvexPolygon.from_points([Point2.of(0, 4), Point2.of(1, 4), Point2.of(5, 0),
                                   Point2.of(4, 0)]),
    ]
    point, count = max_stab_point(bars, check_invariants=True)
    assert count == 2
    assert stab_count(bars, point) == 2


def test_corner_touching_boxes():
    corners = [ConvexPolygon.box(0, 0, 1, 1), ConvexPolygon.box(1, 1, 2, 2),
               ConvexPolygon.box(1, 0, 2, 1), ConvexPolygon.box(0, 1, 1, 2)]
    assert max_stab_point(corners, check_invariants=True) == (Point2.of(1, 1), 4)
    assert count_polygon_pairs_sweep(corners).count == 6


def test_sweep_rejects_degenerate_polygons():
    segment = ConvexPolygon.from_points([Point2.of(0, 0), Point2.of(1, 1)])
    with pytest.raises(PreconditionError) as info:
        PolygonSweep([ConvexPolygon.box(0, 0, 1, 1), segment])
    assert info.value.set_index == 1
    with pytest.raises(PreconditionError):
        max_stab_point([])


def test_slices_are_ordered_by_abscissa(helly_family):
    xs = [sweep_slice.x for sweep_slice in PolygonSweep(helly_family.sets, True)]
    assert xs == sorted(set(xs))
    assert xs[0] == -1 and xs[-1] == 5


@pytest.mark.parametrize("seed", range(20))
def test_max_stab_matches_candidate_scan(seed):
    polygons = random_polygons(15, seed, spread=3.0)
    point, count = max_stab_point(polygons, check_invariants=True)
    assert count == deepest_candidate(polygons)
    assert stab_count(polygons, point) == count


@settings(max_examples=100, deadline=None)
@given(polygons=st.lists(boxes, min_size=1, max_size=8))
def test_max_stab_on_boxes_with_shared_corners(polygons):
    point, count = max_stab_point(polygons, check_invariants=True)
    assert count == deepest_candidate(polygons)
    assert stab_count(polygons, point) == count


@pytest.mark.parametrize("seed", range(20))
def test_sweep_pair_count_matches_quadratic(seed):
    polygons = random_polygons(20, seed, spread=5.0)
    counted = count_polygon_pairs_sweep(polygons)
    assert counted.count == count_pair_intersections(polygons)


@settings(max_examples=100, deadline=None)
@given(polygons=st.lists(boxes, min_size=1, max_size=8))
def test_sweep_pair_count_on_boxes(polygons):
    assert count_polygon_pairs_sweep(polygons).count == count_pair_intersections(polygons)


def test_nested_polygon_pairs_are_counted():
    nested = [ConvexPolygon.box(-i - 1, -i - 1, i + 1, i + 1) for i in range(5)]
    counted = count_polygon_pairs_sweep(nested)
    assert counted == type(counted)(10, True)


@pytest.mark.parametrize("items, expected", [
    ([], 0),
    ([Interval.of(0, 1), Interval.of(1, 2)], 1),
    ([Interval.of(0, 1), Interval.of(2, 3)], 0),
    ([Interval.of(0, 10), Interval.of(1, 2), Interval.of(3, 4)], 2),
    ([Interval.of(5, 5), Interval.of(5, 5), Interval.of(5, 6)], 3),
])
def test_count_interval_pairs(items, expected):
    assert count_interval_pairs(items) == expected


@given(items=st.lists(intervals, max_size=60))
def test_count_interval_pairs_matches_quadratic(items):
    assert count_interval_pairs(items) == quadratic_interval_pairs(items)
