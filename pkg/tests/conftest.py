import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from src.data_classes import ConvexPolygon, Interval, Point2
from src.geometry import contains_point, intersect_pair, lexmin
from src.oracles import random_convex_polygon
from src.planar_hd import planar_family


coords = st.integers(min_value=-6, max_value=6)
boxes = st.builds(
    lambda x0, y0, w, h: ConvexPolygon.box(x0, y0, x0 + w, y0 + h),
    coords, coords, st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5),
)
triangles = st.builds(
    ConvexPolygon.from_points,
    st.lists(st.builds(Point2.of, coords, coords), min_size=3, max_size=6),
).filter(lambda polygon: polygon is not None and polygon.rank == 2)
intervals = st.builds(
    lambda lo, width: Interval.of(lo, lo + width),
    st.integers(min_value=-20, max_value=20), st.integers(min_value=0, max_value=6),
)


def random_polygons(n: int, seed: int, spread: float = 6.0) -> list[ConvexPolygon]:
    """Random positive-area polygons scattered over a square of side 2 * spread."""
    rng = random.Random(seed)
    return [
        random_convex_polygon(Point2.of(round(rng.uniform(-spread, spread), 2),
                                        round(rng.uniform(-spread, spread), 2)),
                              rng, rng.uniform(0.8, 3.0))
        for _ in range(n)
    ]


def integer_boxes(n: int, seed: int, span: int = 8,
                  through_origin: bool = False) -> list[ConvexPolygon]:
    """Random boxes with small integer corners, where pair lexmins often share an x."""
    rng = random.Random(seed)
    polygons = []
    for _ in range(n):
        if through_origin:
            x0, y0 = rng.randint(-span, 0), rng.randint(-span, 0)
            x1, y1 = rng.randint(max(x0 + 1, 0), span), rng.randint(max(y0 + 1, 0), span)
        else:
            x0, y0 = rng.randint(0, span), rng.randint(0, span)
            x1, y1 = x0 + rng.randint(1, span // 2), y0 + rng.randint(1, span // 2)
        polygons.append(ConvexPolygon.box(x0, y0, x1, y1))
    return polygons


def pair_lexmin_max(polygons):
    """Quadratic x*: lexicographic maximum of the pairwise intersection lexmins."""
    minima = [lexmin(r) for a, b in combinations(polygons, 2)
              if (r := intersect_pair(a, b)) is not None]
    return max(minima, default=None)


def deepest_candidate(polygons) -> int:
    """Largest stab count over all vertices and pairwise intersection vertices."""
    candidates = {v for polygon in polygons for v in polygon.vertices}
    for a, b in combinations(polygons, 2):
        region = intersect_pair(a, b)
        if region is not None:
            candidates.update(region.vertices)
    return max(sum(1 for polygon in polygons if contains_point(polygon, c))
               for c in candidates)


@pytest.fixture
def unit_square():
    """The square [0, 1] x [0, 1]."""
    return ConvexPolygon.box(0, 0, 1, 1)


@pytest.fixture
def helly_family():
    """Four boxes sharing the point (2, 2); x* is (2, 2)."""
    return planar_family([
        ConvexPolygon.box(0, 0, 2, 2),
        ConvexPolygon.box(1, 1, 4, 4),
        ConvexPolygon.box(2, 0, 5, 3),
        ConvexPolygon.box(-1, 2, 3, 6),
    ])


@pytest.fixture
def clustered_family():
    """Four boxes through (0, 0) and one far away: (5, 4) holds and two points stab."""
    return planar_family([
        ConvexPolygon.box(-1, -1, 1, 1),
        ConvexPolygon.box(0, 0, 2, 2),
        ConvexPolygon.box(-2, -2, 0, 0),
        ConvexPolygon.box(0, -1, 1, 0),
        ConvexPolygon.box(9, -1, 11, 1),
    ])
