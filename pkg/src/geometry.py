"""
Exact planar kernel for compact convex polygons.

Everything works on Fractions; a polygon is clipped against closed half-planes with a
Sutherland-Hodgman pass over its vertex cycle and the result is re-canonicalised through
the hull, so segments and points fall out naturally.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from src.data_classes import ConvexPolygon, Interval, Point2, VerticalLine, orientation
from src.errors import EmptyRegionError, PreconditionError


@dataclass(frozen=True)
class HalfPlane:
    """The closed half-plane a*x + b*y + c >= 0."""
    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, pt: Point2) -> Fraction:
        return self.a * pt.x + self.b * pt.y + self.c

    @classmethod
    def left_of(cls, u: Point2, v: Point2) -> "HalfPlane":
        """Points on or to the left of the directed line u -> v."""
        a = u.y - v.y
        b = v.x - u.x
        return cls(a, b, -(a * u.x + b * u.y))

    @classmethod
    def ahead_of(cls, u: Point2, v: Point2) -> "HalfPlane":
        """Points whose projection on u -> v is not behind u."""
        a = v.x - u.x
        b = v.y - u.y
        return cls(a, b, -(a * u.x + b * u.y))


def halfplanes(polygon: ConvexPolygon) -> list[HalfPlane]:
    """Closed half-planes whose intersection is exactly the polygon."""
    verts = polygon.vertices
    if polygon.rank == 2:
        return [HalfPlane.left_of(verts[i], verts[(i + 1) % len(verts)])
                for i in range(len(verts))]
    if polygon.rank == 1:
        u, v = verts
        return [HalfPlane.left_of(u, v), HalfPlane.left_of(v, u),
                HalfPlane.ahead_of(u, v), HalfPlane.ahead_of(v, u)]
    (u,) = verts
    one, zero = Fraction(1), Fraction(0)
    return [HalfPlane(one, zero, -u.x), HalfPlane(-one, zero, u.x),
            HalfPlane(zero, one, -u.y), HalfPlane(zero, -one, u.y)]


def clip_halfplane(polygon: Optional[ConvexPolygon], hp: HalfPlane) -> Optional[ConvexPolygon]:
    """Intersection of a polygon with a closed half-plane; None when empty."""
    if polygon is None:
        return None
    cycle = polygon.vertices
    values = [hp.value(v) for v in cycle]
    if all(val >= 0 for val in values):
        return polygon

    kept: list[Point2] = []
    for i, cur in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        fc, fn = values[i], values[(i + 1) % len(cycle)]
        if fc >= 0:
            kept.append(cur)
        if (fc > 0 > fn) or (fc < 0 < fn):
            t = fc / (fc - fn)
            kept.append(Point2(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)))
    return ConvexPolygon.from_points(kept)


def bbox(polygon: ConvexPolygon) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [v.x for v in polygon.vertices]
    ys = [v.y for v in polygon.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def x_range(polygon: ConvexPolygon) -> tuple[Fraction, Fraction]:
    """(min x, max x) of the polygon; the first vertex is always leftmost."""
    return polygon.vertices[0].x, max(v.x for v in polygon.vertices)


def bbox_disjoint(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    px0, py0, px1, py1 = bbox(p)
    qx0, qy0, qx1, qy1 = bbox(q)
    return px1 < qx0 or qx1 < px0 or py1 < qy0 or qy1 < py0


def contains_point(polygon: ConvexPolygon, pt: Point2) -> bool:
    """Closed membership test; boundary points are inside."""
    return all(hp.value(pt) >= 0 for hp in halfplanes(polygon))


def intersect_pair(p: ConvexPolygon, q: ConvexPolygon) -> Optional[ConvexPolygon]:
    """
    Intersection of two convex polygons.

    Args:
        p: first polygon
        q: second polygon

    Returns:
        The canonical (possibly degenerate) intersection, or None if it is empty.
    """
    if bbox_disjoint(p, q):
        return None
    if p == q:
        return p
    # Clip the smaller cycle against the other's half-planes.
    if len(p.vertices) > len(q.vertices):
        p, q = q, p
    result: Optional[ConvexPolygon] = p
    for hp in halfplanes(q):
        result = clip_halfplane(result, hp)
        if result is None:
            return None
    return result


def intersect_family(polygons: Iterable[ConvexPolygon]) -> Optional[ConvexPolygon]:
    """Common intersection of a non-empty sequence of polygons, or None."""
    polygons = list(polygons)
    if not polygons:
        raise PreconditionError("intersect_family needs at least one polygon")
    result: Optional[ConvexPolygon] = polygons[0]
    for polygon in polygons[1:]:
        result = intersect_pair(result, polygon)
        if result is None:
            return None
    return result


def lexmin(polygon: Optional[ConvexPolygon]) -> Point2:
    """Lexicographically smallest point of the polygon (its first canonical vertex)."""
    if polygon is None:
        raise EmptyRegionError("lexmin of an empty region")
    return polygon.vertices[0]


def clip_right(polygon: ConvexPolygon, line: VerticalLine) -> Optional[ConvexPolygon]:
    """Closed part of the polygon with x >= line.x0."""
    return clip_halfplane(polygon, HalfPlane(Fraction(1), Fraction(0), -line.x0))


def trace_on_line(polygon: ConvexPolygon, line: VerticalLine) -> Optional[Interval]:
    """The y-interval where the polygon meets the vertical line, or None."""
    lo, hi = x_range(polygon)
    if line.x0 < lo or line.x0 > hi:
        return None
    right = clip_right(polygon, line)
    on_line = clip_halfplane(right, HalfPlane(Fraction(-1), Fraction(0), line.x0))
    if on_line is None:
        return None
    ys = [v.y for v in on_line.vertices]
    return Interval(min(ys), max(ys))


def segment_intersection(a: Point2, b: Point2, c: Point2, d: Point2) -> Optional[Point2]:
    """
    The single common point of closed segments ab and cd.

    Returns None when they are disjoint or parallel (collinear overlaps included).
    """
    denom = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
    if denom == 0:
        return None
    o1 = orientation(c, d, a)
    o2 = orientation(c, d, b)
    o3 = orientation(a, b, c)
    o4 = orientation(a, b, d)
    if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
        return None
    if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
        return None
    t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / denom
    return Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def stab_count(polygons: Sequence[ConvexPolygon], pt: Point2) -> int:
    """Number of polygons containing the point."""
    return sum(1 for polygon in polygons if contains_point(polygon, pt))


def count_pair_intersections(polygons: Sequence[ConvexPolygon]) -> int:
    """Exact number of unordered pairs with a non-empty closed intersection."""
    return sum(1 for p, q in combinations(polygons, 2) if intersect_pair(p, q) is not None)
