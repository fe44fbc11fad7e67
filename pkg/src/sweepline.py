"""
Sweep-line algorithms over convex polygons and intervals.

The polygon sweep is a Bentley-Ottmann variant: the status holds the non-vertical edges
crossing the sweep line, ordered by their height there, and every vertex and edge crossing
is an event. All events sharing an abscissa are handled together, so coincident events
need no infinitesimal shifts. Stab counts come from two auxiliary ordered lists holding
the upper-hull and the lower-hull edges.
"""

import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from sortedcontainers import SortedList

from src.data_classes import ConvexPolygon, Interval, Point2
from src.errors import PreconditionError, SweepDegeneracyError
from src.geometry import count_pair_intersections, segment_intersection

logger = logging.getLogger(__name__)

LEFT = -1
RIGHT = 1


class SweepBroom:
    """Shared sweep position: abscissa x and the side (just left or just right of x)."""

    def __init__(self):
        self.x: Fraction = Fraction(0)
        self.side: int = RIGHT


class _Keyed:
    __slots__ = ()

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()


class SweepEdge(_Keyed):
    """A non-vertical polygon edge oriented left to right."""

    __slots__ = ("left", "right", "owner", "upper", "eid", "slope", "broom")

    def __init__(self, left: Point2, right: Point2, owner: int, upper: bool, eid: int,
                 broom: SweepBroom):
        self.left = left
        self.right = right
        self.owner = owner
        self.upper = upper
        self.eid = eid
        self.slope = (right.y - left.y) / (right.x - left.x)
        self.broom = broom

    def y_at(self, x: Fraction) -> Fraction:
        return self.left.y + self.slope * (x - self.left.x)

    def sort_key(self) -> tuple:
        return self.y_at(self.broom.x), 0, self.broom.side * self.slope, self.eid

    def __repr__(self):
        side = "upper" if self.upper else "lower"
        return f"SweepEdge({self.left}->{self.right}, polygon {self.owner}, {side})"


class _Probe(_Keyed):
    """A height on the sweep line placed before (rank -1) or after (rank +1) all edges there."""

    __slots__ = ("y", "rank")

    def __init__(self, y: Fraction, rank: int):
        self.y = y
        self.rank = rank

    def sort_key(self) -> tuple:
        return self.y, self.rank


class SweepStatus:
    """Active edges ordered by height at the broom, plus upper/lower order statistics."""

    def __init__(self, broom: SweepBroom):
        self.broom = broom
        self.edges: SortedList = SortedList()
        self.uppers: SortedList = SortedList()
        self.lowers: SortedList = SortedList()
        self.lower_of: dict[int, SweepEdge] = {}

    def __len__(self):
        return len(self.edges)

    def add(self, edge: SweepEdge):
        self.edges.add(edge)
        if edge.upper:
            self.uppers.add(edge)
        else:
            self.lowers.add(edge)
            self.lower_of[edge.owner] = edge

    def through_range(self, y: Fraction) -> tuple[int, int]:
        """Positions [lo, hi) of the edges passing through height y at the broom."""
        return (self.edges.bisect_left(_Probe(y, -1)),
                self.edges.bisect_right(_Probe(y, 1)))

    def take_through(self, y: Fraction) -> list[SweepEdge]:
        """Remove and return the edges passing through height y at the broom."""
        lo, hi = self.through_range(y)
        taken = list(self.edges[lo:hi])
        del self.edges[lo:hi]
        for edge in taken:
            if edge.upper:
                self.uppers.remove(edge)
            else:
                self.lowers.remove(edge)
                if self.lower_of.get(edge.owner) is edge:
                    del self.lower_of[edge.owner]
        return taken

    def between(self, y0: Fraction, y1: Fraction) -> list[SweepEdge]:
        """Edges whose height at the broom lies in [y0, y1]."""
        lo = self.edges.bisect_left(_Probe(y0, -1))
        hi = self.edges.bisect_right(_Probe(y1, 1))
        return list(self.edges[lo:hi])

    def neighbours(self, lo: int, hi: int) -> tuple[Optional[SweepEdge], Optional[SweepEdge]]:
        below = self.edges[lo - 1] if lo > 0 else None
        above = self.edges[hi] if hi < len(self.edges) else None
        return below, above

    def stab_count(self, y: Fraction) -> int:
        """
        Number of polygons with an active edge pair enclosing height y.

        Upper edges at or above y, minus lower edges strictly above y.
        """
        uppers_above = len(self.uppers) - self.uppers.bisect_left(_Probe(y, -1))
        lowers_above = len(self.lowers) - self.lowers.bisect_right(_Probe(y, 1))
        return uppers_above - lowers_above

    def enclosing(self, y: Fraction) -> list[int]:
        """Owners of the active polygons whose vertical extent at the broom contains y."""
        start = self.uppers.bisect_left(_Probe(y, -1))
        owners = []
        for edge in self.uppers[start:]:
            lower = self.lower_of.get(edge.owner)
            if lower is not None and lower.y_at(self.broom.x) <= y:
                owners.append(edge.owner)
        return owners

    def validate(self):
        """Re-sort and recount from scratch; raise SweepDegeneracyError on any mismatch."""
        edges = list(self.edges)
        if edges != sorted(edges):
            raise SweepDegeneracyError(f"status out of order at x = {self.broom.x}")
        stale = [e for e in edges if e.right.x <= self.broom.x and self.broom.side == RIGHT]
        if stale:
            raise SweepDegeneracyError(f"edge {stale[0]!r} outlived its right endpoint")
        uppers = [e for e in edges if e.upper]
        lowers = [e for e in edges if not e.upper]
        if uppers != list(self.uppers) or lowers != list(self.lowers):
            raise SweepDegeneracyError(f"upper/lower counts drifted at x = {self.broom.x}")


@dataclass
class SweepSlice:
    """Everything the sweep knows at one event abscissa."""
    x: Fraction
    points: list[Point2]
    touching: dict[Point2, set[int]]
    vertical_hits: list[tuple[Point2, int, int]]
    closing: list[tuple[Fraction, Fraction, int]]
    status: SweepStatus

    def stab_count(self, y: Fraction) -> int:
        closing = sum(1 for lo, hi, _ in self.closing if lo <= y <= hi)
        return self.status.stab_count(y) + closing

    def candidates(self) -> list[Point2]:
        found = set(self.points)
        found.update(pt for pt, _, _ in self.vertical_hits)
        return sorted(found)


class PolygonSweep:
    """
    Left-to-right sweep over positive-area convex polygons.

    Iterating yields one SweepSlice per abscissa holding an event. Between slices the
    status is ordered for the region just right of the last abscissa.
    """

    def __init__(self, polygons: Sequence[ConvexPolygon], check_invariants: bool = False):
        for index, polygon in enumerate(polygons):
            if polygon.rank != 2:
                raise PreconditionError("the sweep needs positive-area polygons",
                                        set_index=index)
        self.polygons = list(polygons)
        self.check_invariants = check_invariants
        self.broom = SweepBroom()
        self.status = SweepStatus(self.broom)
        self.crossings_found = 0

        self._starting: dict[Point2, list[SweepEdge]] = defaultdict(list)
        self._verticals: dict[Fraction, list[tuple[Fraction, Fraction, int]]] = defaultdict(list)
        self._closing: dict[Fraction, list[tuple[Fraction, Fraction, int]]] = defaultdict(list)
        self._events: list[Point2] = []
        self._seen: set[Point2] = set()
        self._build()

    def _build(self):
        eid = 0
        for owner, polygon in enumerate(self.polygons):
            verts = polygon.vertices
            for i, a in enumerate(verts):
                b = verts[(i + 1) % len(verts)]
                self._push(a)
                if a.x == b.x:
                    self._verticals[a.x].append((min(a.y, b.y), max(a.y, b.y), owner))
                    continue
                # CCW: edges running rightwards are on the lower hull
                upper = a.x > b.x
                left, right = (b, a) if upper else (a, b)
                self._starting[left].append(SweepEdge(left, right, owner, upper, eid, self.broom))
                eid += 1
            max_x = max(v.x for v in verts)
            ys = [v.y for v in verts if v.x == max_x]
            self._closing[max_x].append((min(ys), max(ys), owner))

    def _push(self, pt: Point2):
        if pt not in self._seen:
            self._seen.add(pt)
            heapq.heappush(self._events, pt)

    def _schedule(self, a: Optional[SweepEdge], b: Optional[SweepEdge]):
        if a is None or b is None or a.owner == b.owner:
            return
        pt = segment_intersection(a.left, a.right, b.left, b.right)
        if pt is not None and pt.x > self.broom.x and pt not in self._seen:
            self.crossings_found += 1
            self._push(pt)

    def __iter__(self) -> Iterator[SweepSlice]:
        while self._events:
            x = self._events[0].x
            points = []
            while self._events and self._events[0].x == x:
                points.append(heapq.heappop(self._events))
            yield self._advance(x, points)

    def _advance(self, x: Fraction, points: list[Point2]) -> SweepSlice:
        status = self.status
        self.broom.x = x
        self.broom.side = LEFT
        through = {pt: status.take_through(pt.y) for pt in points}

        self.broom.side = RIGHT
        for pt in points:
            for edge in through[pt]:
                if edge.right.x > x:
                    status.add(edge)
            for edge in self._starting.get(pt, ()):
                status.add(edge)

        for pt in points:
            lo, hi = status.through_range(pt.y)
            below, above = status.neighbours(lo, hi)
            if lo == hi:
                self._schedule(below, above)
            else:
                self._schedule(below, status.edges[lo])
                self._schedule(status.edges[hi - 1], above)

        if self.check_invariants:
            status.validate()

        verticals = self._verticals.get(x, [])
        touching: dict[Point2, set[int]] = {}
        for pt in points:
            owners = {edge.owner for edge in through[pt]}
            owners.update(edge.owner for edge in self._starting.get(pt, ()))
            owners.update(owner for y0, y1, owner in verticals if y0 <= pt.y <= y1)
            touching[pt] = owners

        vertical_hits = []
        for y0, y1, owner in verticals:
            for edge in status.between(y0, y1):
                if edge.owner != owner:
                    vertical_hits.append((Point2(x, edge.y_at(x)), owner, edge.owner))

        logger.debug("sweep x=%s: %d events, %d active edges", x, len(points), len(status))
        return SweepSlice(x, points, touching, vertical_hits, self._closing.get(x, []), status)


def max_stab_point(polygons: Sequence[ConvexPolygon],
                   check_invariants: bool = False) -> tuple[Point2, int]:
    """
    Find an event point (vertex or edge crossing) contained in the most polygons.

    Args:
        polygons: non-empty list of positive-area polygons
        check_invariants: validate the status after every abscissa

    Returns:
        The lexicographically first point attaining the maximum, and its count.
    """
    if not polygons:
        raise PreconditionError("max_stab_point needs at least one polygon")
    best: Optional[Point2] = None
    best_count = -1
    for sweep_slice in PolygonSweep(polygons, check_invariants):
        for pt in sweep_slice.candidates():
            count = sweep_slice.stab_count(pt.y)
            if count > best_count:
                best, best_count = pt, count
    assert best is not None
    return best, best_count


@dataclass(frozen=True)
class SweepPairCount:
    count: int
    exact: bool


def count_polygon_pairs_sweep(polygons: Sequence[ConvexPolygon],
                              check_invariants: bool = True) -> SweepPairCount:
    """
    Count intersecting pairs from boundary contacts and containments seen by the sweep.

    Falls back to the quadratic counter, with exact=False, when the status degenerates.
    """
    try:
        pairs = _sweep_pairs(polygons, check_invariants)
    except SweepDegeneracyError as exc:
        logger.warning("sweep pair count fell back to the quadratic counter: %s", exc)
        return SweepPairCount(count_pair_intersections(polygons), exact=False)
    return SweepPairCount(len(pairs), exact=True)


def _sweep_pairs(polygons: Sequence[ConvexPolygon], check_invariants: bool) -> set[tuple[int, int]]:
    first_vertex: dict[Point2, list[int]] = defaultdict(list)
    for owner, polygon in enumerate(polygons):
        first_vertex[polygon.vertices[0]].append(owner)

    pairs: set[tuple[int, int]] = set()
    for sweep_slice in PolygonSweep(polygons, check_invariants):
        for owners in sweep_slice.touching.values():
            pairs.update(combinations(sorted(owners), 2))
        for _, a, b in sweep_slice.vertical_hits:
            pairs.add((min(a, b), max(a, b)))
        # A polygon nested inside another has its leftmost vertex inside it.
        for pt in sweep_slice.points:
            for inner in first_vertex.get(pt, ()):
                outer = set(sweep_slice.status.enclosing(pt.y))
                outer.update(o for lo, hi, o in sweep_slice.closing if lo <= pt.y <= hi)
                outer.discard(inner)
                pairs.update((min(inner, o), max(inner, o)) for o in outer)
    return pairs


def count_interval_pairs(intervals: Sequence[Interval]) -> int:
    """
    Number of unordered pairs of closed intervals that intersect.

    Endpoints are scanned in order with starts before ends at equal coordinates, so
    touching intervals count. Each start adds the number of currently open intervals.
    """
    events = sorted([(iv.lo, 0) for iv in intervals] + [(iv.hi, 1) for iv in intervals])
    open_count = 0
    total = 0
    for _, kind in events:
        if kind == 0:
            total += open_count
            open_count += 1
        else:
            open_count -= 1
    return total
