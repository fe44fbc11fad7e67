import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Generic, Iterable, Iterator, Optional, TypeVar

Scalar = Fraction

S = TypeVar("S")


def to_scalar(value: Any) -> Fraction:
    """
    Convert an integer, Fraction, decimal string or "num/den" string to an exact Scalar.

    Floats are accepted through their shortest decimal repr, so 0.1 becomes 1/10.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            result = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        return result
    raise ValueError(f"not a number: {value!r}")


def format_scalar(value: Fraction) -> str:
    """Exact text form: "3" for integers, "3/4" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point2:
    """A planar point; dataclass ordering is the lexicographic order (x, then y)."""
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Any, y: Any) -> "Point2":
        return cls(to_scalar(x), to_scalar(y))

    def __str__(self):
        return f"({format_scalar(self.x)}, {format_scalar(self.y)})"


def orientation(o: Point2, a: Point2, b: Point2) -> Fraction:
    """Twice the signed area of (o, a, b): positive for a left (CCW) turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def convex_hull(points: Iterable[Point2]) -> list[Point2]:
    """
    Monotone-chain hull, CCW, starting at the lexicographically smallest point.

    Collinear and repeated points are dropped. Two distinct points give a segment,
    one point gives itself.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    lower: list[Point2] = []
    for pt in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)

    upper: list[Point2] = []
    for pt in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)

    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class ConvexPolygon:
    """
    A compact convex region given by its vertices.

    Vertices are canonical: CCW, starting at the lexmin vertex, no repeated or collinear
    vertices. So two polygons are equal exactly when their vertex tuples are equal.
    Segments (two vertices) and points (one vertex) are valid degenerate polygons.
    """
    vertices: tuple[Point2, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a polygon needs at least one vertex")
        if list(self.vertices) != convex_hull(self.vertices):
            raise ValueError("vertices are not in canonical convex position")

    @classmethod
    def from_points(cls, points: Iterable[Point2]) -> Optional["ConvexPolygon"]:
        """Convex hull of the points, or None when there are none."""
        hull = convex_hull(points)
        if not hull:
            return None
        return cls(tuple(hull))

    @classmethod
    def from_vertices(cls, vertices: Iterable[Point2]) -> tuple["ConvexPolygon", bool]:
        """
        Validate a user-supplied vertex cycle.

        Args:
            vertices: the polygon in either winding order

        Returns:
            The canonical polygon and whether the input winding was clockwise.

        Raises:
            ValueError: if the cycle is empty or not convex.
        """
        cycle = _drop_repeats(list(vertices))
        if not cycle:
            raise ValueError("a polygon needs at least one vertex")
        cycle = _drop_collinear(cycle)
        hull = convex_hull(cycle)
        if len(hull) != len(cycle):
            raise ValueError("vertices are not in convex position")
        if len(cycle) < 3:
            return cls(tuple(hull)), False

        # A convex cycle turns one way only; a star-shaped self-overlap would fail the hull check.
        turns = {
            orientation(cycle[i - 2], cycle[i - 1], cycle[i]) > 0 for i in range(len(cycle))
        }
        if len(turns) != 1:
            raise ValueError("vertices are not in convex position")
        clockwise = not turns.pop()
        ordered = list(reversed(cycle)) if clockwise else cycle
        start = ordered.index(min(ordered))
        canonical = tuple(ordered[start:] + ordered[:start])
        if list(canonical) != hull:
            raise ValueError("vertices wind around the hull more than once")
        return cls(canonical), clockwise

    @classmethod
    def box(cls, x0: Any, y0: Any, x1: Any, y1: Any) -> "ConvexPolygon":
        """Axis-aligned rectangle [x0, x1] x [y0, y1] (possibly degenerate)."""
        corners = [Point2.of(x0, y0), Point2.of(x1, y0), Point2.of(x1, y1), Point2.of(x0, y1)]
        polygon = cls.from_points(corners)
        assert polygon is not None
        return polygon

    @property
    def rank(self) -> int:
        """Degeneracy rank: 2 with positive area, 1 for a segment, 0 for a point."""
        return min(len(self.vertices) - 1, 2)

    @property
    def complexity(self) -> int:
        return len(self.vertices)

    def __str__(self):
        return "Polygon[" + ", ".join(str(v) for v in self.vertices) + "]"


def _drop_repeats(cycle: list[Point2]) -> list[Point2]:
    result: list[Point2] = []
    for pt in cycle:
        if not result or result[-1] != pt:
            result.append(pt)
    while len(result) > 1 and result[0] == result[-1]:
        result.pop()
    return result


def _drop_collinear(cycle: list[Point2]) -> list[Point2]:
    changed = True
    while changed and len(cycle) >= 3:
        changed = False
        for i in range(len(cycle)):
            prev, cur, nxt = cycle[i - 1], cycle[i], cycle[(i + 1) % len(cycle)]
            if orientation(prev, cur, nxt) == 0:
                del cycle[i]
                changed = True
                break
    return cycle


@dataclass(frozen=True)
class VerticalLine:
    """The line {(x, y) : x = x0}."""
    x0: Fraction

    def __str__(self):
        return f"x = {format_scalar(self.x0)}"


@dataclass(frozen=True, order=True)
class Interval:
    """A closed interval [lo, hi]."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def of(cls, lo: Any, hi: Any) -> "Interval":
        return cls(to_scalar(lo), to_scalar(hi))

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __str__(self):
        return f"[{format_scalar(self.lo)}, {format_scalar(self.hi)}]"


@dataclass(frozen=True)
class PQParams:
    """The pair (p, q) together with the Helly number h it is measured against."""
    p: int
    q: int
    h: int = 3

    @property
    def admissible(self) -> bool:
        return (self.p >= self.q >= self.h
                and (self.h - 2) * self.p < (self.h - 1) * (self.q - 1))

    @property
    def budget(self) -> int:
        return self.p - self.q + 1

    def __str__(self):
        return f"(p={self.p}, q={self.q}, h={self.h})"


@dataclass(frozen=True)
class Family(Generic[S]):
    """
    An indexed family of sets.

    `indices` holds the original index of each member so that filtered subfamilies can
    still report which input sets they refer to.
    """
    sets: tuple[S, ...]
    indices: tuple[int, ...] = ()
    complexity_bound: Optional[int] = None

    def __post_init__(self):
        if not self.indices and self.sets:
            object.__setattr__(self, "indices", tuple(range(len(self.sets))))
        if len(self.indices) != len(self.sets):
            raise ValueError("each set needs exactly one index")

    @classmethod
    def of(cls, sets: Iterable[S], complexity_bound: Optional[int] = None) -> "Family[S]":
        return cls(tuple(sets), complexity_bound=complexity_bound)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[tuple[int, S]]:
        return iter(zip(self.indices, self.sets))

    def select(self, positions: Iterable[int]) -> "Family[S]":
        """Subfamily at the given positions (not original indices), keeping their indices."""
        positions = list(positions)
        return Family(
            tuple(self.sets[i] for i in positions),
            tuple(self.indices[i] for i in positions),
            self.complexity_bound,
        )


class CertificateKind(str, Enum):
    PQ_PROPERTY = "pq-property"
    STABBING = "stabbing"
    MINIMUM_STAB = "minimum-stab"
    DECISION = "decision"


@dataclass(frozen=True)
class Certificate:
    """Outcome of an oracle check with the indices that justify it."""
    kind: CertificateKind
    verdict: bool
    witness: tuple[int, ...] = ()
    detail: str = ""

    def __post_init__(self):
        needs_witness = self.kind in (CertificateKind.PQ_PROPERTY, CertificateKind.STABBING)
        if needs_witness and not self.verdict and not self.witness:
            raise ValueError(f"a failed {self.kind.value} certificate needs a witness")

    def __str__(self):
        verdict = "pass" if self.verdict else "fail"
        return f"Certificate({self.kind.value}: {verdict}, witness={list(self.witness)})"


@dataclass
class StabbingResult:
    """Stabbing elements, what each one stabs, and diagnostics for broken promises."""
    points: list[Any]
    coverage: list[list[int]]
    budget: int
    uncovered: list[int] = field(default_factory=list)
    trail: list[tuple[int, int]] = field(default_factory=list)
    statistics: dict[str, int] = field(default_factory=dict)
    certificate: Optional[Certificate] = None

    @property
    def complete(self) -> bool:
        return not self.uncovered

    @property
    def within_budget(self) -> bool:
        return len(self.points) <= self.budget

    def __str__(self):
        status = "complete" if self.complete else f"uncovered={self.uncovered}"
        return f"StabbingResult({len(self.points)}/{self.budget} points, {status})"
