"""
Stabbing planar convex polygons with the (p, q)-property.

The pivot x*(F) is the lexicographic maximum over all intersecting pairs of the lexmin
of their intersection. It is found either by brute force over all pairs or by the
randomized optimizer, whose decision step asks whether some pair intersects strictly to
the right of a vertical line, or on it above the incumbent.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

from src.chan import (
    BOTTOM,
    ChanOptimizer,
    OptimizationProblem,
    OptimizationTrace,
    OptimizerConfig,
    OracleStatistics,
    count_oracle_calls,
    leave_one_out,
)
from src.config import DEFAULT_SETTINGS, Settings
from src.data_classes import (
    ConvexPolygon,
    Family,
    PQParams,
    Point2,
    StabbingResult,
    VerticalLine,
    to_scalar,
)
from src.errors import (
    GeneralPositionError,
    InadmissibleParametersError,
    InconsistentDecisionError,
    PreconditionError,
    PromiseViolationError,
)
from src.geometry import (
    clip_right,
    contains_point,
    count_pair_intersections,
    intersect_family,
    intersect_pair,
    lexmin,
    trace_on_line,
    x_range,
)
from src.ordered_helly import (
    CostCounters,
    HellySystem,
    admissible,
    base_case_stab_generic,
    bstar,
    reduce_pq_generic,
    stab_generic,
)
from src.sweepline import count_interval_pairs, max_stab_point

logger = logging.getLogger(__name__)

PLANAR_HELLY_NUMBER = 3


class StabMode(str, Enum):
    BRUTEFORCE = "bruteforce"
    RANDOMIZED = "randomized"


class PlanarSystem(HellySystem[ConvexPolygon, Point2]):
    """Convex polygons ordered lexicographically. The Helly number is 3 in the plane."""

    def __init__(self, helly_number: int = PLANAR_HELLY_NUMBER):
        if helly_number < 2:
            raise ValueError("helly_number must be at least 2")
        self._h = helly_number

    @property
    def h(self) -> int:
        return self._h

    def order_leq(self, a: Point2, b: Point2) -> bool:
        return a <= b

    def intersect_upto_h(self, sets: Sequence[ConvexPolygon]) -> Optional[Point2]:
        region = intersect_family(sets)
        return None if region is None else lexmin(region)

    def member(self, s: ConvexPolygon, element: Point2) -> bool:
        return contains_point(s, element)

    def complexity(self, s: ConvexPolygon) -> int:
        return s.complexity

    def meet(self, a: ConvexPolygon, b: ConvexPolygon) -> Optional[ConvexPolygon]:
        return intersect_pair(a, b)

    def region_min(self, region: ConvexPolygon) -> Point2:
        return lexmin(region)

    def candidates(self, sets: Sequence[ConvexPolygon]) -> list[Point2]:
        """Pairwise lexmins and all vertices: enough to realise a minimum stabbing set."""
        found: set[Point2] = set()
        for a, b in combinations(sets, 2):
            region = intersect_pair(a, b)
            if region is not None:
                found.add(lexmin(region))
        for s in sets:
            found.update(s.vertices)
        return sorted(found)


PLANAR = PlanarSystem()


def planar_family(polygons: Iterable[ConvexPolygon]) -> Family[ConvexPolygon]:
    """Family of polygons recording the largest vertex count as its complexity bound."""
    polygons = tuple(polygons)
    bound = max((p.complexity for p in polygons), default=None)
    return Family(polygons, complexity_bound=bound)


def _as_family(polygons) -> Family[ConvexPolygon]:
    if isinstance(polygons, Family):
        return polygons
    return planar_family(polygons)


def reduce_pq(params: PQParams) -> PQParams:
    """(p, q) reduced as far as the (p, q)-property allows, keeping p - q."""
    p, q = reduce_pq_generic(params.h, params.p, params.q)
    return PQParams(p, q, params.h)


def _pair_lexmins(family: Family[ConvexPolygon]) -> list[Point2]:
    minima = []
    for a, b in combinations(family.sets, 2):
        region = intersect_pair(a, b)
        if region is not None:
            minima.append(lexmin(region))
    return minima


def xstar_bruteforce(family) -> Optional[Point2]:
    """Lexicographic maximum of the pairwise intersection lexmins; None if no pair meets."""
    family = _as_family(family)
    if len(family) < 2:
        return None
    return bstar(family, PLANAR)


def general_position(family) -> bool:
    """True when no pair lexmin other than x*(F) shares x*(F)'s x-coordinate."""
    minima = _pair_lexmins(_as_family(family))
    if not minima:
        return True
    top = max(minima)
    return all(m == top or m.x != top.x for m in minima)


def right_intersection_decide(family, line: VerticalLine) -> bool:
    """
    Whether some pair of line-crossing polygons intersects strictly right of the line.

    Pairs meeting right of the line but not on it are exactly the difference between the
    pair count of the clipped polygons and the pair count of their traces on the line.

    Raises:
        PreconditionError: naming the first set that misses the line.
    """
    family = _as_family(family)
    traces = []
    for index, polygon in family:
        trace = trace_on_line(polygon, line)
        if trace is None:
            raise PreconditionError(f"polygon does not meet {line}", set_index=index)
        traces.append(trace)
    clipped = [clip_right(polygon, line) for polygon in family.sets]
    return count_pair_intersections(clipped) > count_interval_pairs(traces)


def decide_xstar_right(family, t, p: Optional[int] = None) -> bool:
    """
    Whether x*(F) lies strictly right of the vertical line x = t.

    Args:
        family: the polygons
        t: abscissa of the line
        p: when given, at least p polygons entirely right of the line are taken to
            contain an intersecting pair, as the (p, q)-property guarantees

    Returns:
        True iff some pair intersects entirely within x > t.
    """
    t = to_scalar(t)
    family = _as_family(family)
    ranges = [x_range(polygon) for polygon in family.sets]
    kept = [i for i, (_, hi) in enumerate(ranges) if hi > t]
    right = [i for i in kept if ranges[i][0] > t]
    if p is not None and len(right) >= p:
        return True
    for i in right:
        for j in kept:
            if j != i and intersect_pair(family.sets[i], family.sets[j]) is not None:
                return True
    crossing = [i for i in kept if ranges[i][0] <= t]
    if len(crossing) < 2:
        return False
    return right_intersection_decide(family.select(crossing), VerticalLine(t))


def _pair_lexmin_above_on_line(family: Family[ConvexPolygon], t: Point2) -> bool:
    """Whether some pair's intersection lexmin lies on x = t.x strictly above t."""
    line = VerticalLine(t.x)
    traces = [(polygon, trace) for polygon in family.sets
              if (trace := trace_on_line(polygon, line)) is not None]
    for (a, trace_a), (b, trace_b) in combinations(traces, 2):
        low = max(trace_a.lo, trace_b.lo)
        if low <= t.y or low > min(trace_a.hi, trace_b.hi):
            continue
        region = intersect_pair(a, b)
        if region is not None and lexmin(region).x == t.x:
            return True
    return False


def decide_xstar_above(family, t: Point2, p: Optional[int] = None) -> bool:
    """
    Whether x*(F) is lexicographically greater than the point t.

    decide_xstar_right answers the x-part; pairs whose lexmin shares t's abscissa are
    then compared on y.
    """
    family = _as_family(family)
    if decide_xstar_right(family, t.x, p):
        return True
    return _pair_lexmin_above_on_line(family, t)


def find_right_witness(family, t) -> Optional[tuple[int, int]]:
    """First pair (original indices) whose intersection lexmin has x > t."""
    family = _as_family(family)
    t = to_scalar(t)
    for (i, a), (j, b) in combinations(family, 2):
        region = intersect_pair(a, b)
        if region is not None and lexmin(region).x > t:
            return i, j
    return None


@dataclass(frozen=True)
class XStarOutcome:
    """x*(F), whether brute force had to take over, and the optimizer statistics."""
    point: Optional[Point2]
    fallback: bool
    trace: OracleStatistics


def _solve_base_strict(problem: OptimizationProblem[Family[ConvexPolygon]]):
    minima = _pair_lexmins(problem.payload)
    if not minima:
        return BOTTOM
    top = max(minima)
    if any(m != top and m.x == top.x for m in minima):
        raise GeneralPositionError(f"another pair lexmin shares x = {top.x} with {top}")
    return top


def xstar_randomized(family, params: Optional[PQParams] = None, seed: Optional[int] = 0,
                     settings: Settings = DEFAULT_SETTINGS) -> XStarOutcome:
    """
    x*(F) through the randomized optimizer.

    The family is split into three blocks and each subproblem drops one block. The
    decider asks decide_xstar_above whether the subproblem beats the incumbent in
    lexicographic order, so pivots sharing an abscissa are compared on y. Ties in x seen
    at the base level, or an inconsistent decision, switch to brute force and set
    `fallback`.
    """
    family = _as_family(family)
    base_size = max(settings.chan_base_size, 2)
    config = OptimizerConfig(r=PLANAR_HELLY_NUMBER, base_size=base_size, seed=seed)
    p = params.p if params is not None else None

    def split(problem):
        positions = list(range(problem.size))
        return [OptimizationProblem(problem.payload.select(part), len(part))
                for part in leave_one_out(positions, config.r)]

    def decide(problem, t) -> bool:
        if t is BOTTOM:
            return any(intersect_pair(a, b) is not None
                       for a, b in combinations(problem.payload.sets, 2))
        return decide_xstar_above(problem.payload, t, p)

    trace = OptimizationTrace()
    optimizer = ChanOptimizer(split, decide, _solve_base_strict, config, trace)
    try:
        value = optimizer.optimize(OptimizationProblem(family, len(family)))
    except (GeneralPositionError, InconsistentDecisionError) as exc:
        logger.warning("randomized x* fell back to brute force: %s", exc)
        return XStarOutcome(xstar_bruteforce(family), True, count_oracle_calls(trace))
    point = None if value is BOTTOM else value
    return XStarOutcome(point, False, count_oracle_calls(trace))


def base_case_stab(family, k: int, settings: Settings = DEFAULT_SETTINGS,
                   counters: Optional[CostCounters] = None) -> list[Point2]:
    """
    len(F) - k + 1 points stabbing F, knowing some k polygons share a point.

    Families larger than the sweep threshold with k > 2 take the sweep to find the deepest
    point; smaller ones enumerate pairwise lexmins.
    """
    family = _as_family(family)
    sweepable = all(polygon.rank == 2 for polygon in family.sets)
    if k > 2 and len(family) > settings.sweep_threshold and sweepable:
        point, count = max_stab_point(family.sets)
        if count < k:
            raise PromiseViolationError(f"deepest point stabs {count} sets, needed {k}")
        rest = [lexmin(s) for s in family.sets if not contains_point(s, point)]
        return [point] + rest
    return base_case_stab_generic(family, PLANAR, k, counters)


def stab_planar(family, params: PQParams, mode: StabMode | str = StabMode.BRUTEFORCE,
                seed: Optional[int] = 0, settings: Settings = DEFAULT_SETTINGS) -> StabbingResult:
    """
    Stab a planar family with the (p, q)-property using at most p - q + 1 points.

    Args:
        family: polygons, or a Family of them
        params: the promised (p, q); h must be 3
        mode: brute-force or randomized pivot computation
        seed: seed of the randomized pivots
        settings: thresholds

    Returns:
        A StabbingResult; promise violations are reported through `uncovered`.
    """
    family = _as_family(family)
    mode = StabMode(mode)
    if params.h != PLANAR_HELLY_NUMBER:
        raise PreconditionError(f"planar stabbing uses h = 3, got h = {params.h}")
    if not admissible(params.h, params.p, params.q):
        raise InadmissibleParametersError(params.h, params.p, params.q)

    counters = CostCounters()
    extra = {"decide_calls": 0, "fallbacks": 0}
    rng = random.Random(seed)

    def pivot(remaining: Family[ConvexPolygon]) -> Optional[Point2]:
        if mode is StabMode.BRUTEFORCE:
            return bstar(remaining, PLANAR, counters)
        outcome = xstar_randomized(remaining, params, rng.randrange(2**32), settings)
        extra["decide_calls"] += outcome.trace.decide_calls
        extra["fallbacks"] += int(outcome.fallback)
        return outcome.point

    def base_case(remaining: Family[ConvexPolygon], k: int) -> list[Point2]:
        return base_case_stab(remaining, k, settings, counters)

    result = stab_generic(family, PLANAR, params.p, params.q, pivot, base_case, counters)
    if mode is StabMode.RANDOMIZED:
        result.statistics.update(extra)
    return result
