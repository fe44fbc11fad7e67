"""
Stabbing families of an abstract Ordered-Helly system.

A system supplies a Helly number h, a total order on base elements and an oracle giving
the minimum of any intersection of at most h-1 sets. The removal loop picks the largest
such minimum b*, drops everything it stabs, shrinks (p, q) and repeats until a small
base case finishes the job.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Any, Callable, Generic, Iterable, Optional, Sequence, TypeVar

from src.data_classes import Family, StabbingResult
from src.errors import InadmissibleParametersError, PreconditionError, PromiseViolationError

logger = logging.getLogger(__name__)

S = TypeVar("S")
E = TypeVar("E")


class HellySystem(ABC, Generic[S, E]):
    """
    Oracles of an Ordered-Helly system over sets S with base elements E.

    Subclasses implement the algorithmic interface (h, order_leq, intersect_upto_h,
    member, complexity). The harness hooks (meet, region_min, intersect_all,
    candidates) are only needed by the brute-force oracles.
    """

    @property
    @abstractmethod
    def h(self) -> int:
        ...

    @abstractmethod
    def order_leq(self, a: E, b: E) -> bool:
        ...

    @abstractmethod
    def intersect_upto_h(self, sets: Sequence[S]) -> Optional[E]:
        """Minimum of the intersection of at most h-1 sets, or None if it is empty."""

    @abstractmethod
    def member(self, s: S, element: E) -> bool:
        ...

    @abstractmethod
    def complexity(self, s: S) -> int:
        ...

    def meet(self, a: Any, b: Any) -> Optional[Any]:
        raise NotImplementedError(f"{type(self).__name__} has no region intersection")

    def region_min(self, region: Any) -> E:
        raise NotImplementedError(f"{type(self).__name__} has no region minimum")

    def intersect_all(self, sets: Sequence[S]) -> Optional[E]:
        """Minimum of the full intersection; used by oracles, never by the solver."""
        region: Any = sets[0]
        for s in sets[1:]:
            region = self.meet(region, s)
            if region is None:
                return None
        return self.region_min(region)

    def candidates(self, sets: Sequence[S]) -> list[E]:
        raise NotImplementedError(f"{type(self).__name__} has no candidate set")

    def equal(self, a: E, b: E) -> bool:
        return self.order_leq(a, b) and self.order_leq(b, a)


@dataclass
class CostCounters:
    """Per-call oracle accounting."""
    intersections: int = 0
    memberships: int = 0
    comparisons: int = 0
    charged_complexity: int = 0
    pivots: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def _intersect(system: HellySystem, sets: Sequence, counters: Optional[CostCounters]):
    if counters is not None:
        counters.intersections += 1
        counters.charged_complexity += sum(system.complexity(s) for s in sets)
    return system.intersect_upto_h(sets)


def _member(system: HellySystem, s, element, counters: Optional[CostCounters]) -> bool:
    if counters is not None:
        counters.memberships += 1
    return system.member(s, element)


def _greater(system: HellySystem, a, b, counters: Optional[CostCounters]) -> bool:
    if counters is not None:
        counters.comparisons += 1
    return not system.order_leq(a, b)


def system_max(system: HellySystem, elements: Iterable, counters: Optional[CostCounters] = None):
    """The largest element under the system order; the first one wins among equals."""
    best = None
    for element in elements:
        if best is None or _greater(system, element, best, counters):
            best = element
    return best


def admissible(h: int, p: int, q: int) -> bool:
    return p >= q >= h and (h - 2) * p < (h - 1) * (q - 1)


def reduce_pq_generic(h: int, p: int, q: int) -> tuple[int, int]:
    """
    Shrink (p, q) to the smallest pair the family is known to satisfy.

    Raises:
        InadmissibleParametersError: if (p, q) is not admissible for h.
    """
    if not admissible(h, p, q):
        raise InadmissibleParametersError(h, p, q)
    if p == q:
        return h, h
    k = (h - 1) * (q - 1) - 1 - (h - 2) * p
    if k >= 1:
        return p - k, q - k
    return p, q


def bstar(family: Family, system: HellySystem,
          counters: Optional[CostCounters] = None) -> Optional[Any]:
    """
    Largest minimum over all (h-1)-subfamilies with a non-empty intersection.

    Returns None when no h-1 sets intersect.
    """
    arity = system.h - 1
    if len(family) < arity:
        raise PreconditionError(f"b* needs at least {arity} sets, got {len(family)}")
    minima = (
        m for combo in combinations(family.sets, arity)
        if (m := _intersect(system, combo, counters)) is not None
    )
    return system_max(system, minima, counters)


def base_case_stab_generic(family: Family, system: HellySystem, k: int,
                           counters: Optional[CostCounters] = None) -> list:
    """
    Stab the family with len(family) - k + 1 elements, knowing some k sets share one.

    Raises:
        PromiseViolationError: if no element of the candidate search stabs k sets.
    """
    sets = family.sets
    if not sets:
        return []
    if k <= 1:
        return [_intersect(system, [s], counters) for s in sets]

    arity = system.h - 1
    chosen = None
    if k <= arity:
        for combo in combinations(sets, k):
            chosen = _intersect(system, combo, counters)
            if chosen is not None:
                break
    else:
        for combo in combinations(sets, arity):
            candidate = _intersect(system, combo, counters)
            if candidate is None:
                continue
            coverage = sum(1 for s in sets if _member(system, s, candidate, counters))
            if coverage >= k:
                chosen = candidate
                break
    if chosen is None:
        raise PromiseViolationError(f"no element stabs {k} of the {len(sets)} remaining sets")

    rest = [_intersect(system, [s], counters) for s in sets
            if not _member(system, s, chosen, counters)]
    return [chosen] + rest


def stab_generic(family: Family, system: HellySystem, p: int, q: int,
                 pivot: Optional[Callable[[Family], Optional[Any]]] = None,
                 base_case: Optional[Callable[[Family, int], list]] = None,
                 counters: Optional[CostCounters] = None) -> StabbingResult:
    """
    Stab a family with the (p, q)-property using at most p - q + 1 base elements.

    Args:
        family: the sets to stab
        system: the Ordered-Helly system they belong to
        p: first parameter of the promised (p, q)-property
        q: second parameter
        pivot: replaces b* (the planar solver plugs in x* here)
        base_case: replaces base_case_stab_generic
        counters: cost counters to fill; a fresh set is used when omitted

    Returns:
        A StabbingResult. When the promise does not hold, `uncovered` lists the original
        indices left unstabbed instead of raising.
    """
    h = system.h
    if not admissible(h, p, q):
        raise InadmissibleParametersError(h, p, q)
    counters = counters if counters is not None else CostCounters()
    pivot = pivot or (lambda fam: bstar(fam, system, counters))
    base_case = base_case or (lambda fam, k: base_case_stab_generic(fam, system, k, counters))

    budget = p - q + 1
    points: list = []
    trail: list[tuple[int, int]] = []
    remaining = family
    try:
        while len(remaining):
            if len(remaining) < p:
                k = len(remaining) - (p - q)
                logger.debug("base case: %d sets, k=%d", len(remaining), k)
                points.extend(base_case(remaining, k))
                break

            p, q = reduce_pq_generic(h, p, q)
            trail.append((p, q))
            logger.debug("reduced to (p, q) = (%d, %d) with %d sets", p, q, len(remaining))

            counters.pivots += 1
            chosen = pivot(remaining)
            if chosen is None:
                raise PromiseViolationError(f"no {h - 1} of the {len(remaining)} sets intersect")
            points.append(chosen)
            logger.debug("pivot %s", chosen)

            rest = [i for i, s in enumerate(remaining.sets)
                    if not _member(system, s, chosen, counters)]
            if not rest:
                break
            if p == q:
                raise PromiseViolationError(
                    f"pivot left {len(rest)} sets unstabbed under the ({p}, {q})-property"
                )
            p, q = p - h + 1, q - h + 2
            remaining = remaining.select(rest)
    except PromiseViolationError as exc:
        logger.warning("promise violated: %s", exc)

    coverage = [
        [index for index, s in family if _member(system, s, point, counters)]
        for point in points
    ]
    covered = {index for row in coverage for index in row}
    uncovered = [index for index in family.indices if index not in covered]
    if uncovered:
        logger.warning("%d of %d sets left unstabbed", len(uncovered), len(family))
    logger.info("stabbed %d sets with %d points (budget %d)",
                len(family) - len(uncovered), len(points), budget)
    return StabbingResult(
        points=points,
        coverage=coverage,
        budget=budget,
        uncovered=uncovered,
        trail=trail,
        statistics=counters.as_dict(),
    )


def check_lemma_sysmin(family: Family, system: HellySystem) -> bool:
    """
    Whether the minimum of the whole intersection is the minimum of some h-1 sets.

    Raises:
        PreconditionError: if the family has fewer than h sets or an empty intersection.
    """
    if len(family) < system.h:
        raise PreconditionError(f"need at least h = {system.h} sets, got {len(family)}")
    target = system.intersect_all(family.sets)
    if target is None:
        raise PreconditionError("the family has an empty intersection")
    for combo in combinations(family.sets, system.h - 1):
        m = system.intersect_upto_h(combo)
        if m is not None and system.equal(m, target):
            return True
    return False
