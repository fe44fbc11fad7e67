"""
Randomized optimization through a decision oracle.

A problem whose value is the maximum over r smaller subproblems is solved by visiting the
subproblems in random order and only recursing into those the decider says can beat the
current incumbent. Everything problem-specific comes in as callables.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Generic, Optional, Sequence, TypeVar

from src.errors import InconsistentDecisionError, NonShrinkingSplitError

logger = logging.getLogger(__name__)

T = TypeVar("T")


class _Bottom:
    """A value strictly below every other value."""

    _instance: Optional["_Bottom"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


@dataclass(frozen=True)
class OptimizationProblem(Generic[T]):
    payload: T
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("problem size must be non-negative")


@dataclass(frozen=True)
class OptimizerConfig:
    """Branching factor r, shrink factor alpha, base-case threshold and seed."""
    r: int = 3
    alpha: Fraction = Fraction(2, 3)
    base_size: int = 9
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie strictly between 0 and 1")
        if self.base_size < 1:
            raise ValueError("base_size must be at least 1")

    def size_limit(self, size: int) -> int:
        return math.ceil(Fraction(self.alpha) * size)


@dataclass
class OptimizationTrace:
    """Mutable record filled in by a traced optimizer run."""
    decide_calls: int = 0
    base_solves: int = 0
    max_depth: int = 0
    sizes_by_depth: dict[int, list[int]] = field(default_factory=dict)

    def enter(self, depth: int, size: int):
        self.sizes_by_depth.setdefault(depth, []).append(size)
        self.max_depth = max(self.max_depth, depth)


@dataclass(frozen=True)
class OracleStatistics:
    decide_calls: int
    base_solves: int
    max_depth: int
    sizes_per_level: tuple[tuple[int, ...], ...]

    @property
    def subproblems(self) -> int:
        return sum(len(level) for level in self.sizes_per_level)


def count_oracle_calls(trace: OptimizationTrace) -> OracleStatistics:
    """Summarise a trace: decide calls, base solves, depth and sizes per recursion level."""
    levels = tuple(
        tuple(trace.sizes_by_depth.get(depth, ()))
        for depth in range(trace.max_depth + 1)
    ) if trace.sizes_by_depth else ()
    return OracleStatistics(
        decide_calls=trace.decide_calls,
        base_solves=trace.base_solves,
        max_depth=trace.max_depth,
        sizes_per_level=levels,
    )


def leave_one_out(items: Sequence[T], parts: int) -> list[list[T]]:
    """
    Split items into `parts` contiguous blocks of near-equal size and, for each block,
    return every item outside it.

    Two items touch at most two blocks, so with parts >= 3 every pair of items appears
    together in some returned list. Fewer blocks are used when there are fewer items
    than parts.
    """
    n = len(items)
    parts = min(parts, n)
    if parts == 0:
        return []
    bounds = [n * i // parts for i in range(parts + 1)]
    return [
        list(items[:bounds[i]]) + list(items[bounds[i + 1]:])
        for i in range(parts)
    ]


class ChanOptimizer(Generic[T]):
    """
    Computes f(P) = max over split(P) with few decider calls.

    Args:
        split: returns the subproblems of a problem larger than the base size
        decide: decide(P, t) is True iff f(P) > t (t may be BOTTOM)
        solve_base: exact solver for problems of size <= base_size
        config: branching, shrink factor, base size and seed
        trace: optional trace updated in place
    """

    def __init__(self,
                 split: Callable[[OptimizationProblem[T]], Sequence[OptimizationProblem[T]]],
                 decide: Callable[[OptimizationProblem[T], Any], bool],
                 solve_base: Callable[[OptimizationProblem[T]], Any],
                 config: Optional[OptimizerConfig] = None,
                 trace: Optional[OptimizationTrace] = None):
        self.split = split
        self.decide = decide
        self.solve_base = solve_base
        self.config = config or OptimizerConfig()
        self.trace = trace if trace is not None else OptimizationTrace()
        self._rng = random.Random(self.config.seed)

    def optimize(self, problem: OptimizationProblem[T]) -> Any:
        return self._solve(problem, 0)

    def _solve(self, problem: OptimizationProblem[T], depth: int) -> Any:
        self.trace.enter(depth, problem.size)
        if problem.size <= self.config.base_size:
            self.trace.base_solves += 1
            return self.solve_base(problem)

        subproblems = list(self.split(problem))
        limit = self.config.size_limit(problem.size)
        for sub in subproblems:
            if sub.size >= problem.size or sub.size > limit:
                raise NonShrinkingSplitError(
                    f"subproblem of size {sub.size} from size {problem.size} "
                    f"(allowed at most {min(limit, problem.size - 1)})"
                )
        logger.debug("depth %d: size %d split into %s", depth, problem.size,
                     [sub.size for sub in subproblems])

        self._rng.shuffle(subproblems)
        best: Any = BOTTOM
        for sub in subproblems:
            self.trace.decide_calls += 1
            if not self.decide(sub, best):
                continue
            value = self._solve(sub, depth + 1)
            if value is BOTTOM or not value > best:
                raise InconsistentDecisionError(
                    f"decider reported an improvement over {best!r} but the subproblem "
                    f"of size {sub.size} evaluated to {value!r}"
                )
            best = value
        return best


def optimize(problem: OptimizationProblem[T],
             split: Callable[[OptimizationProblem[T]], Sequence[OptimizationProblem[T]]],
             decide: Callable[[OptimizationProblem[T], Any], bool],
             solve_base: Callable[[OptimizationProblem[T]], Any],
             config: Optional[OptimizerConfig] = None,
             trace: Optional[OptimizationTrace] = None) -> Any:
    """Function form of ChanOptimizer(...).optimize(problem)."""
    return ChanOptimizer(split, decide, solve_base, config, trace).optimize(problem)
