"""
Ordered-Helly systems on finite structures: subtrees of a tree and ideals of a poset.

Both order their base set by a shelling sequence: x_i comes before x_j in the shelling
exactly when x_i is larger, so the minimum of a set is its latest-removed element.
"""

import heapq
import logging
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms import bipartite

from src.data_classes import Family
from src.errors import PreconditionError
from src.ordered_helly import HellySystem

logger = logging.getLogger(__name__)

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Tree:
    """A tree on vertices 0..n-1."""
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a tree needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range 0..{self.n - 1}")
        if not nx.is_tree(self.graph):
            raise ValueError("edges do not form a tree")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Tree":
        return cls(n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.graph.neighbors(v))) for v in range(self.n))

    def is_subtree(self, vertices: Iterable[int]) -> bool:
        vertices = set(vertices)
        if not vertices or not all(0 <= v < self.n for v in vertices):
            return False
        return nx.is_connected(self.graph.subgraph(vertices))


@dataclass(frozen=True)
class Poset:
    """A partial order on 0..n-1 stored as its transitively closed strict relation."""
    n: int
    relations: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a poset needs at least one element")

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Poset":
        """
        Close an arbitrary list of pairs (a, b), meaning a < b, under transitivity.

        Raises:
            ValueError: if an element is out of range or the pairs contain a cycle.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"relation ({a}, {b}) leaves the element range 0..{n - 1}")
            if a != b:
                graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            raise ValueError("relations contain a cycle")
        closure = nx.transitive_closure_dag(graph)
        return cls(n, frozenset(closure.edges()))

    def less(self, a: int, b: int) -> bool:
        return (a, b) in self.relations

    def leq(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.relations

    @cached_property
    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        """Reflexive order matrix: matrix[a][b] is a <= b."""
        return tuple(tuple(self.leq(a, b) for b in range(self.n)) for a in range(self.n))

    @cached_property
    def below(self) -> tuple[frozenset[int], ...]:
        """Strict predecessors of every element."""
        down: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.relations:
            down[b].add(a)
        return tuple(frozenset(d) for d in down)

    def down_closure(self, elements: Iterable[int]) -> VertexSet:
        result: set[int] = set()
        for x in elements:
            result.add(x)
            result.update(self.below[x])
        return frozenset(result)

    def is_ideal(self, elements: Iterable[int]) -> bool:
        elements = set(elements)
        if not elements or not all(0 <= x < self.n for x in elements):
            return False
        return all(self.below[x] <= elements for x in elements)


@dataclass(frozen=True)
class ShellingOrder:
    """A shelling sequence; x_i precedes-or-equals x_j in the system order iff i >= j."""
    sequence: tuple[int, ...]

    @cached_property
    def position(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.sequence)}

    def leq(self, a: int, b: int) -> bool:
        return self.position[a] >= self.position[b]

    def minimum(self, elements: Iterable[int]) -> int:
        """The latest-removed element of a non-empty set."""
        return max(elements, key=self.position.__getitem__)


def tree_shelling(tree: Tree) -> ShellingOrder:
    """Remove the smallest-index leaf until the tree is gone."""
    degree = [len(tree.adjacency[v]) for v in range(tree.n)]
    removed = [False] * tree.n
    queued = [False] * tree.n
    heap = []
    for v in range(tree.n):
        if degree[v] <= 1:
            heap.append(v)
            queued[v] = True
    heapq.heapify(heap)

    sequence = []
    while heap:
        v = heapq.heappop(heap)
        removed[v] = True
        sequence.append(v)
        for u in tree.adjacency[v]:
            if removed[u]:
                continue
            degree[u] -= 1
            if degree[u] <= 1 and not queued[u]:
                queued[u] = True
                heapq.heappush(heap, u)
    return ShellingOrder(tuple(sequence))


def poset_shelling(poset: Poset) -> ShellingOrder:
    """Remove the smallest-index maximal element until the poset is gone."""
    above = [0] * poset.n
    for a, _ in poset.relations:
        above[a] += 1
    heap = [x for x in range(poset.n) if above[x] == 0]
    heapq.heapify(heap)

    sequence = []
    while heap:
        x = heapq.heappop(heap)
        sequence.append(x)
        for y in poset.below[x]:
            above[y] -= 1
            if above[y] == 0:
                heapq.heappush(heap, y)
    return ShellingOrder(tuple(sequence))


def poset_width(poset: Poset) -> int:
    """
    Size of a largest antichain.

    By Dilworth it equals the minimum number of chains covering the poset, which is n minus
    a maximum matching in the split graph of the strict order.
    """
    graph = nx.Graph()
    left = [("L", x) for x in range(poset.n)]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("R", x) for x in range(poset.n))
    graph.add_edges_from((("L", a), ("R", b)) for a, b in poset.relations)
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return poset.n - len(matching) // 2


class _ShellingSystem(HellySystem[VertexSet, int]):
    """Shared oracles for systems whose sets are finite vertex/element sets."""

    shelling: ShellingOrder

    def order_leq(self, a: int, b: int) -> bool:
        return self.shelling.leq(a, b)

    def intersect_upto_h(self, sets: Sequence[VertexSet]) -> Optional[int]:
        common = frozenset.intersection(*sets)
        return self.shelling.minimum(common) if common else None

    def member(self, s: VertexSet, element: int) -> bool:
        return element in s

    def complexity(self, s: VertexSet) -> int:
        return len(s)

    def meet(self, a: VertexSet, b: VertexSet) -> Optional[VertexSet]:
        common = a & b
        return common or None

    def region_min(self, region: VertexSet) -> int:
        return self.shelling.minimum(region)

    def candidates(self, sets: Sequence[VertexSet]) -> list[int]:
        return sorted(set().union(*sets)) if sets else []

    def _check(self, index: int, s: VertexSet):
        raise NotImplementedError

    def family(self, sets: Iterable[Iterable[int]]) -> Family[VertexSet]:
        """Validate the sets and wrap them as a family."""
        frozen = []
        for index, s in enumerate(sets):
            s = frozenset(s)
            self._check(index, s)
            frozen.append(s)
        return Family.of(frozen)


class TreeSystem(_ShellingSystem):
    """Subtrees of a tree; the Helly number is 2."""

    def __init__(self, tree: Tree):
        self.tree = tree
        self.shelling = tree_shelling(tree)

    @property
    def h(self) -> int:
        return 2

    def _check(self, index: int, s: VertexSet):
        if not self.tree.is_subtree(s):
            raise PreconditionError("vertex set is not a connected subtree", set_index=index)


class PosetSystem(_ShellingSystem):
    """Ideals of a poset; the Helly number is the width, raised to 2 for chains."""

    def __init__(self, poset: Poset):
        self.poset = poset
        self.shelling = poset_shelling(poset)
        self.width = poset_width(poset)
        self.clamped = self.width < 2
        if self.clamped:
            logger.debug("poset of width %d: Helly number raised to 2", self.width)

    @property
    def h(self) -> int:
        return max(2, self.width)

    def _check(self, index: int, s: VertexSet):
        if not self.poset.is_ideal(s):
            raise PreconditionError("element set is not downward closed", set_index=index)


def tree_system(tree: Tree) -> TreeSystem:
    return TreeSystem(tree)


def poset_system(poset: Poset) -> PosetSystem:
    return PosetSystem(poset)


def random_tree(n: int, rng: random.Random) -> Tree:
    """Random recursive tree with shuffled labels."""
    labels = list(range(n))
    rng.shuffle(labels)
    edges = [(labels[i], labels[rng.randrange(i)]) for i in range(1, n)]
    return Tree.from_edges(n, edges)


def random_subtree(tree: Tree, rng: random.Random, size: Optional[int] = None,
                   root: Optional[int] = None) -> VertexSet:
    """Grow a subtree from `root` (random by default) one random frontier vertex at a time."""
    if size is None:
        size = rng.randint(1, tree.n)
    if root is None:
        root = rng.randrange(tree.n)
    chosen = {root}
    frontier = set(tree.adjacency[root])
    while len(chosen) < size and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier.discard(v)
        frontier.update(u for u in tree.adjacency[v] if u not in chosen)
    return frozenset(chosen)


def random_poset(n: int, density: float, rng: random.Random) -> Poset:
    """Each pair of a random linear order is related with the given probability."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)
             if rng.random() < density]
    return Poset.from_relations(n, pairs)


def random_ideal(poset: Poset, rng: random.Random, generators: Optional[int] = None,
                 containing: Optional[int] = None) -> VertexSet:
    """Downward closure of a few random elements, optionally forced to contain one."""
    if generators is None:
        generators = rng.randint(1, max(1, poset.n // 3))
    picks = [rng.randrange(poset.n) for _ in range(generators)]
    if containing is not None:
        picks.append(containing)
    return poset.down_closure(picks)


def random_chain_partition_poset(width: int, length: int) -> Poset:
    """`width` disjoint chains of `length` elements; chain c holds c*length .. c*length+length-1."""
    pairs = [(c * length + i, c * length + i + 1)
             for c in range(width) for i in range(length - 1)]
    return Poset.from_relations(width * length, pairs)
