import random
from itertools import combinations

import networkx as nx
import pytest

from src.discrete import (
    Poset,
    PosetSystem,
    Tree,
    TreeSystem,
    poset_shelling,
    poset_system,
    poset_width,
    random_chain_partition_poset,
    random_ideal,
    random_poset,
    random_subtree,
    random_tree,
    tree_shelling,
    tree_system,
)
from src.errors import PreconditionError
from src.oracles import gen_poset_instance, gen_tree_instance, max_antichain_bruteforce, verify_stabbing
from src.ordered_helly import stab_generic


@pytest.fixture
def path():
    """The path 0-1-2."""
    return Tree.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def chain():
    """The chain 0 < 1 < 2."""
    return Poset.from_relations(3, [(0, 1), (1, 2)])


def test_tree_validation():
    with pytest.raises(ValueError):
        Tree.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        Tree.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        Tree.from_edges(2, [(0, 5)])
    assert Tree.from_edges(1, []).n == 1


def test_subtrees(path):
    assert path.is_subtree({0, 1})
    assert not path.is_subtree({0, 2})
    assert not path.is_subtree(set())
    assert not path.is_subtree({3})


def test_tree_system_rejects_disconnected_sets(path):
    with pytest.raises(PreconditionError) as info:
        TreeSystem(path).family([{1}, {0, 2}])
    assert info.value.set_index == 1


def test_tree_shelling():
    star = Tree.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert tree_shelling(star).sequence == (1, 2, 3, 0, 4)
    five = Tree.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert tree_shelling(five).sequence == (0, 1, 2, 3, 4)


def test_tree_system_order(path):
    system = tree_system(path)
    assert system.h == 2
    assert system.intersect_upto_h([frozenset({0, 1})]) == 1
    assert system.intersect_upto_h([frozenset({0, 1}), frozenset({1, 2})]) == 1
    assert system.intersect_upto_h([frozenset({0}), frozenset({2})]) is None
    assert system.order_leq(2, 0)
    assert not system.order_leq(0, 2)


def test_poset_closure_and_cycles(chain):
    assert chain.less(0, 2)
    assert chain.leq(1, 1)
    assert not chain.less(2, 0)
    assert chain.matrix[0] == (True, True, True)
    with pytest.raises(ValueError):
        Poset.from_relations(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Poset.from_relations(2, [(0, 2)])


def test_ideals(chain):
    assert chain.is_ideal({0, 1})
    assert not chain.is_ideal({1})
    assert chain.down_closure([2]) == frozenset({0, 1, 2})
    with pytest.raises(PreconditionError) as info:
        PosetSystem(chain).family([{0}, {2}])
    assert info.value.set_index == 1


def test_poset_shelling_removes_maximal_elements(chain):
    assert poset_shelling(chain).sequence == (2, 1, 0)
    assert PosetSystem(chain).intersect_upto_h([frozenset({0, 1})]) == 0


@pytest.mark.parametrize("poset, width", [
    (Poset.from_relations(3, [(0, 1), (1, 2)]), 1),
    (Poset.from_relations(4, []), 4),
    (random_chain_partition_poset(2, 3), 2),
    (random_chain_partition_poset(4, 2), 4),
    (Poset.from_relations(4, [(0, 2), (1, 2), (0, 3), (1, 3)]), 2),
])
def test_poset_width(poset, width):
    assert poset_width(poset) == width
    assert max_antichain_bruteforce(poset) == width


@pytest.mark.parametrize("seed", range(30))
def test_width_matches_bruteforce_antichain(seed):
    rng = random.Random(seed)
    poset = random_poset(rng.randint(1, 12), rng.random(), rng)
    assert poset_width(poset) == max_antichain_bruteforce(poset)


def test_chain_helly_number_is_clamped(chain):
    system = poset_system(chain)
    assert system.width == 1
    assert system.clamped
    assert system.h == 2
    wide = PosetSystem(random_chain_partition_poset(3, 2))
    assert not wide.clamped
    assert wide.h == 3


@pytest.mark.parametrize("seed", range(10))
def test_random_generators_respect_structure(seed):
    rng = random.Random(seed)
    tree = random_tree(15, rng)
    for _ in range(10):
        assert tree.is_subtree(random_subtree(tree, rng))
    poset = random_poset(10, 0.3, rng)
    for _ in range(10):
        assert poset.is_ideal(random_ideal(poset, rng))
    assert 4 in random_ideal(poset, rng, containing=4)


@pytest.mark.parametrize("seed", range(20))
def test_pairwise_intersecting_subtrees_share_a_vertex(seed):
    rng = random.Random(seed)
    tree = random_tree(rng.randint(2, 8), rng)
    system = TreeSystem(tree)
    subtrees = [random_subtree(tree, rng) for _ in range(rng.randint(2, 5))]
    if not all(a & b for a, b in combinations(subtrees, 2)):
        pytest.skip("sampled subtrees are not pairwise intersecting")
    family = system.family(subtrees)
    result = stab_generic(family, system, 2, 2)
    assert len(result.points) == 1
    assert result.complete
    assert frozenset.intersection(*subtrees)


@pytest.mark.parametrize("seed", range(10))
def test_generated_tree_instances_are_stabbed(seed):
    tree, family = gen_tree_instance(12, 4, 2, seed)
    system = TreeSystem(tree)
    result = stab_generic(family, system, 4, 2)
    assert len(result.points) <= 3
    assert verify_stabbing(family, result.points, system).verdict


@pytest.mark.parametrize("seed", range(10))
def test_generated_poset_instances_are_stabbed(seed):
    poset, family = gen_poset_instance(12, 5, 4, seed, width=3)
    system = PosetSystem(poset)
    result = stab_generic(family, system, 5, 4)
    assert len(result.points) <= 2
    assert verify_stabbing(family, result.points, system).verdict


@pytest.mark.parametrize("seed", range(10))
def test_tree_shelling_keeps_the_remainder_connected(seed):
    tree = random_tree(30, random.Random(seed))
    sequence = tree_shelling(tree).sequence
    assert sorted(sequence) == list(range(30))
    for i in range(len(sequence)):
        assert tree.is_subtree(sequence[i:])


@pytest.mark.parametrize("seed", range(10))
def test_poset_shelling_removes_a_maximal_element_each_step(seed):
    poset = random_poset(20, 0.3, random.Random(seed))
    sequence = poset_shelling(poset).sequence
    assert sorted(sequence) == list(range(20))
    for i, x in enumerate(sequence):
        assert not any(poset.less(x, y) for y in sequence[i + 1:])


def greedy_top_stab(system: TreeSystem, subtrees) -> list[int]:
    """Repeatedly stab the subtree whose top vertex leaves the shelling first."""
    points = []
    remaining = list(subtrees)
    while remaining:
        tops = [system.shelling.minimum(s) for s in remaining]
        point = min(tops, key=system.shelling.position.__getitem__)
        points.append(point)
        remaining = [s for s in remaining if point not in s]
    return points


@pytest.mark.parametrize("seed", range(100))
def test_tree_pivots_follow_the_greedy_top_order(seed):
    tree, family = gen_tree_instance(12, 4, 2, seed)
    system = TreeSystem(tree)
    result = stab_generic(family, system, 4, 2)
    greedy = greedy_top_stab(system, family.sets)
    pivots = len(result.trail)
    assert result.points[:pivots] == greedy[:pivots]
    assert len(greedy) <= len(result.points) <= result.budget


def all_subtrees(tree: Tree) -> list[frozenset]:
    return [frozenset(s) for size in range(1, tree.n + 1)
            for s in combinations(range(tree.n), size) if tree.is_subtree(s)]


def trees_up_to(order: int):
    yield Tree.from_edges(1, [])
    for n in range(2, order + 1):
        for graph in nx.nonisomorphic_trees(n):
            yield Tree.from_edges(n, graph.edges())


def pairwise_meeting(sets) -> bool:
    return all(a & b for a, b in combinations(sets, 2))


def test_pairwise_meeting_subtree_families_share_a_vertex():
    for tree in trees_up_to(5):
        system = TreeSystem(tree)
        subtrees = all_subtrees(tree)
        for size in range(2, 6):
            for sets in combinations(subtrees, size):
                if pairwise_meeting(sets):
                    assert system.intersect_all(sets) is not None


@pytest.mark.slow
def test_pairwise_meeting_subtree_triples_share_a_vertex():
    # subtrees are closed under intersection, so triples decide every larger family
    for tree in trees_up_to(8):
        system = TreeSystem(tree)
        subtrees = all_subtrees(tree)
        for sets in combinations(subtrees, 3):
            if pairwise_meeting(sets):
                assert system.intersect_all(sets) is not None
