"""
Brute-force oracles and instance generators.

These certify inputs and outputs of the solvers on small instances: the (p, q)-property,
stabbing sets, minimum stabbing numbers and maximum antichains. Generators plant the
(p, q)-property by construction and re-certify it whenever the size guard allows.
"""

import logging
import math
import random
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional, Sequence

from src.config import DEFAULT_SETTINGS, Settings
from src.data_classes import (
    Certificate,
    CertificateKind,
    ConvexPolygon,
    Family,
    Point2,
    VerticalLine,
)
from src.discrete import (
    Poset,
    PosetSystem,
    Tree,
    TreeSystem,
    random_chain_partition_poset,
    random_ideal,
    random_poset,
    random_subtree,
    random_tree,
)
from src.errors import PreconditionError, SizeGuardError
from src.geometry import contains_point
from src.ordered_helly import HellySystem, admissible
from src.planar_hd import PLANAR, PLANAR_HELLY_NUMBER, general_position, planar_family

logger = logging.getLogger(__name__)


class StabBound(Enum):
    EXCEEDS_BUDGET = "exceeds-budget"


class Scheme(str, Enum):
    HELLY = "helly"
    CLUSTER = "cluster"
    ADVERSARIAL = "adversarial"


def check_pq_property(family: Family, p: int, q: int, system: Optional[HellySystem] = None,
                      settings: Settings = DEFAULT_SETTINGS) -> Certificate:
    """
    Decide whether every p sets of the family contain q with a common element.

    Searches for a bad p-subfamily (no q members intersect) by backtracking over index
    order. A partial choice is abandoned as soon as it holds q intersecting sets, or when
    the remaining sets cannot complete it: sets sharing a common element contribute at
    most q - 1 members to a bad subfamily.

    Raises:
        PreconditionError: if the family has fewer than p sets.
        SizeGuardError: if the search exceeds settings.pq_check_limit nodes.
    """
    system = system or PLANAR
    n = len(family)
    if q < 1 or p < q:
        raise PreconditionError(f"need p >= q >= 1, got ({p}, {q})")
    if n < p:
        raise PreconditionError(f"need at least p = {p} sets, got {n}")
    limit = settings.pq_check_limit
    sets = family.sets
    groups = _common_element_groups(family, system)
    group_count = max(groups) + 1
    # suffix[i][g]: members of group g at positions >= i
    suffix = [[0] * group_count for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1][:]
        suffix[i][groups[i]] += 1
    nodes = 0

    def completable(start: int, chosen: int, counts: list[int]) -> bool:
        room = sum(min(suffix[start][g], max(0, q - 1 - counts[g])) for g in range(group_count))
        return chosen + room >= p

    # `regions` holds (size, intersection) for every intersecting subset of the current
    # choice with fewer than q members.
    def search(start: int, chosen: list[int], regions: list[tuple[int, Any]],
               counts: list[int]) -> Optional[list[int]]:
        nonlocal nodes
        if len(chosen) == p:
            return chosen
        if not completable(start, len(chosen), counts):
            return None
        for i in range(start, n - (p - len(chosen)) + 1):
            nodes += 1
            if nodes > limit:
                raise SizeGuardError("pq_check_limit", limit)
            extended = _extend(system, regions, sets[i], q)
            if extended is None:
                continue
            next_counts = counts[:]
            next_counts[groups[i]] += 1
            found = search(i + 1, chosen + [i], regions + extended, next_counts)
            if found is not None:
                return found
        return None

    bad = search(0, [], [], [0] * group_count)
    logger.debug("(p, q) = (%d, %d) check visited %d nodes", p, q, nodes)
    if bad is None:
        return Certificate(CertificateKind.PQ_PROPERTY, True, detail=f"nodes={nodes}")
    witness = tuple(family.indices[i] for i in bad)
    return Certificate(CertificateKind.PQ_PROPERTY, False, witness,
                       detail=f"no {q} of these {p} sets intersect")


def _common_element_groups(family: Family, system: HellySystem) -> list[int]:
    """Greedy partition of the family into groups that each share one candidate element."""
    n = len(family)
    try:
        candidates = system.candidates(family.sets)
    except NotImplementedError:
        return list(range(n))
    masks = []
    for candidate in candidates:
        mask = 0
        for i, s in enumerate(family.sets):
            if system.member(s, candidate):
                mask |= 1 << i
        masks.append(mask)

    groups = [-1] * n
    uncovered = (1 << n) - 1
    group = 0
    while uncovered:
        best = max(masks, key=lambda m: (m & uncovered).bit_count(), default=0)
        members = best & uncovered
        if not members:
            break
        for i in range(n):
            if members >> i & 1:
                groups[i] = group
        uncovered &= ~members
        group += 1
    for i in range(n):
        if groups[i] < 0:
            groups[i] = group
            group += 1
    return groups


def _extend(system: HellySystem, regions: list[tuple[int, Any]], s: Any,
            q: int) -> Optional[list[tuple[int, Any]]]:
    """New intersecting subsets created by adding s, or None once q of them meet."""
    if q == 1:
        return None
    added = [(1, s)]
    for size, region in regions:
        meet = system.meet(region, s)
        if meet is None:
            continue
        if size + 1 >= q:
            return None
        added.append((size + 1, meet))
    return added


def verify_stabbing(family: Family, points: Sequence[Any],
                    system: Optional[HellySystem] = None) -> Certificate:
    """Membership scan; the witness lists the original indices of unstabbed sets."""
    system = system or PLANAR
    unstabbed = tuple(index for index, s in family
                      if not any(system.member(s, pt) for pt in points))
    if unstabbed:
        return Certificate(CertificateKind.STABBING, False, unstabbed,
                           detail=f"{len(unstabbed)} sets unstabbed")
    return Certificate(CertificateKind.STABBING, True, detail=f"{len(points)} points")


def min_stab_bruteforce(family: Family, budget: int, system: Optional[HellySystem] = None,
                        settings: Settings = DEFAULT_SETTINGS) -> int | StabBound:
    """
    Fewest candidate elements stabbing the family, searching up to `budget` elements.

    The candidates come from system.candidates: for polygons the lexmins of intersecting
    pairs plus every vertex, for discrete systems the whole base set.

    Raises:
        SizeGuardError: if the combinations to try exceed settings.min_stab_limit.
    """
    system = system or PLANAR
    n = len(family)
    if n == 0:
        return 0
    full = (1 << n) - 1
    masks = set()
    for candidate in system.candidates(family.sets):
        mask = 0
        for i, s in enumerate(family.sets):
            if system.member(s, candidate):
                mask |= 1 << i
        if mask:
            masks.add(mask)
    # Only maximal coverage patterns matter.
    maximal = [m for m in masks if not any(m != o and m | o == o for o in masks)]
    maximal.sort(key=lambda m: -bin(m).count("1"))

    limit = settings.min_stab_limit
    tried = 0
    for size in range(1, budget + 1):
        tried += math.comb(len(maximal), size)
        if tried > limit:
            raise SizeGuardError("min_stab_limit", limit, needed=tried)
        for combo in combinations(maximal, size):
            union = 0
            for m in combo:
                union |= m
            if union == full:
                return size
    return StabBound.EXCEEDS_BUDGET


def max_antichain_bruteforce(poset: Poset) -> int:
    """Size of a largest antichain by trying subsets from the largest down."""
    for size in range(poset.n, 0, -1):
        for subset in combinations(range(poset.n), size):
            if all(not poset.less(a, b) and not poset.less(b, a)
                   for a, b in combinations(subset, 2)):
                return size
    return 0


def _round(value: float, denominator: int) -> Fraction:
    return Fraction(round(value * denominator), denominator)


def random_convex_polygon(center: Point2, rng: random.Random, radius: float = 1.0,
                          vertices: Optional[int] = None,
                          denominator: int = 1000) -> ConvexPolygon:
    """
    Random convex polygon containing `center`, with 3 to 8 vertices on rational coordinates.

    Vertices sit at jittered angles, one per equal sector, at radii in [0.5, 1] * radius.
    """
    count = vertices or rng.randint(3, 8)
    while True:
        sector = 2 * math.pi / count
        offset = rng.random() * sector
        points = []
        for i in range(count):
            angle = offset + sector * i + sector * (0.35 + 0.3 * rng.random()) - sector / 2
            r = radius * (0.5 + 0.5 * rng.random())
            points.append(Point2(_round(float(center.x) + r * math.cos(angle), denominator),
                                 _round(float(center.y) + r * math.sin(angle), denominator)))
        polygon = ConvexPolygon.from_points(points)
        if polygon is not None and polygon.rank == 2 and contains_point(polygon, center):
            return polygon


def _cluster_sizes(n: int, p: int, q: int, rng: random.Random, scheme: Scheme) -> list[int]:
    """Cluster sizes: first the big cluster, then at most p - q small ones totalling <= p - q."""
    if scheme is Scheme.HELLY:
        return [n]
    if scheme is Scheme.ADVERSARIAL:
        return [n - (p - q)] + [1] * (p - q)
    small_total = rng.randint(0, min(p - q, n - q))
    sizes = []
    while small_total > 0:
        size = rng.randint(1, small_total)
        sizes.append(size)
        small_total -= size
    return [n - sum(sizes)] + sizes


def gen_planar_instance(n: int, p: int, q: int, seed: int, scheme: Scheme | str = Scheme.CLUSTER,
                        settings: Settings = DEFAULT_SETTINGS) -> Family[ConvexPolygon]:
    """
    Random polygons with the (p, q)-property planted.

    Each cluster shares a planted point. The big cluster has at least q members and the
    others hold at most p - q sets between them, so any p sets include q from the big
    cluster. Clusters sit far apart, so the adversarial scheme needs p - q + 1 points.
    Instances are re-rolled until x* is in general position.

    Raises:
        PreconditionError: if (p, q) is inadmissible or n < p.
    """
    scheme = Scheme(scheme)
    if not admissible(PLANAR_HELLY_NUMBER, p, q):
        raise PreconditionError(f"(p, q) = ({p}, {q}) is not admissible in the plane")
    if n < p:
        raise PreconditionError(f"need n >= p, got n = {n}, p = {p}")
    rng = random.Random(seed)
    denominator = settings.coordinate_denominator

    family = None
    for attempt in range(settings.general_position_attempts):
        sizes = _cluster_sizes(n, p, q, rng, scheme)
        polygons = []
        for cluster, size in enumerate(sizes):
            planted = Point2(Fraction(20 * cluster), _round(rng.uniform(-3, 3), denominator))
            for _ in range(size):
                jitter = Point2(planted.x + _round(rng.uniform(-0.3, 0.3), denominator),
                                planted.y + _round(rng.uniform(-0.3, 0.3), denominator))
                polygon = random_convex_polygon(jitter, rng, rng.uniform(1.0, 3.0),
                                                denominator=denominator)
                while not contains_point(polygon, planted):
                    polygon = random_convex_polygon(jitter, rng, rng.uniform(1.0, 3.0),
                                                    denominator=denominator)
                polygons.append(polygon)
        rng.shuffle(polygons)
        family = planar_family(polygons)
        if general_position(family):
            break
        logger.debug("instance %d not in general position, re-rolling", attempt)
    else:
        logger.warning("no general-position instance after %d attempts",
                       settings.general_position_attempts)
    assert family is not None
    _certify(family, p, q, PLANAR, settings)
    return family


def _certify(family: Family, p: int, q: int, system: HellySystem, settings: Settings):
    try:
        certificate = check_pq_property(family, p, q, system, settings)
    except SizeGuardError:
        logger.debug("(p, q)-property left uncertified: search too large")
        return
    if not certificate.verdict:
        raise AssertionError(f"generator broke the ({p}, {q})-property: {certificate}")


def gen_tree_instance(n_sets: int, p: int, q: int, seed: int, tree_size: int = 20,
                      settings: Settings = DEFAULT_SETTINGS) -> tuple[Tree, Family]:
    """Subtrees of a random tree: a big cluster through a planted vertex plus <= p - q others."""
    if not admissible(2, p, q) or n_sets < p:
        raise PreconditionError(f"bad tree instance parameters n={n_sets}, p={p}, q={q}")
    rng = random.Random(seed)
    tree = random_tree(tree_size, rng)
    planted = rng.randrange(tree_size)
    sizes = _cluster_sizes(n_sets, p, q, rng, Scheme.CLUSTER)
    subtrees = [random_subtree(tree, rng, rng.randint(1, max(1, tree_size // 3)), planted)
                for _ in range(sizes[0])]
    for size in sizes[1:]:
        root = rng.randrange(tree_size)
        subtrees.extend(random_subtree(tree, rng, rng.randint(1, 3), root) for _ in range(size))
    rng.shuffle(subtrees)
    system = TreeSystem(tree)
    family = system.family(subtrees)
    _certify(family, p, q, system, settings)
    return tree, family


def gen_poset_instance(n_sets: int, p: int, q: int, seed: int, width: int = 3,
                       length: int = 4, density: Optional[float] = None,
                       settings: Settings = DEFAULT_SETTINGS) -> tuple[Poset, Family]:
    """
    Ideals of a poset: a big cluster containing a planted element plus <= p - q others.

    With density=None the poset is `width` parallel chains; otherwise a random poset on
    width * length elements.
    """
    rng = random.Random(seed)
    if density is None:
        poset = random_chain_partition_poset(width, length)
    else:
        poset = random_poset(width * length, density, rng)
    system = PosetSystem(poset)
    if not admissible(system.h, p, q) or n_sets < p:
        raise PreconditionError(
            f"bad poset instance parameters n={n_sets}, p={p}, q={q} for h={system.h}"
        )
    planted = rng.randrange(poset.n)
    sizes = _cluster_sizes(n_sets, p, q, rng, Scheme.CLUSTER)
    ideals = [random_ideal(poset, rng, containing=planted) for _ in range(sizes[0])]
    for size in sizes[1:]:
        ideals.extend(random_ideal(poset, rng, generators=1) for _ in range(size))
    rng.shuffle(ideals)
    family = system.family(ideals)
    _certify(family, p, q, system, settings)
    return poset, family


def gen_reduction_instance(values: Sequence[Any]) -> tuple[Family[ConvexPolygon], VerticalLine]:
    """
    Triangles that meet strictly right of the y-axis exactly when two values coincide.

    Value a[k] becomes the triangle (0, n*a[k] + k), (1, 2*a[k]), (1, 2*a[k] + 1).
    """
    n = len(values)
    polygons = []
    for k, value in enumerate(values):
        a = Fraction(value)
        triangle = ConvexPolygon.from_points([
            Point2(Fraction(0), n * a + k),
            Point2(Fraction(1), 2 * a),
            Point2(Fraction(1), 2 * a + 1),
        ])
        assert triangle is not None
        polygons.append(triangle)
    return planar_family(polygons), VerticalLine(Fraction(0))


def five_cycle_rectangles() -> Family[ConvexPolygon]:
    """
    Five rectangles whose intersection graph is a 5-cycle.

    Any three contain an intersecting pair, no three share a point, so three points are
    needed although the family has the (3, 2)-property.
    """
    return planar_family([
        ConvexPolygon.box(0, 0, 6, 1),
        ConvexPolygon.box(5, 0, 6, 6),
        ConvexPolygon.box(3, 5, 6, 6),
        ConvexPolygon.box(0, 5, 4, 6),
        ConvexPolygon.box(0, 0, 1, 6),
    ])
