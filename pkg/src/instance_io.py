"""
Reading and writing instance and result documents.

Both are JSON objects carrying "format_version": 1. Rationals are written as strings
("3/4", or "2" for integers) and read back exactly; integers, decimal strings and
"num/den" strings are all accepted on input. The path "-" means standard input or output.
"""

import json
import logging
import sys
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Optional

from src.data_classes import (
    Certificate,
    CertificateKind,
    ConvexPolygon,
    Family,
    Interval,
    Point2,
    StabbingResult,
    format_scalar,
    to_scalar,
)
from src.discrete import Poset, PosetSystem, Tree, TreeSystem
from src.errors import InstanceFormatError, PreconditionError
from src.ordered_helly import HellySystem
from src.planar_hd import PLANAR, planar_family

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class InstanceKind(str, Enum):
    PLANAR = "planar"
    TREE = "tree"
    POSET = "poset"
    INTERVALS = "intervals"


@dataclass
class InstanceFile:
    """A loaded instance: the sets of one kind, the promised (p, q) and where it came from."""
    kind: InstanceKind
    p: Optional[int] = None
    q: Optional[int] = None
    polygons: list[ConvexPolygon] = field(default_factory=list)
    tree: Optional[Tree] = None
    subtrees: list[frozenset[int]] = field(default_factory=list)
    poset: Optional[Poset] = None
    ideals: list[frozenset[int]] = field(default_factory=list)
    intervals: list[Interval] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @cached_property
    def system(self) -> HellySystem:
        if self.kind is InstanceKind.PLANAR:
            return PLANAR
        if self.kind is InstanceKind.TREE:
            return TreeSystem(self.tree)
        if self.kind is InstanceKind.POSET:
            return PosetSystem(self.poset)
        raise PreconditionError("an interval list is not a set system")

    def family(self) -> Family:
        if self.kind is InstanceKind.PLANAR:
            return planar_family(self.polygons)
        if self.kind is InstanceKind.TREE:
            return Family.of(self.subtrees)
        if self.kind is InstanceKind.POSET:
            return Family.of(self.ideals)
        raise PreconditionError("an interval list is not a set system")

    def __len__(self):
        if self.kind is InstanceKind.PLANAR:
            return len(self.polygons)
        if self.kind is InstanceKind.TREE:
            return len(self.subtrees)
        if self.kind is InstanceKind.POSET:
            return len(self.ideals)
        return len(self.intervals)

    def __str__(self):
        pq = f", p={self.p}, q={self.q}" if self.p is not None else ""
        return f"InstanceFile({self.kind.value}, {len(self)} sets{pq})"


@dataclass
class ResultFile:
    """A stabbing result as stored on disk, with optional certificate and timing."""
    instance_kind: InstanceKind
    points: list[Any]
    coverage: list[list[int]]
    budget: int
    uncovered: list[int] = field(default_factory=list)
    trail: list[tuple[int, int]] = field(default_factory=list)
    statistics: dict[str, int] = field(default_factory=dict)
    certificate: Optional[Certificate] = None
    timing: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_result(cls, kind: InstanceKind, result: StabbingResult,
                    timing: Optional[dict[str, float]] = None) -> "ResultFile":
        return cls(
            instance_kind=kind,
            points=list(result.points),
            coverage=[list(row) for row in result.coverage],
            budget=result.budget,
            uncovered=list(result.uncovered),
            trail=list(result.trail),
            statistics=dict(result.statistics),
            certificate=result.certificate,
            timing=dict(timing or {}),
        )


def _fail(message: str, path: str):
    raise InstanceFormatError(message, context=path)


def _expect(value: Any, kind: type | tuple[type, ...], path: str) -> Any:
    if isinstance(value, bool) or not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else " or ".join(k.__name__ for k in kind)
        _fail(f"expected {names}, got {type(value).__name__}", path)
    return value


def _scalar(value: Any, path: str):
    _expect(value, (int, float, str), path)
    try:
        return to_scalar(value)
    except ValueError as exc:
        _fail(str(exc), path)


def _point(value: Any, path: str) -> Point2:
    _expect(value, list, path)
    if len(value) != 2:
        _fail(f"a point needs 2 coordinates, got {len(value)}", path)
    return Point2(_scalar(value[0], f"{path}[0]"), _scalar(value[1], f"{path}[1]"))


def _int(value: Any, path: str) -> int:
    return _expect(value, int, path)


def _int_list(value: Any, path: str) -> list[int]:
    _expect(value, list, path)
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _pairs(value: Any, path: str) -> list[tuple[int, int]]:
    _expect(value, list, path)
    pairs = []
    for i, pair in enumerate(value):
        items = _int_list(pair, f"{path}[{i}]")
        if len(items) != 2:
            _fail(f"expected a pair, got {len(items)} items", f"{path}[{i}]")
        pairs.append((items[0], items[1]))
    return pairs


def _scalar_text(value) -> str:
    return format_scalar(value)


def _point_json(point: Point2) -> list[str]:
    return [_scalar_text(point.x), _scalar_text(point.y)]


def _parse_json(text: str, source: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(exc.msg, context=f"{source}:{exc.lineno}:{exc.colno}") from exc
    _expect(document, dict, source)
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        _fail(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}",
              "format_version")
    return document


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write_text(text: str, path: str):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


class InstanceJSON:
    """Read and write instance documents."""

    @staticmethod
    def read(path: str) -> InstanceFile:
        """Load and validate an instance document; "-" reads standard input."""
        return InstanceJSON.parse(_read_text(path), source=path)

    @staticmethod
    def parse(text: str, source: str = "<string>") -> InstanceFile:
        document = _parse_json(text, source)
        try:
            kind = InstanceKind(document.get("kind"))
        except ValueError:
            _fail(f"unknown kind {document.get('kind')!r}", "kind")

        instance = InstanceFile(kind=kind)
        if "p" in document or "q" in document:
            instance.p = _int(document.get("p"), "p")
            instance.q = _int(document.get("q"), "q")
            if not instance.p >= instance.q >= 1:
                _fail(f"need p >= q >= 1, got ({instance.p}, {instance.q})", "p")
        provenance = document.get("provenance", {})
        instance.provenance = _expect(provenance, dict, "provenance")

        if kind is InstanceKind.PLANAR:
            InstanceJSON._parse_polygons(document, instance)
        elif kind is InstanceKind.TREE:
            InstanceJSON._parse_tree(document, instance)
        elif kind is InstanceKind.POSET:
            InstanceJSON._parse_poset(document, instance)
        else:
            raw = _expect(document.get("intervals"), list, "intervals")
            for i, item in enumerate(raw):
                path = f"intervals[{i}]"
                _expect(item, list, path)
                if len(item) != 2:
                    _fail("an interval needs 2 endpoints", path)
                lo, hi = _scalar(item[0], f"{path}[0]"), _scalar(item[1], f"{path}[1]")
                if lo > hi:
                    _fail(f"empty interval [{lo}, {hi}]", path)
                instance.intervals.append(Interval(lo, hi))
        return instance

    @staticmethod
    def _parse_polygons(document: dict, instance: InstanceFile):
        raw = _expect(document.get("polygons"), list, "polygons")
        for i, item in enumerate(raw):
            path = f"polygons[{i}]"
            _expect(item, list, path)
            vertices = [_point(v, f"{path}[{j}]") for j, v in enumerate(item)]
            try:
                polygon, clockwise = ConvexPolygon.from_vertices(vertices)
            except ValueError as exc:
                _fail(str(exc), path)
            if clockwise:
                note = f"{path}: clockwise winding reversed"
                logger.warning(note)
                instance.warnings.append(note)
            instance.polygons.append(polygon)

    @staticmethod
    def _parse_tree(document: dict, instance: InstanceFile):
        raw = _expect(document.get("tree"), dict, "tree")
        n = _int(raw.get("n"), "tree.n")
        edges = _pairs(raw.get("edges", []), "tree.edges")
        try:
            instance.tree = Tree.from_edges(n, edges)
        except ValueError as exc:
            _fail(str(exc), "tree")
        subtrees = _expect(document.get("subtrees"), list, "subtrees")
        sets = [_int_list(s, f"subtrees[{i}]") for i, s in enumerate(subtrees)]
        try:
            instance.subtrees = list(TreeSystem(instance.tree).family(sets).sets)
        except PreconditionError as exc:
            _fail(str(exc), f"subtrees[{exc.set_index}]")

    @staticmethod
    def _parse_poset(document: dict, instance: InstanceFile):
        raw = _expect(document.get("poset"), dict, "poset")
        n = _int(raw.get("n"), "poset.n")
        relations = _pairs(raw.get("relations", []), "poset.relations")
        try:
            instance.poset = Poset.from_relations(n, relations)
        except ValueError as exc:
            _fail(str(exc), "poset")
        ideals = _expect(document.get("ideals"), list, "ideals")
        sets = [_int_list(s, f"ideals[{i}]") for i, s in enumerate(ideals)]
        try:
            instance.ideals = list(PosetSystem(instance.poset).family(sets).sets)
        except PreconditionError as exc:
            _fail(str(exc), f"ideals[{exc.set_index}]")

    @staticmethod
    def to_document(instance: InstanceFile) -> dict:
        document: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": instance.kind.value}
        if instance.p is not None:
            document["p"] = instance.p
            document["q"] = instance.q
        if instance.kind is InstanceKind.PLANAR:
            document["polygons"] = [[_point_json(v) for v in polygon.vertices]
                                    for polygon in instance.polygons]
        elif instance.kind is InstanceKind.TREE:
            document["tree"] = {"n": instance.tree.n,
                                "edges": [list(e) for e in instance.tree.edges]}
            document["subtrees"] = [sorted(s) for s in instance.subtrees]
        elif instance.kind is InstanceKind.POSET:
            document["poset"] = {"n": instance.poset.n,
                                 "relations": [list(r) for r in sorted(instance.poset.relations)]}
            document["ideals"] = [sorted(s) for s in instance.ideals]
        else:
            document["intervals"] = [[_scalar_text(iv.lo), _scalar_text(iv.hi)]
                                     for iv in instance.intervals]
        if instance.provenance:
            document["provenance"] = instance.provenance
        return document

    @staticmethod
    def write(instance: InstanceFile, path: str):
        """Write an instance document; "-" writes standard output."""
        _write_text(dumps(InstanceJSON.to_document(instance)), path)


def certificate_document(certificate: Certificate) -> dict:
    return {
        "kind": certificate.kind.value,
        "verdict": certificate.verdict,
        "witness": list(certificate.witness),
        "detail": certificate.detail,
    }


def _parse_certificate(raw: Any, path: str) -> Certificate:
    _expect(raw, dict, path)
    try:
        kind = CertificateKind(raw.get("kind"))
    except ValueError:
        _fail(f"unknown certificate kind {raw.get('kind')!r}", f"{path}.kind")
    verdict = raw.get("verdict")
    if not isinstance(verdict, bool):
        _fail(f"expected bool, got {type(verdict).__name__}", f"{path}.verdict")
    witness = tuple(_int_list(raw.get("witness", []), f"{path}.witness"))
    detail = _expect(raw.get("detail", ""), str, f"{path}.detail")
    try:
        return Certificate(kind, verdict, witness, detail)
    except ValueError as exc:
        _fail(str(exc), path)


class ResultJSON:
    """Read and write result documents."""

    @staticmethod
    def read(path: str) -> ResultFile:
        return ResultJSON.parse(_read_text(path), source=path)

    @staticmethod
    def parse(text: str, source: str = "<string>") -> ResultFile:
        document = _parse_json(text, source)
        if document.get("kind") != "result":
            _fail(f"expected kind 'result', got {document.get('kind')!r}", "kind")
        try:
            kind = InstanceKind(document.get("instance_kind"))
        except ValueError:
            _fail(f"unknown instance_kind {document.get('instance_kind')!r}", "instance_kind")

        raw_points = _expect(document.get("points"), list, "points")
        if kind is InstanceKind.PLANAR:
            points = [_point(v, f"points[{i}]") for i, v in enumerate(raw_points)]
        else:
            points = [_int(v, f"points[{i}]") for i, v in enumerate(raw_points)]
        coverage_raw = _expect(document.get("coverage", []), list, "coverage")
        coverage = [_int_list(row, f"coverage[{i}]") for i, row in enumerate(coverage_raw)]
        trail = _pairs(document.get("trail", []), "trail")
        statistics = _expect(document.get("statistics", {}), dict, "statistics")
        for name, value in statistics.items():
            _int(value, f"statistics.{name}")
        certificate = None
        if document.get("certificate") is not None:
            certificate = _parse_certificate(document["certificate"], "certificate")
        timing = _expect(document.get("timing", {}), dict, "timing")
        return ResultFile(
            instance_kind=kind,
            points=points,
            coverage=coverage,
            budget=_int(document.get("budget"), "budget"),
            uncovered=_int_list(document.get("uncovered", []), "uncovered"),
            trail=trail,
            statistics=dict(statistics),
            certificate=certificate,
            timing=dict(timing),
        )

    @staticmethod
    def to_document(result: ResultFile) -> dict:
        if result.instance_kind is InstanceKind.PLANAR:
            points = [_point_json(pt) for pt in result.points]
        else:
            points = list(result.points)
        document: dict[str, Any] = {
            "format_version": FORMAT_VERSION,
            "kind": "result",
            "instance_kind": result.instance_kind.value,
            "points": points,
            "coverage": result.coverage,
            "budget": result.budget,
            "uncovered": result.uncovered,
            "trail": [list(pair) for pair in result.trail],
            "statistics": result.statistics,
        }
        if result.certificate is not None:
            document["certificate"] = certificate_document(result.certificate)
        if result.timing:
            document["timing"] = result.timing
        return document

    @staticmethod
    def write(result: ResultFile, path: str):
        _write_text(dumps(ResultJSON.to_document(result)), path)


def load_instance(path: str) -> InstanceFile:
    return InstanceJSON.read(path)


def save_instance(instance: InstanceFile, path: str):
    InstanceJSON.write(instance, path)


def load_result(path: str) -> ResultFile:
    return ResultJSON.read(path)


def save_result(path: str, result: ResultFile):
    ResultJSON.write(result, path)
