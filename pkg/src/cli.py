"""
Command-line surface: one subcommand per operation.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 size-guard refusal.
Failures print a JSON error document on standard error.
"""

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

from src.config import DEFAULT_SETTINGS
from src.data_classes import PQParams, format_scalar, to_scalar
from src.errors import InstanceFormatError, PQStabError, SizeGuardError
from src.geometry import count_pair_intersections
from src.instance_io import (
    InstanceFile,
    InstanceKind,
    ResultFile,
    certificate_document,
    dumps,
    load_instance,
    load_result,
    save_instance,
    save_result,
)
from src.oracles import (
    Scheme,
    StabBound,
    gen_planar_instance,
    gen_poset_instance,
    gen_reduction_instance,
    gen_tree_instance,
    min_stab_bruteforce,
    verify_stabbing,
)
from src.ordered_helly import reduce_pq_generic, stab_generic
from src.planar_hd import StabMode, decide_xstar_right, find_right_witness, stab_planar
from src.sweepline import count_interval_pairs, count_polygon_pairs_sweep, max_stab_point

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SIZE_GUARD = 3


def _emit(document: dict, out: str = "-"):
    if out == "-":
        sys.stdout.write(dumps(document))
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(dumps(document))


def _require_kind(instance: InstanceFile, *kinds: InstanceKind):
    if instance.kind not in kinds:
        names = ", ".join(k.value for k in kinds)
        raise InstanceFormatError(f"expected a {names} instance, got {instance.kind.value}",
                                  context="kind")


def _require_pq(instance: InstanceFile) -> tuple[int, int]:
    if instance.p is None:
        raise InstanceFormatError("the instance carries no (p, q)", context="p")
    return instance.p, instance.q


def cmd_stab(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.PLANAR, InstanceKind.TREE, InstanceKind.POSET)
    p, q = _require_pq(instance)
    family = instance.family()

    started = time.perf_counter()
    if instance.kind is InstanceKind.PLANAR:
        result = stab_planar(family, PQParams(p, q), args.mode, args.seed)
    else:
        result = stab_generic(family, instance.system, p, q)
    elapsed = time.perf_counter() - started

    if args.verify:
        result.certificate = verify_stabbing(family, result.points, instance.system)
    save_result(args.out, ResultFile.from_result(instance.kind, result, {"seconds": elapsed}))
    if result.certificate is not None and not result.certificate.verdict:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = load_instance(args.instance)
    result = load_result(args.result)
    if result.instance_kind is not instance.kind:
        raise InstanceFormatError(
            f"result is for a {result.instance_kind.value} instance, "
            f"instance is {instance.kind.value}", context="instance_kind")
    certificate = verify_stabbing(instance.family(), result.points, instance.system)
    document = certificate_document(certificate)
    document["points"] = len(result.points)
    document["budget"] = result.budget
    _emit(document)
    return EXIT_OK if certificate.verdict else EXIT_VERIFY_FAILED


def cmd_gen(args) -> int:
    settings = DEFAULT_SETTINGS.replace(pq_check_limit=args.pq_check_limit)
    provenance = {"generator": args.kind, "scheme": args.scheme, "seed": args.seed}
    if args.kind == "planar":
        family = gen_planar_instance(args.n, args.p, args.q, args.seed, args.scheme, settings)
        instance = InstanceFile(InstanceKind.PLANAR, args.p, args.q,
                                polygons=list(family.sets), provenance=provenance)
    elif args.kind == "tree":
        tree, family = gen_tree_instance(args.n, args.p, args.q, args.seed,
                                         tree_size=args.tree_size, settings=settings)
        instance = InstanceFile(InstanceKind.TREE, args.p, args.q, tree=tree,
                                subtrees=list(family.sets), provenance=provenance)
    else:
        poset, family = gen_poset_instance(args.n, args.p, args.q, args.seed,
                                           width=args.width, settings=settings)
        instance = InstanceFile(InstanceKind.POSET, args.p, args.q, poset=poset,
                                ideals=list(family.sets), provenance=provenance)
    save_instance(instance, args.out)
    return EXIT_OK


def cmd_decide_right(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.PLANAR)
    family = instance.family()
    decision = decide_xstar_right(family, args.x)
    document = {"x": format_scalar(args.x), "decision": decision}
    if decision:
        witness = find_right_witness(family, args.x)
        document["witness"] = list(witness) if witness is not None else None
    _emit(document, args.out)
    return EXIT_OK


def cmd_max_stab(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.PLANAR)
    point, count = max_stab_point(instance.polygons)
    _emit({"point": [format_scalar(point.x), format_scalar(point.y)], "count": count}, args.out)
    return EXIT_OK


def cmd_count_pairs(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.PLANAR)
    if args.method == "sweep":
        counted = count_polygon_pairs_sweep(instance.polygons)
        document = {"method": "sweep", "count": counted.count, "exact": counted.exact}
    else:
        document = {"method": "quadratic", "count": count_pair_intersections(instance.polygons)}
    _emit(document, args.out)
    return EXIT_OK


def cmd_count_intervals(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.INTERVALS)
    _emit({"count": count_interval_pairs(instance.intervals)}, args.out)
    return EXIT_OK


def cmd_reduce_pq(args) -> int:
    p, q = reduce_pq_generic(args.h, args.p, args.q)
    print(f"{p} {q}")
    return EXIT_OK


def cmd_reduction_instance(args) -> int:
    try:
        values = [to_scalar(v) for v in args.array.split(",") if v.strip()]
    except ValueError as exc:
        raise InstanceFormatError(str(exc), context="--array") from exc
    if not values:
        raise InstanceFormatError("the array is empty", context="--array")
    family, line = gen_reduction_instance(values)
    instance = InstanceFile(
        InstanceKind.PLANAR,
        polygons=list(family.sets),
        provenance={"generator": "reduction", "array": [format_scalar(v) for v in values],
                    "line": format_scalar(line.x0)},
    )
    save_instance(instance, args.out)
    return EXIT_OK


def cmd_min_stab(args) -> int:
    instance = load_instance(args.instance)
    _require_kind(instance, InstanceKind.PLANAR, InstanceKind.TREE, InstanceKind.POSET)
    settings = DEFAULT_SETTINGS.replace(min_stab_limit=args.min_stab_limit)
    minimum = min_stab_bruteforce(instance.family(), args.budget, instance.system, settings)
    value = minimum.value if isinstance(minimum, StabBound) else minimum
    _emit({"budget": args.budget, "minimum": value}, args.out)
    return EXIT_OK


def _rational(text: str):
    try:
        return to_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--log-level',
        default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level on standard error (default: WARNING)'
    )
    common.add_argument(
        '-v', '--verbose',
        action='store_true',
        help='Shortcut for --log-level DEBUG'
    )

    parser = argparse.ArgumentParser(
        prog='pqstab',
        description='Stab families with the (p, q)-property and certify the results',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Generate a certified planar instance and stab it
  %(prog)s gen planar --n 25 --p 7 --q 5 --scheme cluster --seed 42 --out inst.json
  %(prog)s stab inst.json --verify --out result.json
  %(prog)s verify inst.json result.json

  # Reduce (p, q) for Helly number 3
  %(prog)s reduce-pq --h 3 --p 4 --q 4

  # Element distinctness as a right-intersection question
  %(prog)s reduction-instance --array "1,0,0" | %(prog)s decide-right - --x 0
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    stab = sub.add_parser('stab', parents=[common], help='Stab an instance within p - q + 1')
    stab.add_argument('instance', help='Instance file ("-" for standard input)')
    stab.add_argument('--mode', choices=[m.value for m in StabMode],
                      default=StabMode.BRUTEFORCE.value,
                      help='Pivot computation for planar instances (default: bruteforce)')
    stab.add_argument('--seed', type=int, default=0, help='Seed of the randomized pivots')
    stab.add_argument('--verify', action='store_true', help='Attach a stabbing certificate')
    stab.add_argument('--out', default='-', help='Result file (default: standard output)')
    stab.set_defaults(handler=cmd_stab)

    verify = sub.add_parser('verify', parents=[common], help='Check a result against an instance')
    verify.add_argument('instance', help='Instance file')
    verify.add_argument('result', help='Result file')
    verify.set_defaults(handler=cmd_verify)

    gen = sub.add_parser('gen', parents=[common], help='Generate a certified instance')
    gen.add_argument('kind', choices=['planar', 'tree', 'poset'])
    gen.add_argument('--n', type=int, required=True, help='Number of sets')
    gen.add_argument('--p', type=int, required=True)
    gen.add_argument('--q', type=int, required=True)
    gen.add_argument('--scheme', choices=[s.value for s in Scheme], default=Scheme.CLUSTER.value,
                     help='Planted structure for planar instances (default: cluster)')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--tree-size', type=int, default=20, help='Vertices of the random tree')
    gen.add_argument('--width', type=int, default=3, help='Chains of the random poset')
    gen.add_argument('--pq-check-limit', type=int, default=DEFAULT_SETTINGS.pq_check_limit,
                     help='Search-node guard of the (p, q)-property certification')
    gen.add_argument('--out', default='-')
    gen.set_defaults(handler=cmd_gen)

    decide = sub.add_parser('decide-right', parents=[common],
                            help='Does some pair intersect strictly right of x = X?')
    decide.add_argument('instance')
    decide.add_argument('--x', type=_rational, required=True, help='Abscissa, e.g. 0 or 3/4')
    decide.add_argument('--out', default='-')
    decide.set_defaults(handler=cmd_decide_right)

    max_stab = sub.add_parser('max-stab', parents=[common],
                              help='Point contained in the most polygons (sweep)')
    max_stab.add_argument('instance')
    max_stab.add_argument('--out', default='-')
    max_stab.set_defaults(handler=cmd_max_stab)

    pairs = sub.add_parser('count-pairs', parents=[common], help='Count intersecting pairs')
    pairs.add_argument('instance')
    pairs.add_argument('--method', choices=['quadratic', 'sweep'], default='quadratic')
    pairs.add_argument('--out', default='-')
    pairs.set_defaults(handler=cmd_count_pairs)

    intervals = sub.add_parser('count-intervals', parents=[common],
                               help='Count intersecting pairs of closed intervals')
    intervals.add_argument('instance', help='Intervals file')
    intervals.add_argument('--out', default='-')
    intervals.set_defaults(handler=cmd_count_intervals)

    reduce = sub.add_parser('reduce-pq', parents=[common], help='Reduce an admissible (p, q)')
    reduce.add_argument('--h', type=int, default=3, help='Helly number (default: 3)')
    reduce.add_argument('--p', type=int, required=True)
    reduce.add_argument('--q', type=int, required=True)
    reduce.set_defaults(handler=cmd_reduce_pq)

    reduction = sub.add_parser('reduction-instance', parents=[common],
                               help='Triangles encoding an element-distinctness array')
    reduction.add_argument('--array', required=True, help='Comma-separated values, e.g. "1,0,0"')
    reduction.add_argument('--out', default='-')
    reduction.set_defaults(handler=cmd_reduction_instance)

    min_stab = sub.add_parser('min-stab', parents=[common],
                              help='Exhaustive minimum stabbing number (small instances)')
    min_stab.add_argument('instance')
    min_stab.add_argument('--budget', type=int, required=True, help='Largest size to try')
    min_stab.add_argument('--min-stab-limit', type=int, default=DEFAULT_SETTINGS.min_stab_limit,
                          help='Combination guard of the search')
    min_stab.add_argument('--out', default='-')
    min_stab.set_defaults(handler=cmd_min_stab)

    return parser


def _error_exit(exc: BaseException, code: int) -> int:
    error = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, SizeGuardError):
        error["guard"] = exc.guard
    print(json.dumps({"error": error}), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, args.log_level)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)

    try:
        return args.handler(args)
    except SizeGuardError as exc:
        return _error_exit(exc, EXIT_SIZE_GUARD)
    except (PQStabError, ValueError, OSError) as exc:
        return _error_exit(exc, EXIT_INPUT_ERROR)
