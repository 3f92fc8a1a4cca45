"""Command-line interface.

Exit codes: 0 success or a positive answer, 1 a definite negative answer
(or a failed reproduction), 2 usage errors, 3 a resource cap was hit, 4 an internal consistency check
failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import CapExceeded, InvariantViolation, PatternError
from .formats import (
    dumps,
    label_json,
    label_text,
    parse_pattern_list,
    parse_point,
    permutation_text,
    rows_to_csv,
    write_atomic,
)
from .geometry.linalg import RatVector, format_rational

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3, 4

_312_CLASS = {(3, 1, 2), (2, 1, 3), (1, 3, 2), (2, 3, 1)}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- symmetries

def _apply(transform: tuple, perm) -> tuple:
    """``transform`` is (reverse?, complement?); both maps are involutions and commute."""
    from .permcore import complement, reverse

    out = perm
    if transform[0]:
        out = reverse(out)
    if transform[1]:
        out = complement(out)
    return out


_SYMMETRIES = {
    "none": (False, False),
    "reverse": (True, False),
    "complement": (False, True),
    "reverse-complement": (True, True),
}


@dataclass(frozen=True)
class PermClass:
    """A permutation class: either ``Av(patterns)`` or the image of ``Av(n...1)`` under a symmetry."""

    patterns: tuple
    monotone: int | None = None
    transform: tuple = (False, False)

    @property
    def basis(self) -> tuple:
        from .permcore import decreasing

        if self.monotone is not None:
            return (_apply(self.transform, decreasing(self.monotone)),)
        return self.patterns

    def describe(self) -> str:
        if not self.basis:
            return "all permutations"
        return "Av(" + ",".join(permutation_text(p) if len(p) > 9 else "".join(map(str, p)) for p in self.basis) + ")"

    @property
    def region_is_cycle_polytope(self) -> bool:
        return not self.patterns and self.monotone is None or (
            len(self.patterns) == 1 and tuple(self.patterns[0]) in _312_CLASS
        )


def resolve_class(args) -> PermClass:
    from .permcore import Permutation, decreasing, increasing

    symmetry = getattr(args, "symmetry", "none")
    if symmetry == "inverse":
        raise UsageError(
            "the inverse symmetry does not map consecutive patterns to consecutive patterns, "
            "so feasible regions are not transported by it; use reverse or complement"
        )
    sym = _SYMMETRIES[symmetry]
    if args.monotone is not None and args.avoid is not None:
        raise UsageError("give either --avoid or --monotone, not both")
    if args.monotone is not None:
        if args.monotone < 2:
            raise UsageError("--monotone needs n >= 2")
        return PermClass((), args.monotone, sym)
    pats = parse_pattern_list(args.avoid) if args.avoid else ()
    if len(pats) == 1:
        p = pats[0]
        if len(p) >= 2 and p == decreasing(len(p)):
            return PermClass((), len(p), sym)
        if len(p) >= 2 and p == increasing(len(p)):
            return PermClass((), len(p), (sym[0], not sym[1]))
    return PermClass(tuple(sorted(Permutation(_apply(sym, p)) for p in pats)))


def _to_base(pclass: PermClass, vec: RatVector) -> RatVector:
    """Relabel a vector over true-class coordinates to the base (decreasing) class coordinates."""
    if pclass.monotone is None or pclass.transform == (False, False):
        return vec
    from .permcore import Permutation

    return RatVector(tuple(Permutation._trusted(_apply(pclass.transform, p)) for p in vec.labels), vec.values)


_from_base = _to_base  # the symmetries are involutions


# ---------------------------------------------------------------- commands

def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    sys.stderr.write(f"note: {msg}\n")


def _require_k(args):
    if args.k is None or args.k < 2:
        raise UsageError("--k must be given and be at least 2")


def cmd_enumerate(args) -> int:
    from .permcore import enumerate_avoiders

    pclass = resolve_class(args)
    if args.size is None or args.size < 1:
        raise UsageError("--size must be a positive integer")
    perms = enumerate_avoiders(args.size, pclass.basis)
    fmt = args.format or "text"
    if fmt == "text":
        text = "".join(permutation_text(p) + "\n" for p in perms)
    elif fmt == "json":
        text = dumps([list(p) for p in perms])
    elif fmt == "csv":
        text = rows_to_csv([f"p{i}" for i in range(1, args.size + 1)], perms)
    else:
        raise UsageError(f"format {fmt} is not available for enumerate")
    _emit(args, text)
    return EXIT_OK


def _graph_for(pclass: PermClass, k: int, coloured: bool):
    from .colouring import build_coloured_overlap
    from .overlap import build_overlap_graph

    if coloured:
        if pclass.monotone is None:
            raise UsageError("--projected needs a monotone class")
        if pclass.transform != (False, False):
            _note(f"coloured graph shown for Av({pclass.monotone}...1); coordinates of this class follow by symmetry")
        return build_coloured_overlap(pclass.monotone, k)
    return build_overlap_graph(k, pclass.basis)


def cmd_graph(args) -> int:
    from .overlap import to_dot, to_json

    pclass = resolve_class(args)
    _require_k(args)
    graph = _graph_for(pclass, args.k, args.projected)
    fmt = args.format or "text"
    render = lambda x: label_text(x)  # noqa: E731
    if fmt == "dot":
        text = to_dot(graph, render)
    elif fmt == "json":
        text = to_json(graph, label_json)
    elif fmt == "text":
        lines = [f"{graph.name}: {len(graph.vertices)} vertices, {len(graph.edges)} edges"]
        for e in graph.edges:
            lines.append(f"{render(e.label)}  [{render(e.start)} -> {render(e.end)}]")
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"format {fmt} is not available for graph")
    _emit(args, text)
    return EXIT_OK


def cmd_polytope(args) -> int:
    from .geometry.polytope import VPolytope, cycle_polytope, h_representation, projection_matrix
    from .permcore import coordinate_order

    pclass = resolve_class(args)
    _require_k(args)
    graph = _graph_for(pclass, args.k, args.projected)
    poly = cycle_polytope(graph, args.cap_cycles)
    if args.projected:
        targets = coordinate_order(args.k)
        base = poly.map(projection_matrix(graph, [p for p in targets if p in {e.label.perm for e in graph.edges}]))
        verts = tuple(_from_base(pclass, v).relabel(targets) for v in base.vertices)
        poly = VPolytope(targets, tuple(sorted(verts, key=lambda v: v.values, reverse=True)))
    fmt = args.format or "text"
    if fmt == "json":
        text = poly.to_json(label_text)
        if not args.projected:
            import json as _json

            obj = _json.loads(text)
            obj["h_representation"] = _json.loads(h_representation(graph).to_json(label_text))
            text = dumps(obj)
    elif fmt == "csv":
        text = rows_to_csv([label_text(x) for x in poly.labels], (v.to_strings() for v in poly.vertices))
    elif fmt == "text":
        text = f"{pclass.describe()} k={args.k}: {len(poly.vertices)} vertices, dimension {poly.dimension()}\n"
    else:
        raise UsageError(f"format {fmt} is not available for polytope")
    _emit(args, text)
    return EXIT_OK


def cmd_membership(args) -> int:
    from .colouring import build_coloured_overlap
    from .geometry.polytope import membership, membership_projected
    from .overlap import build_overlap_graph
    from .permcore import coordinate_order, decreasing, enumerate_avoiders

    pclass = resolve_class(args)
    _require_k(args)
    if args.point is None:
        raise UsageError("--point is required")
    point = parse_point(args.point, coordinate_order(args.k))
    if args.projected:
        if pclass.monotone is None:
            raise UsageError("--projected needs a monotone class")
        base = _to_base(pclass, point)
        targets = enumerate_avoiders(args.k, [decreasing(pclass.monotone)])
        answer = membership_projected(build_coloured_overlap(pclass.monotone, args.k), targets, base)
        region = "projected coloured cycle polytope"
    else:
        answer = membership(build_overlap_graph(args.k, pclass.basis), point)
        region = "cycle polytope of the restricted overlap graph"
        if not pclass.region_is_cycle_polytope:
            _note("for this class the restricted cycle polytope is an outer bound on the feasible region")
    fmt = args.format or "text"
    if fmt == "json":
        text = dumps({"class": pclass.describe(), "k": str(args.k), "region": region,
                      "point": point.to_strings(), "member": answer})
    elif fmt == "text":
        text = ("YES" if answer else "NO") + "\n"
    else:
        raise UsageError(f"format {fmt} is not available for membership")
    _emit(args, text)
    return EXIT_OK if answer else EXIT_NO


def cmd_pack(args) -> int:
    from .colouring import build_coloured_overlap
    from .geometry.polytope import maximize
    from .overlap import build_overlap_graph
    from .permcore import Permutation, coordinate_order, decreasing, enumerate_avoiders

    pclass = resolve_class(args)
    if args.pattern is None:
        raise UsageError("--pattern is required")
    pattern = Permutation(args.pattern)
    k = len(pattern)
    if args.k is not None and args.k != k:
        raise UsageError("--k must equal the pattern size")
    if k < 2:
        raise UsageError("pattern must have size at least 2")
    targets = coordinate_order(k)
    objective = RatVector.from_mapping(targets, {pattern: 1})
    if pclass.monotone is not None:
        base_targets = enumerate_avoiders(k, [decreasing(pclass.monotone)])
        base_obj = _to_base(pclass, objective)
        if not any(base_obj.get(p) for p in base_targets):
            value, opt = Fraction(0), None
        else:
            base_obj = RatVector.from_mapping(base_targets, {p: v for p, v in base_obj.items() if v})
            value, opt = maximize(build_coloured_overlap(pclass.monotone, k), base_obj, base_targets)
        region = "projected coloured cycle polytope"
    else:
        graph = build_overlap_graph(k, pclass.basis)
        if pattern not in graph.by_label:
            value, opt = Fraction(0), None
        else:
            value, opt = maximize(graph, RatVector.from_mapping(graph.edge_keys, {pattern: 1}))
        region = "cycle polytope of the restricted overlap graph"
        if not pclass.region_is_cycle_polytope:
            _note("for this class the value is an upper bound on the packing density")
    fmt = args.format or "text"
    if fmt == "json":
        payload = {"class": pclass.describe(), "pattern": list(pattern), "region": region,
                   "max_density": format_rational(value)}
        if opt is not None:
            payload["optimizer"] = {label_text(lab): format_rational(v) for lab, v in opt.items() if v}
        text = dumps(payload)
    elif fmt == "text":
        text = format_rational(value) + "\n"
    else:
        raise UsageError(f"format {fmt} is not available for pack")
    _emit(args, text)
    return EXIT_OK


def cmd_dimension(args) -> int:
    from .analysis import DimensionReport, conjecture_probe, feasible_dimension_cycle, feasible_dimension_monotone
    from .permcore import enumerate_avoiders

    pclass = resolve_class(args)
    _require_k(args)
    if pclass.monotone is not None:
        report = feasible_dimension_monotone(pclass.monotone, args.k, args.cap_cycles)
        report.description = pclass.describe()
    elif pclass.region_is_cycle_polytope:
        report = feasible_dimension_cycle(args.k, pclass.basis, args.cap_cycles)
    elif len(pclass.basis) == 1:
        report = conjecture_probe(pclass.basis[0], args.k, max_size=args.probe_size)
    else:
        b = list(pclass.basis)
        upper = len(enumerate_avoiders(args.k, b)) - len(enumerate_avoiders(args.k - 1, b))
        report = DimensionReport(pclass.describe(), args.k, upper, None, 0, "upper-bound-only", False,
                                 notes=["no certified lower bound is implemented for several patterns"])
    fmt = args.format or "text"
    if fmt == "json":
        text = report.to_json()
    elif fmt == "text":
        if report.conclusive:
            text = f"{report.dimension}\n"
        else:
            text = f"inconclusive: lower bound {report.lower_bound}, upper bound {report.upper_bound}\n"
    else:
        raise UsageError(f"format {fmt} is not available for dimension")
    _emit(args, text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .golden import REGISTRY, reproduce

    if args.fact != "all" and args.fact not in REGISTRY:
        raise UsageError(f"unknown fact {args.fact!r}; known: {', '.join(REGISTRY)}, all")
    results = reproduce(args.fact)
    fmt = args.format or "text"
    if fmt == "json":
        text = dumps([{"fact": r.fact_id, "passed": r.passed, "details": r.details} for r in results])
    elif fmt == "text":
        lines = []
        for r in results:
            lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.fact_id}")
            lines.extend(f"    {d}" for d in r.details)
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"format {fmt} is not available for reproduce")
    _emit(args, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NO


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patregion",
        description="Exact feasible regions of consecutive patterns in permutation classes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, fmt=("text", "json")):
        p.add_argument("--avoid", help="comma-separated patterns, e.g. 312 or 132,213")
        p.add_argument("--monotone", type=int, help="avoid the decreasing pattern n...1")
        p.add_argument("--symmetry", default="none", choices=[*_SYMMETRIES, "inverse"],
                       help="study the image of the class under this symmetry")
        if k:
            p.add_argument("--k", type=int, help="pattern size")
        p.add_argument("--format", choices=fmt)
        p.add_argument("--out", help="write output atomically to this file")
        p.add_argument("--cap-cycles", type=int, default=1_000_000, help="refuse beyond this many simple cycles")

    p = sub.add_parser("enumerate", help="list the avoiders of a given size")
    common(p, k=False, fmt=("text", "json", "csv"))
    p.add_argument("--size", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="overlap graph (coloured with --projected)")
    common(p, fmt=("text", "json", "dot"))
    p.add_argument("--projected", action="store_true", help="coloured overlap graph of a monotone class")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("polytope", help="cycle polytope vertices, or the projected region with --projected")
    common(p, fmt=("text", "json", "csv"))
    p.add_argument("--projected", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("membership", help="exact membership of a point")
    common(p)
    p.add_argument("--point", help="coordinates in the fixed pattern order, or pattern=value pairs")
    p.add_argument("--projected", action="store_true", help="test the projected coloured cycle polytope")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("pack", help="maximal limiting consecutive density of a pattern")
    common(p)
    p.add_argument("--pattern")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("dimension", help="dimension report for the feasible region")
    common(p)
    p.add_argument("--probe-size", type=int, default=9, help="largest class member used by the lower-bound probe")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("reproduce", help="recompute a reference fact and compare")
    p.add_argument("fact", help="table-1, matrix-a-3-3, minor, landscape, fact-1-10, fig-1, fig-4, fig-6 or all")
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, PatternError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_CAP
    except InvariantViolation as exc:
        sys.stderr.write(f"internal consistency failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
