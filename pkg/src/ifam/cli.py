"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 malformed input,
3 capacity limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ifam import bounds
from ifam.constructions import (
    TreePairSpec,
    exceptional_n4,
    iterate_treepair,
    star_family,
    tensor_family,
    treepair_family,
)
from ifam.cosets import verify_anticluster
from ifam.errors import CapacityError
from ifam.graphspace import Graph, Kind, PropertySpec, decode
from ifam.io import FamilyFileError, dumps, envelope, format_family, read_family, write_family
from ifam.search import Budget, brute_force_mu, classify_extremal, max_family, verify_family

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    for chunk in text.replace(" ", "").split(","):
        if not chunk:
            continue
        u, sep, v = chunk.partition("-")
        if not sep:
            raise InputError(f"bad edge {chunk!r}, expected u-v")
        try:
            edges.append((int(u), int(v)))
        except ValueError:
            raise InputError(f"bad edge {chunk!r}, expected u-v") from None
    return edges


def parse_vertices(text: str) -> frozenset[int]:
    try:
        return frozenset(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise InputError(f"bad vertex list {text!r}") from None


def _graph(n: int, edges: list[tuple[int, int]]) -> Graph:
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def property_from_args(args: argparse.Namespace) -> PropertySpec:
    kind = Kind(args.property)
    try:
        return PropertySpec(
            kind,
            pattern=decode(args.pattern) if kind is Kind.CONTAINS_PATTERN and args.pattern else None,
            r=args.r if kind is Kind.NOT_R_PARTITE else None,
            m=args.m if kind is Kind.MIN_EDGES else None,
        )
    except ValueError as exc:
        raise InputError(f"--property {kind.value}: {exc}") from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/8, got {text!r}") from None


def _emit(args: argparse.Namespace, report: dict) -> None:
    text = dumps(report)
    sys.stdout.write(text)
    if getattr(args, "json", None):
        Path(args.json).write_text(text, encoding="utf-8")


# -- build ----------------------------------------------------------------------


def _treepair_spec(args: argparse.Namespace) -> TreePairSpec:
    fields = {"n": args.n, "a": args.a, "b": args.b, "s": args.s,
              "a-vertices": args.a_vertices, "b-vertices": args.b_vertices}
    if args.config:
        for lineno, line in enumerate(Path(args.config).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition(":")
            key = key.strip().lower()
            if not sep or key not in fields:
                raise InputError(f"{args.config} line {lineno}: expected one of {sorted(fields)} as 'key: value'")
            fields[key] = int(value) if key == "n" else value.strip()
    n = fields["n"]
    if n is None or fields["a"] is None or fields["b"] is None or fields["s"] is None:
        raise InputError("treepair needs n, A, B and S")
    return TreePairSpec(
        a=_graph(n, parse_edges(fields["a"])),
        b=_graph(n, parse_edges(fields["b"])),
        s=frozenset(parse_edges(fields["s"])),
        a_support=parse_vertices(fields["a-vertices"]) if fields["a-vertices"] else None,
        b_support=parse_vertices(fields["b-vertices"]) if fields["b-vertices"] else None,
    )


def cmd_build(args: argparse.Namespace) -> int:
    which = args.construction
    if which == "star":
        if args.n is None:
            raise InputError("star needs --n")
        if args.edges:
            h = _graph(args.n, parse_edges(args.edges))
        elif args.tree == "star":
            h = Graph.star(args.n)
        else:
            h = Graph.path(args.n)
        family = star_family(args.n, h)
    elif which == "treepair":
        spec = _treepair_spec(args)
        try:
            if args.inner:
                family = iterate_treepair(spec, read_family(args.inner))
            else:
                family = treepair_family(spec)
        except FamilyFileError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif which == "exceptional-n4":
        family = exceptional_n4()
    else:
        if not args.family or args.a is None or args.b is None:
            raise InputError("tensor needs --family, --a and --b")
        try:
            family = tensor_family(read_family(args.family), int(args.a), int(args.b))
        except FamilyFileError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None

    summary = f"size {len(family)}, density {family.density} (~{float(family.density):.6g})\n"
    if args.out:
        write_family(family, args.out)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(format_family(family))
        sys.stderr.write(summary)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    family = read_family(args.file)
    prop = property_from_args(args)
    ok, witness = verify_family(family, prop)
    payload = {
        "property": prop.to_json(),
        "family_size": len(family),
        "n": family.n,
        "intersecting": ok,
        "witness": None if witness is None else [g.encode() for g in witness],
    }
    if args.anticluster:
        payload["anticluster"] = verify_anticluster(family).to_json()
    _emit(args, envelope(args.echo, "verification", payload))
    return EXIT_OK if ok else EXIT_VIOLATION


# -- search ---------------------------------------------------------------------


def cmd_search(args: argparse.Namespace) -> int:
    prop = property_from_args(args)
    n = args.n
    if args.classify:
        families = classify_extremal(n, prop)
        payload = {
            "n": n,
            "property": prop.to_json(),
            "count": len(families),
            "size": len(families[0]) if families else 0,
            "families": [[g.encode() for g in f] for f in families],
        }
        _emit(args, envelope(args.echo, "classification", payload))
        return EXIT_OK
    budget = Budget(nodes=args.budget_nodes, seconds=args.budget_seconds)
    if n <= 4:
        report = brute_force_mu(n, prop)
    else:
        report = max_family(n, prop, budget)
    _emit(args, envelope(args.echo, "search", report.to_json()))
    return EXIT_OK


# -- bounds ---------------------------------------------------------------------


def cmd_bounds(args: argparse.Namespace) -> int:
    name = args.name
    need = {
        "trivial": ("edges",),
        "connected": ("n",),
        "union-binomial": ("p", "t", "x"),
        "union-bracket": ("p", "t"),
        "entropy-check": ("m", "x"),
        "threshold": ("p", "eps"),
        "table": (),
    }[name]
    missing = [f"--{k}" for k in need if getattr(args, k) is None]
    if missing:
        raise InputError(f"bounds {name} needs {', '.join(missing)}")
    try:
        if name == "trivial":
            reports = list(bounds.trivial_bounds(args.edges))
        elif name == "connected":
            reports = [bounds.connected_value(args.n)]
        elif name == "union-binomial":
            reports = [bounds.union_lower_binomial(args.p, args.t, args.x)]
        elif name == "union-bracket":
            reports = [bounds.union_bracket(args.p, args.t)]
        elif name == "entropy-check":
            reports = [bounds.entropy_term_check(args.m, args.x)]
        elif name == "threshold":
            reports = [bounds.union_threshold(args.p, args.eps)]
        else:
            reports = bounds.known_values_table(args.n or 4, args.r or 3)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, envelope(args.echo, "bounds", [r.to_json() for r in reports]))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _add_property_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--property", choices=[k.value for k in Kind], required=required, default=None)
    p.add_argument("--pattern", help="graph encoding n=<k>;<hex> for --property contains")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifam", description="P-intersecting graph families")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="generate a family file")
    b.add_argument("construction", choices=["star", "treepair", "exceptional-n4", "tensor"])
    b.add_argument("--n", type=int)
    b.add_argument("--tree", choices=["path", "star"], default="path")
    b.add_argument("--edges", help="explicit graph for star, as 1-2,2-3,...")
    b.add_argument("--a", help="treepair: edges of A; tensor: threshold a")
    b.add_argument("--b", help="treepair: edges of B; tensor: block count b")
    b.add_argument("--s", help="treepair: crossing edges S")
    b.add_argument("--a-vertices", help="treepair: support of A when A has no edges")
    b.add_argument("--b-vertices", help="treepair: support of B when B has no edges")
    b.add_argument("--inner", help="treepair: inner family file on A's support (iterated form)")
    b.add_argument("--config", help="treepair: text block with n:, A:, B:, S: lines")
    b.add_argument("--family", help="tensor: base family file")
    b.add_argument("--out", "-o")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a family file against a property")
    v.add_argument("file")
    _add_property_flags(v, required=True)
    v.add_argument("--anticluster", action="store_true")
    v.add_argument("--json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="maximum P-intersecting family")
    s.add_argument("--n", type=int, required=True)
    _add_property_flags(s, required=False)
    s.add_argument("--classify", action="store_true")
    s.add_argument("--budget-nodes", type=int, default=10**8)
    s.add_argument("--budget-seconds", type=float, default=60.0)
    s.add_argument("--json")
    s.set_defaults(func=cmd_search, property="connected")

    bd = sub.add_parser("bounds", help="evaluate a density bound")
    bd.add_argument(
        "name",
        choices=["trivial", "connected", "union-binomial", "union-bracket", "entropy-check", "threshold", "table"],
    )
    bd.add_argument("--edges", type=int)
    bd.add_argument("--n", type=int)
    bd.add_argument("--r", type=int)
    bd.add_argument("--p", type=_parse_fraction)
    bd.add_argument("--t", type=int)
    bd.add_argument("--x", type=int)
    bd.add_argument("--m", type=int)
    bd.add_argument("--eps", type=_parse_fraction)
    bd.add_argument("--json")
    bd.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.echo = argv
    if getattr(args, "property", None) is None:
        args.property = "connected"
    try:
        return args.func(args)
    except FamilyFileError as exc:
        sys.stderr.write(f"ifam: malformed family file: {exc}\n")
        return EXIT_INPUT
    except CapacityError as exc:
        sys.stderr.write(f"ifam: capacity: {exc}\n")
        return EXIT_CAPACITY
    except (InputError, OSError) as exc:
        sys.stderr.write(f"ifam: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
