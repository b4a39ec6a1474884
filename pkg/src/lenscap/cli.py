"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.  Rationals are
always printed as p/q strings; identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import ecc, indexlab, packing, spectrum, svg
from .domains import (
    Domain,
    DomainError,
    Frame,
    decode_domain,
    validate_domain,
)
from .geometry import GeometryError, Vec
from .paths import (
    ConcavePath,
    DecoratedPath,
    EnumerationBoundError,
    PathError,
    capacity_by_paths,
    validate_decorated,
)

KMAX_LIMIT = 10
IMAX_LIMIT = 14


class InputError(ValueError):
    pass


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from err


def fmt_rat(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def emit(result, fmt: str) -> bytes:
    """Deterministic bytes for a result in the requested format."""
    if fmt == "csv":
        if not (isinstance(result, dict) and "header" in result and "rows" in result):
            raise InputError("csv format unsupported for this result")
        lines = [",".join(result["header"])]
        lines.extend(",".join(str(cell) for cell in row) for row in result["rows"])
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        payload = {k: v for k, v in result.items() if k != "header"} if isinstance(result, dict) else result
        return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()
    if fmt == "svg":
        if not isinstance(result, str):
            raise InputError("svg format unsupported for this result")
        return result.encode()
    raise InputError(f"unknown format {fmt!r}")


def _load_domain(path: str) -> Domain:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return decode_domain(handle.read())
    except OSError as err:
        raise InputError(f"cannot read domain file: {err}") from err


_PATH_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*x\s*(\d+)\s*([eh])\s*$")


def parse_path_spec(frame: Frame, text: str) -> DecoratedPath:
    """Parse "s=1;-1,0x2e;-1,1x1h": start multiple then run,mult,label terms."""
    parts = [part for part in text.split(";") if part.strip()]
    if not parts or not parts[0].strip().startswith("s="):
        raise InputError("path spec must start with 's=<int>'")
    try:
        start = int(parts[0].strip()[2:])
    except ValueError as err:
        raise InputError(f"bad start multiple in {parts[0]!r}") from err
    edges, labels = [], []
    for part in parts[1:]:
        match = _PATH_RE.match(part)
        if not match:
            raise InputError(f"bad path segment {part!r}; expected 'p,qxMULT[e|h]'")
        p, q, mult, lab = match.groups()
        edges.append((Vec(int(p), int(q)), int(mult)))
        labels.append(lab)
    return validate_decorated(
        DecoratedPath(ConcavePath(frame, start, tuple(edges)), tuple(labels))
    )


def _capacity_methods(domain: Domain, count: int, method: str):
    ks = list(range(count))
    columns = {}
    if method in ("paths", "all"):
        columns["paths"] = [capacity_by_paths(domain, k) for k in ks]
    if method in ("packing", "all"):
        if domain.frame.m in (0, 1):
            columns["packing"] = list(packing.packing_capacities(domain, count))
        elif method == "packing":
            raise InputError(
                f"packing capacities need m in {{0,1}}, domain has m={domain.frame.m}"
            )
    if method in ("complex", "all"):
        columns["complex"] = list(ecc.capacities_from_complex(domain, count - 1))
    return ks, columns


def _cmd_ellipsoid(args) -> int:
    values = spectrum.singular_ellipsoid_spectrum(
        Frame(args.n, args.m), args.a, args.b, args.count
    )
    result = {
        "header": ["k", "value"],
        "rows": [[k, fmt_rat(v)] for k, v in enumerate(values)],
    }
    sys.stdout.write(emit(result, args.format).decode())
    return 0


def _cmd_capacities(args) -> int:
    domain = _load_domain(args.domain)
    if args.count < 1 or args.count - 1 > KMAX_LIMIT:
        raise InputError(f"count must be between 1 and {KMAX_LIMIT + 1}")
    ks, columns = _capacity_methods(domain, args.count, args.method)
    names = sorted(columns)
    result = {
        "header": ["k"] + names,
        "rows": [[k] + [fmt_rat(columns[name][k]) for name in names] for k in ks],
    }
    sys.stdout.write(emit(result, args.format).decode())
    if args.method == "all":
        for k in ks:
            seen = {fmt_rat(columns[name][k]) for name in names}
            if len(seen) > 1:
                sys.stdout.write(f"DISAGREEMENT at k={k}\n")
                return 1
    return 0


def _cmd_weights(args) -> int:
    domain = _load_domain(args.domain)
    expansion = packing.weight_expansion(domain)
    rows = []
    if expansion.singular_weight is not None:
        rows.append(["singular", fmt_rat(expansion.singular_weight)])
    rows.extend(["classical", fmt_rat(w)] for w in expansion.classical_weights)
    result = {"header": ["kind", "weight"], "rows": rows}
    sys.stdout.write(emit(result, args.format).decode())
    return 0


def _cmd_verify_packing(args) -> int:
    domain = _load_domain(args.domain)
    if args.kmax < 0 or args.kmax > KMAX_LIMIT:
        raise InputError(f"kmax must be between 0 and {KMAX_LIMIT}")
    report = packing.verify_packing(domain, args.kmax)
    result = {
        "header": ["k", "packing", "paths"],
        "rows": [
            [k, fmt_rat(report.packing_values[k]), fmt_rat(report.path_values[k])]
            for k in range(args.kmax + 1)
        ],
    }
    sys.stdout.write(emit(result, args.format).decode())
    if not report.ok:
        sys.stdout.write(f"DISAGREEMENT at k={report.first_discrepancy}\n")
        return 1
    sys.stdout.write("OK\n")
    return 0


def _cmd_complex(args) -> int:
    frame = Frame(args.n, args.m)
    if args.imax < 0 or args.imax > IMAX_LIMIT:
        raise InputError(f"imax must be between 0 and {IMAX_LIMIT}")
    slice_ = ecc.build_complex(frame, args.imax)
    if args.export:
        with open(args.export, "w", encoding="utf-8") as handle:
            handle.write(ecc.export_complex(slice_))
        sys.stdout.write(f"exported to {args.export}\n")
        return 0
    if args.d2:
        ok = ecc.verify_d_squared(slice_)
        sys.stdout.write("d^2 = 0\n" if ok else "d^2 != 0\n")
        return 0 if ok else 1
    if args.homology:
        ranks = ecc.homology_ranks(frame, args.imax)
        result = {
            "header": ["degree", "rank"],
            "rows": [[i, r] for i, r in enumerate(ranks.complete)],
        }
        sys.stdout.write(emit(result, args.format).decode())
        sys.stdout.write(
            f"degree {ranks.top_degree}: kernel dimension {ranks.top_kernel_dim} (incomplete)\n"
        )
        return 0
    rows = []
    for i in range(args.imax + 1):
        for g in slice_.generators[i]:
            desc = ";".join(
                f"{d.x},{d.y}x{mult}{lab}"
                for (d, mult), lab in zip(g.path.edges, g.labels)
            )
            rows.append([i, g.path.start_multiple, desc or "empty"])
    result = {"header": ["index", "start", "edges"], "rows": rows}
    sys.stdout.write(emit(result, args.format).decode())
    return 0


def _cmd_index_lab(args) -> int:
    if args.tool == "partitions":
        theta = None
        if args.theta is not None:
            theta = indexlab.tilted(args.theta, args.tilt)
        plus, minus = indexlab.partitions(args.kind, args.mult, theta)
        result = {
            "header": ["end", "partition"],
            "rows": [["positive", " ".join(map(str, plus))], ["negative", " ".join(map(str, minus))]],
        }
    elif args.tool == "fredholm":
        value = indexlab.fredholm_index(args.genus, args.eneg, args.hyp, args.chern)
        result = {"header": ["fredholm"], "rows": [[value]]}
    elif args.tool == "rotation":
        frame = Frame(args.n, args.m)
        a0 = Vec(*(Fraction(t) for t in args.a0.split(",")))
        a1 = Vec(*(Fraction(t) for t in args.a1.split(",")))
        from .geometry import trivialization_vector

        v = (
            Vec(*(int(t) for t in args.v.split(",")))
            if args.v
            else trivialization_vector(frame.n, frame.m)
        )
        plus, minus = indexlab.rotation_numbers(a0, a1, frame, v)
        result = {
            "header": ["end", "rotation"],
            "rows": [["ray", fmt_rat(plus)], ["axis", fmt_rat(minus)]],
        }
    else:  # components
        frame = Frame(args.n, args.m)
        decorated = parse_path_spec(frame, args.path)
        triv = Vec(*(int(t) for t in args.v.split(","))) if args.v else None
        comps = indexlab.index_components(decorated, frame, triv)
        result = {
            "header": ["chern", "self_intersection", "cz_total", "total"],
            "rows": [[comps.chern, comps.self_intersection, comps.cz_total, comps.total]],
        }
    sys.stdout.write(emit(result, args.format).decode())
    return 0


def _cmd_render(args) -> int:
    domain = _load_domain(args.domain)
    decorated = ()
    if args.path:
        decorated = (parse_path_spec(domain.frame, args.path),)
    document = svg.render_domain(domain, decorated)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(document)
    sys.stdout.write(f"wrote {args.out}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lenscap",
        description="Exact capacities of concave toric domains with lens-space boundary",
    )
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ellipsoid", help="capacity sequence of a singular ellipsoid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--b", type=_rat, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=_cmd_ellipsoid)

    p = sub.add_parser("capacities", help="capacities of a domain file")
    p.add_argument("--domain", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--method", choices=["paths", "packing", "complex", "all"], default="all")
    p.set_defaults(func=_cmd_capacities)

    p = sub.add_parser("weights", help="weight expansion of a domain file")
    p.add_argument("--domain", required=True)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("verify-packing", help="cross-check packing against paths")
    p.add_argument("--domain", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_verify_packing)

    p = sub.add_parser("complex", help="inspect the contact complex of a frame")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--imax", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--list", action="store_true")
    group.add_argument("--d2", action="store_true")
    group.add_argument("--homology", action="store_true")
    group.add_argument("--export")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("index-lab", help="index apparatus utilities")
    tool = p.add_subparsers(dest="tool", required=True)
    t = tool.add_parser("partitions")
    t.add_argument("--kind", choices=["positive-hyperbolic", "negative-hyperbolic", "elliptic"], required=True)
    t.add_argument("--mult", type=int, required=True)
    t.add_argument("--theta", type=_rat)
    t.add_argument("--tilt", type=int, default=0, choices=[-1, 0, 1])
    t.set_defaults(func=_cmd_index_lab)
    t = tool.add_parser("fredholm")
    t.add_argument("--genus", type=int, required=True)
    t.add_argument("--eneg", type=int, required=True)
    t.add_argument("--hyp", type=int, required=True)
    t.add_argument("--chern", type=int, required=True)
    t.set_defaults(func=_cmd_index_lab)
    t = tool.add_parser("rotation")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--a0", required=True, help="ray tangent 'x,y'")
    t.add_argument("--a1", required=True, help="axis tangent 'x,y'")
    t.add_argument("--v", help="trivialization vector 'x,y'")
    t.set_defaults(func=_cmd_index_lab)
    t = tool.add_parser("components")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--path", required=True, help="decorated path spec 's=1;-1,0x2e'")
    t.add_argument("--v", help="trivialization vector 'x,y'")
    t.set_defaults(func=_cmd_index_lab)

    p = sub.add_parser("render", help="draw a domain (and a path) as SVG")
    p.add_argument("--domain", required=True)
    p.add_argument("--path", help="decorated path spec 's=1;-1,0x2e'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        return args.func(args)
    except (
        InputError,
        DomainError,
        GeometryError,
        PathError,
        EnumerationBoundError,
        spectrum.SpectrumBudgetError,
        indexlab.TiltTieError,
        ValueError,
    ) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


def entry() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
