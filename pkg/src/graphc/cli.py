"""Command-line interface.

Subcommands: basis, table, cohomology, check, export.  Outputs are
deterministic for a fixed configuration and cache state.

Exit codes: 0 success, 2 usage error, 3 resource cap exceeded,
4 check failure, 5 cache corruption.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import chordhom, linalg
from .diagrams import EVEN, ODD, canonicalize, diagram, edge_degrees, graph_vector, to_json
from .differential import delta, delta_terms, partial
from .enumeration import (
    DEFAULT_CELL_CAP,
    basis_cached,
    basis_checksum,
    cache_filename,
    enumerate_basis,
)
from .errors import (
    CacheCorruptionError,
    CapExceededError,
    GraphcError,
    StaleCacheError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_CHECK_FAILED = 4
EXIT_CACHE = 5


def _parse_range(spec: str):
    """Parse 'N' or 'A..B' into an inclusive list of integers."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def _types(sel: str):
    return [ODD, EVEN] if sel == "both" else [sel]


def _cache_dir(args):
    if args.cache_dir:
        return args.cache_dir
    env = os.environ.get("GRAPHC_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "graphc")


def _m_values(args, k):
    if args.m is not None:
        return [m for m in args.m if m >= 0]
    return list(range(0, 2 * k))


def _emit(args, rows, header, text_formatter=None):
    fmt = args.format
    out = sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=2, sort_keys=True)
        out.write("\n")
    elif fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(row[h]) for h in header) + "\n")
    else:
        if text_formatter:
            text_formatter(rows, out)
        else:
            widths = [max(len(h), max((len(str(r[h])) for r in rows), default=0)) for h in header]
            out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
            for row in rows:
                out.write(
                    "  ".join(str(row[h]).ljust(w) for h, w in zip(header, widths)).rstrip()
                    + "\n"
                )


def cmd_basis(args) -> int:
    cache_dir = _cache_dir(args)
    for ctype in _types(args.type):
        for k in args.k:
            for m in _m_values(args, k):
                basis = basis_cached(ctype, k, m, cache_dir, args.max_cell_size)
                print(f"# basis type={ctype} k={k} m={m} dim={len(basis)}")
                for d in basis.diagrams:
                    print(to_json(d))
    return EXIT_OK


def cmd_table(args) -> int:
    rows = []
    for ctype in _types(args.type):
        for k in args.k:
            for m in _m_values(args, k):
                dim = len(enumerate_basis(ctype, k, m, args.max_cell_size))
                h = linalg.cohomology_dim(ctype, k, m)
                rows.append({"type": ctype, "k": k, "m": m, "dim_D": dim, "dim_H": h})
    _emit(args, rows, ["type", "k", "m", "dim_D", "dim_H"])
    return EXIT_OK


def cmd_cohomology(args) -> int:
    (ctype,) = _types(args.type) if args.type != "both" else (None,)
    if ctype is None:
        print("cohomology requires --type odd or --type even", file=sys.stderr)
        return EXIT_USAGE
    if len(args.k) != 1 or args.m is None or len(args.m) != 1:
        print("cohomology requires single -k and -m values", file=sys.stderr)
        return EXIT_USAGE
    k, m = args.k[0], args.m[0]
    dim = linalg.cohomology_dim(ctype, k, m)
    result = {"type": ctype, "k": k, "m": m, "dim": dim}
    if args.representative and dim > 0:
        rep = linalg.cocycle_representative(ctype, k, m)
        result["representative"] = [[str(c), to_json(d)] for d, c in rep.items()]
        if (ctype, k, m) == (EVEN, 3, 1):
            xi1 = diagram(EVEN, 4, 1, [(1, 5), (4, 5), (3, 5), (2, 5)])
            xi2 = diagram(EVEN, 5, 0, [(1, 3), (1, 4), (2, 5)])
            w = linalg.express_in_support(rep, [xi1, xi2])
            if w is not None:
                result["supported_representative"] = [
                    [str(c), to_json(d)] for d, c in w.items()
                ]
                c1 = w.coefficient(canonicalize(xi1).diagram)
                c2 = w.coefficient(canonicalize(xi2).diagram)
                if c1:
                    result["coefficient_ratio"] = str(c2 / c1)
    if args.format == "json":
        json.dump(result, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        print(f"dim H^({k},{m}) of the {ctype} complex = {dim}")
        for key in ("representative", "supported_representative"):
            if key in result:
                print(f"{key}:")
                for c, d in result[key]:
                    print(f"  {c} * {d}")
        if "coefficient_ratio" in result:
            print(f"coefficient ratio: {result['coefficient_ratio']}")
    return EXIT_OK


def _check_d2(types, kmax):
    failures = []
    for ctype in types:
        for k in range(1, kmax + 1):
            for m in range(0, 2 * k):
                A = linalg.matrix_of_delta(ctype, k, m)
                B = linalg.matrix_of_delta(ctype, k, m + 1)
                if not B.matmul(A).is_zero:
                    failures.append(f"delta^2 != 0 at ({ctype}, {k}, {m})")
    return failures


def _check_adjoint(types, kmax):
    failures = []
    for ctype in types:
        for k in range(1, kmax + 1):
            for m in range(0, 2 * k):
                A = linalg.matrix_of_delta(ctype, k, m)
                P = linalg.matrix_of_partial(ctype, k, m + 1)
                if P.entries != A.transpose().entries:
                    failures.append(f"partial != delta^T at ({ctype}, {k}, {m + 1})")
    return failures


def _check_chord(types, kmax):
    failures = []
    for ctype in types:
        for k in range(1, min(kmax, 3) + 1):
            rep = chordhom.compare_homology(ctype, k)
            if not rep["equal"] or not rep["generators_in_boundary_image"]:
                failures.append(f"chord comparison failed at ({ctype}, {k}): {rep}")
    return failures


def _check_quadrivalent(types, kmax):
    failures = []
    for ctype in types:
        for k in range(1, kmax + 1):
            for m in range(0, 2 * k):
                for d in enumerate_basis(ctype, k, m).diagrams:
                    deg = edge_degrees(d)
                    internal_ok = all(
                        deg[v] == 3 for v in range(d.ve + 1, d.n_vertices + 1)
                    )
                    ext_deg = deg[1 : d.ve + 1]
                    bd = partial(graph_vector([(d, 1)]))
                    if internal_ok and all(x == 1 for x in ext_deg):
                        if not bd.is_zero:
                            failures.append(
                                f"trivalent diagram with nonzero boundary: {to_json(d)}"
                            )
                    elif internal_ok and sorted(ext_deg) == [1] * (d.ve - 1) + [2]:
                        if len(bd) > 3:
                            failures.append(
                                f"quadrivalent boundary has {len(bd)} > 3 terms: "
                                f"{to_json(d)}"
                            )
    return failures


_CHECKS = {
    "d2": _check_d2,
    "adjoint": _check_adjoint,
    "chord-compare": _check_chord,
    "quadrivalent": _check_quadrivalent,
}


def cmd_check(args) -> int:
    types = _types(args.type)
    failures = _CHECKS[args.which](types, args.kmax)
    name = args.which
    if failures:
        print(f"check {name}: FAIL")
        for f in failures:
            print(f"  {f}")
        return EXIT_CHECK_FAILED
    print(f"check {name}: PASS (types={'+'.join(types)}, kmax={args.kmax})")
    return EXIT_OK


def _to_dot(d) -> str:
    lines = ["graph diagram {", "  layout=circo;"]
    for v in range(1, d.ve + 1):
        lines.append(f'  e{v} [label="{v}", shape=circle];')
    for v in range(d.ve + 1, d.n_vertices + 1):
        lines.append(f'  i{v} [label="{v}", shape=point, width=0.15];')
    # the oriented circle as a cycle of external vertices
    for v in range(1, d.ve + 1):
        w = v + 1 if v < d.ve else 1
        if w != v:
            lines.append(f"  e{v} -- e{w} [style=bold];")
    def name(v):
        return f"e{v}" if v <= d.ve else f"i{v}"
    for a, b in d.edges:
        lines.append(f"  {name(a)} -- {name(b)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    (ctype,) = _types(args.type)
    basis = enumerate_basis(ctype, args.k[0], args.m[0], args.max_cell_size)
    if not (0 <= args.index < len(basis)):
        print(
            f"index {args.index} out of range for basis of dim {len(basis)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    d = basis.diagrams[args.index]
    text = to_json(d) + "\n" if args.export_format == "json" else _to_dot(d)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphc",
        description="Graph complexes of decorated diagrams on a circle: "
        "bases, differentials, exact rational cohomology.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_m=True):
        sp.add_argument("--type", choices=["odd", "even", "both"], default="both")
        sp.add_argument("-k", type=_parse_range, default=[1], help="order: N or A..B")
        if need_m:
            sp.add_argument(
                "-m", type=_parse_range, default=None, help="degree: N or A..B"
            )
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--max-cell-size", type=int, default=DEFAULT_CELL_CAP)

    sp = sub.add_parser("basis", help="list basis diagrams")
    common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("table", help="dimension table of D and H")
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("cohomology", help="one cohomology group")
    common(sp)
    sp.add_argument("--representative", action="store_true")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("check", help="internal consistency checks")
    sp.add_argument("which", choices=sorted(_CHECKS))
    sp.add_argument("--kmax", type=int, default=3)
    common(sp, need_m=False)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("export", help="export one basis diagram")
    common(sp)
    sp.add_argument("--index", type=int, default=0)
    sp.add_argument(
        "--export-format", choices=["json", "dot"], default="json", dest="export_format"
    )
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CacheCorruptionError, StaleCacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except GraphcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
