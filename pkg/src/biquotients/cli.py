"""Command line entry point.

Every subcommand prints a report, either as an aligned text table or, with
``--format json``, as a single JSON document ``{"command", "ok", "records"}``.
Exit status is 0 when all checks pass, 1 when a check fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import char_class, cohomology, enumeration, lie_catalog
from .rational_model import minimal_model, odd_sphere, rational_balance, truncated

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Report:
    command: str
    records: list[dict] = field(default_factory=list)
    ok: bool = True

    def add(self, record, passed=None):
        if passed is not None:
            record = {**record, "passed": bool(passed)}
            self.ok = self.ok and bool(passed)
        self.records.append(record)

    def to_json(self):
        return json.dumps({"command": self.command, "ok": self.ok, "records": self.records}, indent=2)

    def to_table(self):
        if not self.records:
            return f"{self.command}: no records"
        cols = []
        for r in self.records:
            for k in r:
                if k not in cols:
                    cols.append(k)
        cells = [[_cell(r.get(c, "")) for c in cols] for r in self.records]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
        lines.append(f"\n{self.command}: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def _cell(v):
    if isinstance(v, bool):
        return "yes" if v else "NO"
    if isinstance(v, (list, tuple)):
        return "{" + ", ".join(map(str, v)) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}: {x}" for k, x in v.items())
    return "" if v is None else str(v)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


# -- commands ---------------------------------------------------------------


def cmd_catalog(args, report):
    cat = _catalog(args)
    for g in cat:
        report.add({
            "group": g.label,
            "family": g.family,
            "rank": g.rank,
            "dim": lie_catalog.group_dimension(g),
            "spheres": list(lie_catalog.sphere_dimensions(g)),
        })
    for a, b in cat.coincidences:
        report.add({"group": f"{a.label} ~ {b.label}", "family": "coincidence",
                    "spheres": list(lie_catalog.sphere_dimensions(a))})


def cmd_match(args, report):
    cat = _catalog(args)
    for c in enumeration.match_odd_sphere_pairs(cat, args.include_trivial_h):
        report.add(c.to_record())


def cmd_balance(args, report):
    if args.sphere is not None:
        t = odd_sphere(args.sphere)
    else:
        t = truncated(*args.truncated)
    ok = rational_balance(args.g, args.h, t)
    report.add({
        "g_spheres": args.g,
        "h_spheres": args.h,
        "type": str(t),
        "minimal_model": str(minimal_model(t)),
    }, ok)


def cmd_cohomology(args, report):
    n = args.n
    ring = None
    if args.space == "unit-tangent":
        if n == 1 and args.allow_n1:
            group = cohomology.unit_tangent_cohomology(1, allow_n1=True)
            fib = None
        else:
            group = cohomology.unit_tangent_cohomology(n)
            fib = cohomology.defining_fibrations(n)[0]
    elif args.space == "circle-quotient":
        group, ring = cohomology.circle_quotient_ring(n)
        fib = cohomology.defining_fibrations(n)[1]
    elif args.space == "quaternionic-quotient":
        group, ring = cohomology.quaternionic_quotient_ring(n)
        fib = cohomology.defining_fibrations(n)[2]
    else:
        group, homology = cohomology.g2_su2_cohomology()
        fib = cohomology.defining_fibrations(2)[3]
        for k, (free, tors) in homology.groups.items():
            report.add({"degree": k, "kind": "H_*", "free_rank": free, "torsion": list(tors)})
    for k, (free, tors) in group.groups.items():
        report.add({"degree": k, "kind": "H^*", "free_rank": free, "torsion": list(tors)})
    if ring is not None:
        report.add({"kind": "divisibility", "torsion": list(ring.divisibility)})
    if fib is not None:
        res = cohomology.check_gysin_consistency(fib)
        report.add({"kind": "gysin", "fibration": fib.name,
                    "diagnostics": "; ".join(res.diagnostics)}, res.ok)


def cmd_pontrjagin(args, report):
    n = args.n
    for tag, rel in (("M", char_class.diagonal_quotient_relation(n)),
                     ("N", char_class.geodesic_quotient_relation(n))):
        report.add({"space": tag, "relation": str(rel), "p1": char_class.solve_p1_tangent(rel)})


def cmd_distinguish(args, report):
    v = char_class.distinguish_cp_pair(args.n)
    report.add(v.to_record(), v.homeomorphic_excluded)


def _action(name, n):
    if name == "normal-geodesic":
        return char_class.normal_action_matrix, 3
    if name == "normal-diagonal":
        return (lambda t: np.eye(3)), 3
    if name == "geodesic":
        return (lambda t: char_class.geodesic_flow_matrix(n, t)), 4 * n + 2
    return (lambda t: char_class.hopf_diagonal_matrix(n, t)), 4 * n + 2


def cmd_weights(args, report):
    family, rank = _action(args.action, args.n)
    dec = char_class.weight_decompose(lambda t: np.trace(family(t)), rank, args.max_weight)
    report.add({"action": args.action, "n": args.n, "rank": rank,
                "weights": {str(w): m for w, m in dec.multiplicities.items()}})


def _progression(row, n):
    ev = enumeration.eval_linear
    dims = []
    if "progression" in row:
        start, step, stop = row["progression"]
        dims = list(range(start, ev(stop, n) + 1, step))
    dims += [ev(x, n) for x in row.get("extra", ())]
    return tuple(sorted(dims))


def verify_all(catalog, tables, n_max, report):
    """Run every regression and consistency check; append one record per check."""
    max_rank = catalog.max_rank

    # sphere dimensions against the reference rows
    for row in tables["sphere_dimensions"]:
        if "rank" not in row:
            ns = [None]
        else:
            ns = range(row["n_min"], max_rank + 2)
        for n in ns:
            rank = enumeration.eval_linear(row["rank"], n) if "rank" in row else None
            if rank is not None and rank > max_rank:
                continue
            g = lie_catalog.canonical_group(row["family"], rank)
            dims = lie_catalog.sphere_dimensions(g)
            ok = dims == _progression(row, n) and sum(dims) == lie_catalog.group_dimension(g)
            label = row["label"] if n is None else f"{row['label']} [n={n}]"
            report.add({"check": "sphere dimensions", "item": label, "detail": list(dims)}, ok)

    candidates = enumeration.match_odd_sphere_pairs(catalog)
    cmp = enumeration.compare_with_curated(candidates, catalog, tables)
    detail = f"{cmp.matched} classes"
    if cmp.missing:
        detail += "; missing " + ", ".join(f"{p.g}/{p.h}" for p in cmp.missing)
    if cmp.extras:
        detail += "; extra " + ", ".join(c.label for c in cmp.extras)
    report.add({"check": "odd sphere pairs", "item": f"rank <= {max_rank}", "detail": detail}, cmp.ok)

    big = catalog
    need = enumeration.required_rank(n_max, tables)
    if need > catalog.max_rank:
        big = lie_catalog.load_catalog(max_rank=need)
    for c in enumeration.verify_table_b(big, n_max, tables).checks:
        rec = c.to_record()
        report.add({"check": "quotient table", "item": c.row.display_name,
                    "detail": f"{rec['g']} / {rec['h']} ~ {rec['rational_type']}"}, c.passed)

    for n in range(2, n_max + 1):
        for fib in cohomology.defining_fibrations(n):
            if fib.name.endswith("G2//SU(2)") and n > 2:
                continue
            res = cohomology.check_gysin_consistency(fib)
            report.add({"check": "gysin", "item": fib.name,
                        "detail": "; ".join(res.diagnostics) or "exact"}, res.ok)
    _, hom = cohomology.g2_su2_cohomology()
    expected = cohomology.GradedAbelianGroup.from_spec(
        {int(k): v for k, v in tables["g2_su2_homology"].items()}, 11)
    report.add({"check": "homology", "item": "G2//SU(2)", "detail": str(hom)}, hom == expected)

    for n in range(2, n_max + 1):
        v = char_class.distinguish_cp_pair(n)
        ok = (v.p1_m, v.p1_n) == (2 * n, 2 * n - 3) and v.homeomorphic_excluded
        report.add({"check": "pontrjagin", "item": f"n={n}",
                    "detail": f"orders {v.order_m}, {v.order_n}: {v.text}"}, ok)

    weight_cases = [("normal-geodesic", 2, {0: 1, 2: 1}), ("normal-diagonal", 2, {0: 3})]
    weight_cases += [("geodesic", n, {1: 2 * n + 1}) for n in range(2, n_max + 1)]
    for name, n, want in weight_cases:
        family, rank = _action(name, n)
        try:
            got = char_class.weight_decompose(lambda t: np.trace(family(t)), rank, 4).multiplicities
        except char_class.DecompositionError as exc:
            got = str(exc)
        report.add({"check": "weights", "item": f"{name} [n={n}]", "detail": str(got)}, got == want)


def cmd_verify_tables(args, report):
    verify_all(_catalog(args), _tables(args), args.n_max, report)


# -- plumbing ---------------------------------------------------------------


def _catalog(args):
    return lie_catalog.load_catalog(args.catalog, max_rank=args.max_rank)


def _tables(args):
    return enumeration.load_tables(args.tables)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--catalog", metavar="PATH", help="catalog override file of 'family rank' lines")
    common.add_argument("--tables", metavar="PATH", help="curated tables override (JSON)")
    common.add_argument("--max-rank", type=_positive, default=lie_catalog.DEFAULT_MAX_RANK)

    parser = argparse.ArgumentParser(prog="biquotients", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list groups and their sphere dimensions")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("match", parents=[common], help="pairs G, H with G ~ H x S^d rationally")
    p.add_argument("--include-trivial-h", action="store_true")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("balance", parents=[common], help="rational balance of H -> G -> M")
    p.add_argument("--g", type=_int_list, required=True, metavar="D1,D2,...")
    p.add_argument("--h", type=_int_list, required=True, metavar="D1,D2,...")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--sphere", type=_positive, metavar="DIM")
    kind.add_argument("--truncated", type=_positive, nargs=2, metavar=("DEG_A", "M"))
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("cohomology", parents=[common], help="closed-form integral cohomology")
    p.add_argument("--space", required=True,
                   choices=("unit-tangent", "circle-quotient", "quaternionic-quotient", "g2-su2"))
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--allow-n1", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("pontrjagin", parents=[common], help="p_1 of the two rational CP^(2n-1)")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_pontrjagin)

    p = sub.add_parser("distinguish", parents=[common], help="compare H^4/<p_1> of M and N")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("weights", parents=[common], help="weight decomposition of a circle action")
    p.add_argument("--action", required=True,
                   choices=("normal-geodesic", "normal-diagonal", "geodesic", "diagonal"))
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--max-weight", type=_positive, default=4)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("verify-tables", parents=[common], help="run every check")
    p.add_argument("--n-max", type=_positive, default=6)
    p.set_defaults(func=cmd_verify_tables)
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "n", 2) < 2 and not (args.command == "cohomology" and args.allow_n1):
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: --n must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "verify-tables" and args.n_max < 2:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: --n-max must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    report = Report(args.command)
    try:
        args.func(args, report)
    except (lie_catalog.CatalogError, OSError, ValueError, KeyError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json() if args.format == "json" else report.to_table(), file=out)
    if not report.ok:
        failed = [r for r in report.records if r.get("passed") is False]
        names = ", ".join(str(r.get("item", r.get("check", args.command))) for r in failed)
        print(f"failed: {names}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
