"""Command-line interface.

Verbs: analyze, classes, enumerate, verify, catalog, moves.  Targets are
catalog names, literal PD codes, @file, or "-" for stdin.  Every verb
takes --json for machine-readable output; exit codes are 0 success,
1 input error, 2 enumeration budget exceeded, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import diagram as dia
from . import coloring as col
from . import orbits as orb

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; remap to the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"error: {message}\n")


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _resolve_target(target: str) -> tuple[str, dia.PlanarDiagram]:
    """Target as catalog name, PD text, @file, or '-' (stdin)."""
    label = target
    if target == "-":
        text = sys.stdin.read()
        label = "<stdin>"
    elif target.startswith("@"):
        with open(target[1:], encoding="utf-8") as fh:
            text = fh.read()
        label = target[1:]
    elif target in dia.catalog_names():
        return target, dia.build_diagram(dia.catalog(target))
    elif target.startswith("[") or target.strip() == dia.UNKNOT_TOKEN:
        text = target
        label = "<pd>"
    else:
        raise dia.PdError(f"unknown catalog name {target!r} "
                          f"(known: {', '.join(dia.catalog_names())})")
    return label, dia.build_diagram(dia.parse_pd(text))


def _parse_site(spec: str) -> dia.MoveSite:
    parts = spec.split(":")
    kind = parts[0]
    if kind not in dia.MOVE_KINDS:
        raise dia.MoveError(f"unknown move kind {kind!r} (use one of {', '.join(dia.MOVE_KINDS)})")
    over = False
    if parts and parts[-1] == "over":
        over = True
        parts = parts[:-1]
    try:
        edges = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise dia.MoveError(f"bad move site {spec!r}; expected KIND:EDGE[:EDGE][:over]") from None
    return dia.MoveSite(kind, edges, over=over)


def cmd_analyze(args) -> int:
    label, d = _resolve_target(args.target)
    pr = col.profile(d)
    payload = {
        "target": label,
        "crossings": d.n_crossings,
        "arcs": d.n_arcs,
        "invariant_factors": list(pr.invariant_factors),
        "determinant": pr.determinant,
    }
    if args.mod is not None:
        m = args.mod
        if m < 2:
            return _fail("--mod must be at least 2", EXIT_INPUT)
        payload["mod"] = m
        payload["colorings"] = pr.count(m)
        payload["nontrivial"] = pr.count(m) - m
        if col.is_odd_prime(m):
            payload["nullity"] = pr.nullity(m)
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"target            {label}")
    print(f"crossings         {d.n_crossings}")
    print(f"arcs              {d.n_arcs}")
    print(f"invariant factors {', '.join(map(str, pr.invariant_factors))}")
    print(f"determinant       {pr.determinant}")
    if args.mod is not None:
        if "nullity" in payload:
            print(f"nullity mod {args.mod}     {payload['nullity']}")
        print(f"colorings mod {args.mod}   {payload['colorings']} ({payload['nontrivial']} non-trivial)")
    return EXIT_OK


def _arc_header(d: dia.PlanarDiagram) -> str:
    return " ".join(f"{i}:{lbl}" for i, lbl in enumerate(d.arc_labels()))


def cmd_classes(args) -> int:
    label, d = _resolve_target(args.target)
    nontrivial = col.enumerate_colorings(d, args.mod, nontrivial_only=True, budget=args.budget)
    group = orb.build_group(args.group, args.mod)
    part = orb.orbit_partition(nontrivial, group)
    payload = {
        "target": label,
        "mod": args.mod,
        "group": group.kind,
        "nontrivial": len(nontrivial),
        "class_count": part.class_count,
        "orbits": [{"size": o.size, "representative": list(o.representative.values)}
                   for o in part.orbits],
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"{label}  mod {args.mod}  group {group.kind}")
    print(f"non-trivial colorings: {len(nontrivial)}")
    print(f"classes: {part.class_count}")
    if part.orbits:
        print(f"arcs: {_arc_header(d)}")
        print("class  size  representative")
        for i, o in enumerate(part.orbits, 1):
            rep = " ".join(map(str, o.representative.values))
            print(f"{i:<5}  {o.size:<4}  {rep}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    label, d = _resolve_target(args.target)
    colorings = col.enumerate_colorings(d, args.mod, nontrivial_only=not args.all,
                                        budget=args.budget)
    payload = {
        "target": label,
        "mod": args.mod,
        "nontrivial_only": not args.all,
        "count": len(colorings),
        "colorings": [list(c.values) for c in colorings],
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"{label}  mod {args.mod}  {'all' if args.all else 'non-trivial'} colorings: {len(colorings)}")
    if colorings:
        print(f"arcs: {_arc_header(d)}")
        for c in colorings:
            print(" ".join(map(str, c.values)))
    return EXIT_OK


def cmd_verify(args) -> int:
    label, d = _resolve_target(args.target)
    try:
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
    except ValueError:
        return _fail(f"bad --primes list {args.primes!r}", EXIT_INPUT)
    for p in primes:
        if not col.is_odd_prime(p):
            return _fail(f"{p} is not an odd prime", EXIT_INPUT)
    reports = [orb.verify_counts(d, p, label=label, variants=args.moves,
                                 seed=args.seed, budget=args.budget)
               for p in primes]
    if args.json:
        _emit_json({"target": label, "reports": [r.to_json_dict() for r in reports]})
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {label} p={r.p}: nullity {r.nullity}, "
                  f"aut {r.aut_classes} (predicted {r.predicted_aut}), "
                  f"inn {r.inn_classes} (predicted {r.predicted_inn}), "
                  f"stable across {args.moves} variants: {r.invariant_across_moves}")
            for f in r.failures:
                print(f"  {f}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_catalog(args) -> int:
    entries = []
    for name in dia.catalog_names():
        d = dia.build_diagram(dia.catalog(name))
        pr = col.profile(d)
        entries.append({"name": name, "crossings": d.n_crossings,
                        "determinant": pr.determinant})
    if args.json:
        _emit_json({"catalog": entries})
        return EXIT_OK
    print("name    crossings  determinant")
    for e in entries:
        print(f"{e['name']:<7} {e['crossings']:<10} {e['determinant']}")
    return EXIT_OK


def cmd_moves(args) -> int:
    label, d = _resolve_target(args.target)
    applied = []
    for spec in args.site or []:
        site = _parse_site(spec)
        d = dia.apply_move(d, site)
        applied.append(spec)
    if args.random:
        import random
        rng = random.Random(args.seed)
        for _ in range(args.random):
            site = dia.random_move_site(d, rng)
            d = dia.apply_move(d, site)
            applied.append(f"{site.kind}:{','.join(map(str, site.edges))}")
    payload = d.pd.to_json_dict()
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"applied: {'; '.join(applied) if applied else '(none)'}")
    print(f"crossings: {d.n_crossings}  arcs: {d.n_arcs}")
    print(f"pd: {d.pd}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="foxcolor",
        description="Exact coloring invariants of knot diagrams and "
                    "equivalence classes of colorings.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_target(p):
        p.add_argument("target", help="catalog name, PD code, @file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="invariant factors, determinant, nullity, counts")
    add_target(p)
    p.add_argument("--mod", type=int, default=None, help="also report mod-M coloring data")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classes", help="equivalence classes of non-trivial colorings")
    add_target(p)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--group", choices=[orb.AUT, orb.INN], default=orb.AUT)
    p.add_argument("--budget", type=int, default=col.ENUMERATION_BUDGET)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("enumerate", help="list colorings")
    add_target(p)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include trivial colorings")
    p.add_argument("--budget", type=int, default=col.ENUMERATION_BUDGET)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check class counts against the closed forms")
    add_target(p)
    p.add_argument("--primes", default="3,5,7,11", help="comma-separated odd primes")
    p.add_argument("--moves", type=int, default=3, help="number of move-derived variants")
    p.add_argument("--seed", type=int, default=orb.DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=col.ENUMERATION_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list embedded diagrams")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("moves", help="apply Reidemeister moves to a diagram")
    add_target(p)
    p.add_argument("--site", action="append",
                   help="move site KIND:EDGE[:EDGE][:over], repeatable")
    p.add_argument("--random", type=int, default=0, help="apply N random R1/R2 insertions")
    p.add_argument("--seed", type=int, default=orb.DEFAULT_SEED)
    p.set_defaults(func=cmd_moves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except col.EnumerationBudgetError as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except (dia.PdError, dia.MoveError, KeyError, ValueError, OSError) as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
