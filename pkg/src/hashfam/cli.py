"""Command-line front end.

Subcommands: construct (build a family), verify (check one), bounds
(feasibility checks), compose-ca (column replacement into covering arrays),
and tables (the persistent best-known table).  Exit status is 0 for a pass,
1 for a verification failure (with a witness on stdout), and 2 for usage or
input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import ca as camod
from . import construct as con
from .core import HashFamily, parse, serialize
from .tables import ExistenceTable, TableEntry
from .verify import (
    UncoveredSubsetError,
    check_column_bound,
    check_niu_cao,
    check_singleton_cover,
    implies_perfect,
    sample_verify,
    verify_covering,
    verify_dhhf,
    verify_fractal,
    verify_phf,
)


def _read_family(path: str, strength: int | None = None,
                 parts: int | None = None) -> HashFamily:
    fam = parse(Path(path).read_text())
    if strength is None and parts is None:
        return fam
    return fam.with_claims(strength, parts)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def _emit_family(fam: HashFamily, out: str | None) -> None:
    if out is None:
        sys.stdout.write(serialize(fam))
    else:
        Path(out).write_text(serialize(fam))
        print(fam.describe())


def _emit_ca(array: camod.CoveringArray, out: str | None) -> None:
    if out is None:
        sys.stdout.write(camod.serialize_ca(array))
    else:
        Path(out).write_text(camod.serialize_ca(array))
        print(array.describe())


def _placement_spec(text: str) -> tuple[int | None, ...]:
    entries: list[int | None] = []
    for token in text.split(","):
        token = token.strip()
        entries.append(None if token in ("D", "d") else int(token))
    return tuple(entries)


def _ingredient_with_claims(args, rows_plus: int = 0) -> HashFamily:
    if not args.ingredient or len(args.ingredient) != 1:
        raise ValueError("this recipe takes exactly one --ingredient")
    fam = parse(Path(args.ingredient[0]).read_text())
    strength = fam.rows + rows_plus
    parts = getattr(args, "parts", None)
    return fam.with_claims(strength, parts if parts is not None else strength)


def _pair_ingredient(args) -> HashFamily:
    if args.ingredient:
        return _ingredient_with_claims(args)
    if args.w is not None:
        a, b = _int_list(args.w)
        if args.kappa is not None and a * b != args.kappa:
            raise ValueError(
                f"--w {a},{b} is not a factorization of kappa={args.kappa}")
        return con.easy_product(b, a)
    if args.kappa is None:
        raise ValueError("provide --ingredient, --w, or --kappa")
    a, b = con.best_factor_pair(args.kappa)
    return con.easy_product(b, a)


_NEEDS = {
    "easy": ("widths",),
    "dhhf3": ("a1", "a2"),
    "extend": ("ingredient", "ell"),
    "varbb": ("ingredient", "d", "alpha", "k"),
    "dgen": ("ingredient", "m", "d"),
    "d1": ("ingredient",),
    "dn1": ("n", "kappa"),
    "dn2": ("n",),
    "dn3": ("n",),
    "dn4": ("n", "ingredient"),
    "dn5": ("n", "ingredient"),
    "l52": ("ing3", "ing2a", "ing2b"),
    "blackburn": ("covering", "ingredient"),
}


def cmd_construct(args) -> int:
    recipe = args.recipe
    missing = [f for f in _NEEDS[recipe] if getattr(args, f) in (None, [])]
    if missing:
        raise ValueError(f"{recipe} needs: " + ", ".join(missing))
    if recipe == "easy":
        fam = con.easy_product(*_int_list(args.widths))
    elif recipe == "dhhf3":
        fam = con.dhhf3(args.a1, args.a2)
    elif recipe == "extend":
        fam = con.extend_strength(_ingredient_with_claims(args), args.ell)
    elif recipe == "varbb":
        fam = con.varbb_extend(_ingredient_with_claims(args, args.d),
                               args.d, args.alpha, args.k)
    elif recipe == "dgen":
        fam = con.construct_dgen(args.m, args.d,
                                 _ingredient_with_claims(args),
                                 trusted=args.trusted)
    elif recipe == "d1":
        fam = con.construct_d1(_ingredient_with_claims(args),
                               trusted=args.trusted)
    elif recipe == "dn1":
        fam = con.construct_dn1(args.n, args.kappa)
    elif recipe == "dn2":
        fam = con.construct_dn2(args.n, _pair_ingredient(args), args.k)
    elif recipe == "dn3":
        fam = con.construct_dn3(args.n, _pair_ingredient(args), args.k)
    elif recipe == "dn4":
        fam = con.construct_dn4(args.n, _ingredient_with_claims(args),
                                args.k)
    elif recipe == "dn5":
        fam = con.construct_dn5(args.n, _ingredient_with_claims(args),
                                args.k)
    elif recipe == "l52":
        ing3 = _read_family(args.ing3)
        ing3 = ing3.with_claims(ing3.rows, ing3.rows)
        ing2a = _read_family(args.ing2a)
        ing2a = ing2a.with_claims(ing2a.rows, ing2a.rows)
        ing2b = _read_family(args.ing2b)
        ing2b = ing2b.with_claims(ing2b.rows, ing2b.rows)
        fam = con.construct_52(ing3, ing2a, ing2b, trusted=args.trusted)
    elif recipe == "blackburn":
        cov = con.parse_covering(Path(args.covering).read_text())
        placed = []
        for spec in args.ingredient:
            path, _, placement = spec.partition(":")
            if not placement:
                raise ValueError(
                    f"ingredient spec needs FILE:PLACEMENT, got {spec!r}")
            base = parse(Path(path).read_text())
            base = base.with_claims(
                base.rows,
                args.parts if args.parts is not None else base.rows)
            placed.append(con.FractalIngredient(
                base, _placement_spec(placement)))
        fam = con.blackburn_compose(cov, placed, trusted=args.trusted)
    else:
        raise ValueError(f"unknown recipe {recipe!r}")
    _emit_family(fam, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.mode == "covering":
        try:
            cov = con.parse_covering(Path(args.file).read_text())
        except UncoveredSubsetError as exc:
            print(f"FAIL covering: {exc}")
            return 1
        print(f"PASS covering {cov.describe()}")
        return 0
    fam = parse(Path(args.file).read_text())
    if args.mode == "phf":
        if args.t is None:
            raise ValueError("--mode phf needs -t")
        report = verify_phf(fam, args.t, threads=args.threads)
    elif args.mode == "dhhf":
        if args.t is None or args.p is None:
            raise ValueError("--mode dhhf needs -t and -p")
        report = verify_dhhf(fam, args.t, args.p, threads=args.threads)
    elif args.mode == "fractal":
        if args.t is None or args.p is None:
            raise ValueError("--mode fractal needs -t and -p")
        report = verify_fractal(fam, args.t, args.p)
    elif args.mode == "sample":
        if args.t is None or args.p is None:
            raise ValueError("--mode sample needs -t and -p")
        if args.samples is None or args.seed is None:
            raise ValueError("--mode sample needs --samples and --seed")
        report = sample_verify(fam, args.t, args.p, args.samples, args.seed)
    else:
        raise ValueError(f"unknown mode {args.mode!r}")
    print(report.describe())
    return 0 if report.passed else 1


def cmd_bounds(args) -> int:
    fam = parse(Path(args.file).read_text())
    t = args.t
    failed = False
    if t > fam.rows:
        res = check_column_bound(fam, t)
        print(res.describe())
        failed |= not res.holds
    else:
        print("column-sum: skipped (strength does not exceed the row count)")
    d = args.d if args.d is not None else t - fam.rows
    if d >= 1:
        res = check_singleton_cover(fam, d)
        print(res.describe())
        failed |= not res.holds
    else:
        print("singleton-cover: skipped (no d given and strength margin "
              "is not positive)")
    widths = set(fam.row_widths)
    if len(widths) == 1 and fam.rows == t:
        res = check_niu_cao(fam.cols, fam.row_widths[0], t)
        print(res.describe())
        failed |= not res.holds
    else:
        print("symbol-square: skipped (needs homogeneous widths and "
              "rows equal to strength)")
    if args.p is not None and t >= args.p >= 2:
        verdict = "yes" if implies_perfect(t, args.p) else "no"
        print(f"implies-perfect: {verdict} (t={t}, p={args.p})")
    return 1 if failed else 0


def cmd_compose_ca(args) -> int:
    fam = _read_family(args.hf, args.t, args.p)
    arrays = [camod.parse_ca(Path(p).read_text()) for p in args.ca]
    if args.theorem == "phf":
        if len(arrays) != 1:
            raise ValueError("phf composition takes exactly one --ca")
        out = camod.compose_phf(fam, arrays[0])
    elif args.theorem == "dhf":
        if len(arrays) != 1:
            raise ValueError("dhf composition takes exactly one --ca")
        out = camod.compose_dhf(fam, arrays[0], arrays[0].alphabet)
    elif args.theorem == "hetgen":
        out = camod.compose_hetgen(fam, arrays)
    else:
        raise ValueError(f"unknown theorem {args.theorem!r}")
    _emit_ca(out, args.out)
    return 0


def _table_path(args) -> str:
    path = args.file or os.environ.get("HASHFAM_TABLES")
    if not path:
        raise ValueError(
            "no table file: pass --file or set HASHFAM_TABLES")
    return path


def cmd_tables(args) -> int:
    path = _table_path(args)
    if args.action == "import-fixtures":
        table = (ExistenceTable.load(path) if Path(path).exists()
                 else ExistenceTable())
        count = table.import_fixtures()
        table.save(path)
        print(f"imported {count}")
        return 0
    table = ExistenceTable.load(path)
    if args.action == "record":
        needed = {"N": args.N, "k": args.k, "v": args.v, "t": args.t,
                  "p": args.p, "method": args.method}
        missing = [name for name, val in needed.items() if val is None]
        if missing:
            raise ValueError("record needs: " + ", ".join(missing))
        entry = TableEntry(args.N, args.k, args.v, args.t, args.p,
                           args.method, args.source)
        improved = table.record(entry)
        table.save(path)
        print("improved" if improved else "kept")
        return 0
    if args.action == "diff":
        print(table.diff_against_fixtures().describe())
        return 0
    if args.action == "export":
        sys.stdout.write(Path(path).read_text())
        return 0
    raise ValueError(f"unknown action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hashfam",
        description="Construct, verify, and compose hash families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build a family")
    p_con.add_argument("recipe", choices=[
        "easy", "dhhf3", "extend", "varbb", "dgen", "d1", "dn1", "dn2",
        "dn3", "dn4", "dn5", "l52", "blackburn"])
    p_con.add_argument("--widths", help="comma-separated factors (easy)")
    p_con.add_argument("--a1", type=int, help="first symbol count (dhhf3)")
    p_con.add_argument("--a2", type=int, help="second symbol count (dhhf3)")
    p_con.add_argument("--ingredient", action="append",
                       help="ingredient family file; for blackburn use "
                            "FILE:PLACEMENT with D for distinct rows")
    p_con.add_argument("--ing3", help="three-row ingredient file (l52)")
    p_con.add_argument("--ing2a", help="two-row ingredient file (l52)")
    p_con.add_argument("--ing2b", help="two-row ingredient file (l52)")
    p_con.add_argument("--covering", help="covering design file (blackburn)")
    p_con.add_argument("--ell", type=int, help="copy count (extend)")
    p_con.add_argument("-n", type=int, help="output row count (dn recipes)")
    p_con.add_argument("-m", type=int, help="point count (dgen)")
    p_con.add_argument("-d", type=int, help="strength margin (varbb, dgen)")
    p_con.add_argument("--alpha", type=int, help="iteration count (varbb)")
    p_con.add_argument("-k", type=int, help="adjoined column count")
    p_con.add_argument("--kappa", type=int,
                       help="ingredient column count (dn1; dn2/dn3 build "
                            "the cheapest product ingredient from it)")
    p_con.add_argument("--w", help="comma-separated ingredient row widths "
                                   "(dn2/dn3 product ingredient)")
    p_con.add_argument("--parts", type=int,
                       help="part budget claimed for file ingredients")
    p_con.add_argument("--trusted", action="store_true",
                       help="skip ingredient fractality validation")
    p_con.add_argument("-o", "--out", help="write to file instead of stdout")
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="check a family or covering")
    p_ver.add_argument("file")
    p_ver.add_argument("--mode", required=True,
                       choices=["dhhf", "phf", "fractal", "covering",
                                "sample"])
    p_ver.add_argument("-t", type=int, help="strength")
    p_ver.add_argument("-p", type=int, help="part budget")
    p_ver.add_argument("--samples", type=int, help="sample count")
    p_ver.add_argument("--seed", type=int, help="sampling seed")
    p_ver.add_argument("--threads", type=int, default=1)
    p_ver.set_defaults(func=cmd_verify)

    p_bnd = sub.add_parser("bounds", help="feasibility checks")
    p_bnd.add_argument("file")
    p_bnd.add_argument("-t", type=int, required=True, help="target strength")
    p_bnd.add_argument("-d", type=int,
                       help="singleton-cover depth (default t - rows)")
    p_bnd.add_argument("-p", type=int, help="part budget to reason about")
    p_bnd.set_defaults(func=cmd_bounds)

    p_cca = sub.add_parser("compose-ca",
                           help="column replacement into covering arrays")
    p_cca.add_argument("--theorem", required=True,
                       choices=["phf", "dhf", "hetgen"])
    p_cca.add_argument("--hf", required=True, help="hash-family file")
    p_cca.add_argument("--ca", action="append", required=True,
                       help="covering-array file (repeat for hetgen)")
    p_cca.add_argument("-t", type=int,
                       help="strength claimed for the hash family")
    p_cca.add_argument("-p", type=int,
                       help="part budget claimed for the hash family")
    p_cca.add_argument("-o", "--out", help="write to file instead of stdout")
    p_cca.set_defaults(func=cmd_compose_ca)

    p_tab = sub.add_parser("tables", help="best-known existence table")
    p_tab.add_argument("action", choices=["import-fixtures", "record",
                                          "diff", "export"])
    p_tab.add_argument("--file", help="table file (default $HASHFAM_TABLES)")
    p_tab.add_argument("-N", type=int, help="row count (record)")
    p_tab.add_argument("-k", type=int, help="column count (record)")
    p_tab.add_argument("-v", type=int, help="symbol count (record)")
    p_tab.add_argument("-t", type=int, help="strength (record)")
    p_tab.add_argument("-p", type=int, help="part budget (record)")
    p_tab.add_argument("--method", help="how the family was built (record)")
    p_tab.add_argument("--source", default="constructed",
                       help="provenance tag (record)")
    p_tab.set_defaults(func=cmd_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
