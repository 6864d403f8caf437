"""Command-line front end: ``finsubset {sphere,surface,exp3,clipped,oracle}``.

Exit codes: 0 success, 1 failed internal check, 2 invalid arguments,
3 resource ceiling reached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import lexcell, ssoracle, surface, symring
from .intalg import AbelianGroup, CompositionNotZero
from .partitions import InvalidArgument

EXIT_OK, EXIT_CHECK, EXIT_ARGS, EXIT_CEILING = 0, 1, 2, 3
SPHERE_LIMIT = {"Z": 9, "Q": 12}
CSV_FIELDS = ["command", "params", "dim", "group", "free_rank", "torsion"]


class CheckFailed(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"3-6"``, ``"3..6"`` or ``"2,4,7"`` to a sorted list of ints."""
    out = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        sep = ".." if ".." in chunk else ("-" if "-" in chunk.lstrip("-") else None)
        try:
            if sep:
                lo, hi = (int(x) for x in chunk.split(sep, 1))
                if hi < lo:
                    raise argparse.ArgumentTypeError(f"empty range {chunk!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(chunk))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer range: {chunk!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("range is empty")
    return sorted(out)


def _group_text(g: AbelianGroup, ring: str) -> str:
    if ring == "Q":
        r = g.free_rank
        return "0" if r == 0 else ("Q" if r == 1 else f"Q^{r}")
    return str(g)


def _groups_json(groups: dict, ring: str = "Z") -> dict:
    return {str(d): {"group": _group_text(g, ring), "free_rank": g.free_rank,
                     "torsion": list(g.torsion)}
            for d, g in sorted(groups.items())}


def make_record(command: str, title: str, params: dict, groups: dict, extra=None,
                ring: str = "Z", cohomology: bool = False) -> dict:
    rec = {"command": command, "title": title, "params": params,
           "groups": _groups_json(groups, ring), "extra": dict(extra or {})}
    if cohomology:
        rec["grading"] = "cohomology"
    return rec


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in records:
            params = ";".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
            for d, g in r["groups"].items():
                w.writerow({"command": r["command"], "params": params, "dim": d,
                            "group": g["group"], "free_rank": g["free_rank"],
                            "torsion": ";".join(map(str, g["torsion"]))})
        return buf.getvalue()
    lines = []
    for r in records:
        lines.append(f"# {r['title']}")
        h = "H^" if r.get("grading") == "cohomology" else "H_"
        for d, g in sorted(r["groups"].items(), key=lambda kv: int(kv[0])):
            lines.append(f"{h}{d} = {g['group']}")
        for key, val in r["extra"].items():
            lines.append(f"{key} = {val}")
    return "\n".join(lines) + "\n"


def cmd_sphere(args) -> list[dict]:
    coeff = args.coeff.upper()
    limit = SPHERE_LIMIT[coeff]
    for k in args.k:
        if not 1 <= k <= limit:
            raise InvalidArgument(f"sphere needs 1 <= k <= {limit} over {coeff}, got {k}")
    records = []
    for k in args.k:
        cx = lexcell.build_complex(k, args.based, args.faces)
        if not cx.check_d_squared():
            raise CheckFailed(f"boundary squares to nonzero for k={k}")
        chi = cx.euler_characteristic()
        expected = 2 if args.based else 3
        if k >= 2 and args.faces == 1 and chi != expected:
            raise CheckFailed(f"Euler characteristic {chi} != {expected} for k={k}")
        h = cx.homology(coeff, check=False)
        label = "based" if args.based else "unbased"
        wedge = "S^2" if args.faces == 1 else f"wedge of {args.faces} S^2"
        records.append(make_record(
            "sphere", f"Exp_{k} {wedge}, {label}, coefficients {coeff}",
            {"k": k, "based": int(args.based), "coeff": coeff, "faces": args.faces},
            h, {"chi": chi}, ring=coeff))
    return records


def cmd_surface(args) -> list[dict]:
    records = []
    for g in args.genus:
        spec = surface.SurfaceSpec(orientable=not args.non_orientable, genus=g)
        for k in args.k:
            top, nxt = surface.top_homology(spec, k)
            ts = surface.top_slice_complex(spec, k)
            if not (ts.d_next @ ts.d_top).is_zero():
                raise CheckFailed(f"boundary squares to nonzero for {spec.name()}, k={k}")
            records.append(make_record(
                "surface", f"Exp_{k} of {spec.name()} surface, top two degrees",
                {"genus": g, "orientable": int(spec.orientable), "k": k},
                {2 * k: top, 2 * k - 1: nxt}))
    return records


def cmd_exp3(args) -> list[dict]:
    records = []
    for g in args.genus:
        if g < 0:
            raise InvalidArgument(f"genus must be nonnegative, got {g}")
        table = symring.exp3_cohomology(g)
        extra = {}
        if args.check_euler:
            try:
                extra["chi"] = symring.euler_exp3(g, table)
            except symring.CrossCheckFailed as e:
                raise CheckFailed(str(e)) from None
            extra["chi_closed_form"] = str(symring.euler_closed_form(g))
            extra["chi_from_pieces"] = str(symring.euler_from_pieces(g))
        else:
            extra["chi"] = sum((-1) ** i * h.free_rank for i, h in enumerate(table))
        records.append(make_record(
            "exp3", f"cohomology H^i of Exp_3 of the genus {g} orientable surface",
            {"genus": g}, dict(enumerate(table)), extra, cohomology=True))
    return records


def cmd_clipped(args) -> list[dict]:
    records = []
    for k in args.k:
        if k < 1:
            raise InvalidArgument(f"k must be positive, got {k}")
        cx = lexcell.clipped_cube(k, args.rational)
        if not cx.check_d_squared():
            raise CheckFailed(f"clipped cube boundary squares to nonzero for k={k}")
        ranks = lexcell.clipped_cube_ranks(k, args.rational)
        hq = cx.homology("Q", check=False)
        hz = cx.homology("Z", check=False)
        exact_q = all(hq[k + l].free_rank == 0 for l in range(1, k - 1))
        # a composition of length l sits in dimension k + l
        groups = {k + l: hz[k + l] for l in range(1, k + 1)}
        extra = {"boundary_rank_by_length": " ".join(f"{l}:{ranks[l]}" for l in sorted(ranks)),
                 "exact_over_Q_below_k-1": "yes" if exact_q else "no"}
        records.append(make_record(
            "clipped", f"clipped cube on compositions of {k} "
            f"({'rational' if args.rational else 'integer'} basis)",
            {"k": k, "rational": int(args.rational)}, groups, extra))
    return records


def cmd_oracle(args) -> list[dict]:
    records = []
    if args.triangulation:
        base = ssoracle.FiniteSimplicialSet.from_file(args.triangulation)
        for k in args.k:
            ex = ssoracle.exp_simplicial(base, k, max_dim=args.max_dim, ceiling=args.ceiling)
            counts = ex.counts()
            h = {} if args.counts_only else ssoracle.normalized_homology(ex)
            records.append(make_record(
                "oracle", f"Exp_{k} of {base.name} (simplicial oracle)",
                {"triangulation": base.name, "k": k}, h,
                {"simplices": sum(counts.values()),
                 "by_dim": " ".join(f"{d}:{c}" for d, c in counts.items())}))
        return records
    for k in args.k:
        if args.counts_only:
            base = ssoracle.sphere_one_cell() if args.space.upper() == "S2-MIN" else \
                ssoracle.shipped(ssoracle.SPACES.get(args.space.upper(), "s2"))
            top = k * base.dimension() if args.max_dim is None else args.max_dim
            counts = {n: ssoracle.candidate_count(base, k, n) for n in range(top + 1)}
            records.append(make_record(
                "oracle", f"nondegenerate simplex counts of Exp_{k}({base.name})",
                {"space": args.space.upper(), "k": k}, {},
                {"simplices": sum(counts.values()),
                 "by_dim": " ".join(f"{d}:{c}" for d, c in counts.items() if c)}))
            continue
        rep = ssoracle.oracle_compare(args.space, k, ceiling=args.ceiling)
        if not rep.ok:
            raise CheckFailed(f"oracle disagrees with the cellular prediction: {rep.as_dict()}")
        records.append(make_record(
            "oracle", f"Exp_{k} of {args.space.upper()}: simplicial oracle vs cellular prediction",
            {"space": args.space.upper(), "k": k}, rep.oracle,
            {"match": "yes", "simplices": sum(rep.counts.values())}))
    return records


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finsubset",
                                description="Homology of finite subset spaces of spheres and surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
        sp.add_argument("--output", "-o", help="write the report to this file")

    sp = sub.add_parser("sphere", help="homology of Exp_k of the 2-sphere (or a wedge)")
    sp.add_argument("--k", type=parse_range, required=True)
    sp.add_argument("--based", action="store_true", help="subsets containing the basepoint")
    sp.add_argument("--coeff", type=str.upper, choices=["Z", "Q"], default="Z")
    sp.add_argument("--faces", type=int, default=1, help="number of 2-spheres in the wedge")
    common(sp)
    sp.set_defaults(func=cmd_sphere)

    sp = sub.add_parser("surface", help="top two homology groups of Exp_k of a closed surface")
    sp.add_argument("--genus", type=parse_range, required=True)
    sp.add_argument("--non-orientable", action="store_true")
    sp.add_argument("--k", type=parse_range, required=True)
    common(sp)
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("exp3", help="cohomology of Exp_3 of an orientable surface")
    sp.add_argument("--genus", type=parse_range, required=True)
    sp.add_argument("--check-euler", action="store_true",
                    help="compare the Euler characteristic with two closed formulas")
    common(sp)
    sp.set_defaults(func=cmd_exp3)

    sp = sub.add_parser("clipped", help="the clipped cube complex on compositions of k")
    sp.add_argument("--k", type=parse_range, required=True)
    sp.add_argument("--rational", action="store_true", help="use the rational basis")
    common(sp)
    sp.set_defaults(func=cmd_clipped)

    sp = sub.add_parser("oracle", help="simplicial-set cross-check")
    sp.add_argument("--space", type=str.upper, choices=["S2", "T2", "RP2", "S2-MIN"], default="S2")
    sp.add_argument("--triangulation", help="file listing maximal simplices, one per line")
    sp.add_argument("--k", type=parse_range, required=True)
    sp.add_argument("--max-dim", type=int, default=None)
    sp.add_argument("--ceiling", type=int, default=None,
                    help=f"simplex budget (default ${ssoracle.CEILING_ENV} or 5e7)")
    sp.add_argument("--counts-only", action="store_true",
                    help="only count nondegenerate simplices")
    common(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ARGS if e.code not in (0, None) else EXIT_OK
    try:
        records = args.func(args)
    except (InvalidArgument, surface.UnsupportedCell, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    except ssoracle.ResourceBound as e:
        print(f"resource ceiling: {e}", file=sys.stderr)
        return EXIT_CEILING
    except (CheckFailed, CompositionNotZero) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    text = render(records, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parse_json_report(text: str) -> list[dict]:
    """Inverse of the JSON rendering."""
    return json.loads(text)


def group_from_record(entry: dict) -> AbelianGroup:
    return AbelianGroup(entry["free_rank"], tuple(entry["torsion"]))
