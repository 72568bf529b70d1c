"""Command line entry point: ``tetrasym <command> --category F ...``.

Reports go to stdout as JSON, a short summary to stderr.  Exit status is 0
when every check passes, 1 when some check fails and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .category import GroupRepCategory, load_category
from .exceptions import TetrasymError
from .hexagon import hexagon_solve
from .indicators import categorical_indicator, fs_decompose, fs_element_group
from .numeric import as_tol
from .report import SUITES, run_suite
from .rigidity import build_rigidity
from .tetrahedron import fsymbol_table, orbit_report


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tetrasym", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--category", required=True, help="preset name, presets/NAME, or JSON file")
        p.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-9 or TETRASYM_TOL)")
        return p

    v = add("verify", "run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    f = add("fsymbols", "export normalized F-coefficients and 6j-symbols")
    f.add_argument("--out", required=True)
    add("orbits", "S4-orbit census of admissible tetrahedra")
    add("indicators", "Frobenius-Schur indicators by both routes")
    h = add("hexagon", "search scalar braidings (pointed Z3 only)")
    h.add_argument("--lattice", type=int, default=36)
    return ap


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_verify(cat, args, tol) -> int:
    rep = run_suite(cat, args.suite, tol, args.seed)
    _emit(rep)
    for c in rep["checks"]:
        res = "n/a" if c["residual"] is None else f"{c['residual']:.2e}"
        print(f"{c['status']:4}  {c['id']:22} {res}  {c['details']}", file=sys.stderr)
    print(f"{cat.name}: {'PASS' if rep['passed'] else 'FAIL'}", file=sys.stderr)
    return 0 if rep["passed"] else 1


def _cmd_fsymbols(cat, args, tol) -> int:
    table = fsymbol_table(build_rigidity(cat, tol))
    with open(args.out, "w") as fh:
        json.dump(table, fh)
    _emit({"category": cat.name, "out": args.out, "tetrahedra": len(table)})
    print(f"wrote {len(table)} tetrahedra to {args.out}", file=sys.stderr)
    return 0


def _cmd_orbits(cat, args, tol) -> int:
    rep = orbit_report(cat)
    orbits = [
        {"representative": list(o.representative), "size": o.size, "members": sorted(list(s) for s in o.members)}
        for o in rep.orbits
    ]
    _emit({"category": cat.name, "admissible": rep.admissible, "orbit_count": rep.count,
           "ratio": rep.ratio, "sizes": rep.sizes, "orbits": orbits})
    print(f"{rep.admissible} admissible tetrahedra in {rep.count} orbits (ratio {rep.ratio:.4g})", file=sys.stderr)
    return 0


def _cmd_indicators(cat, args, tol) -> int:
    rig = build_rigidity(cat, tol)
    nu = {cat.names[p]: categorical_indicator(rig, p) for p in cat.labels}
    doc = {"category": cat.name, "indicators": nu, "chi": {cat.names[p]: rig.chi[p] for p in cat.labels}}
    ok = all(nu[cat.names[p]] == rig.chi[p] for p in cat.labels if cat.conj[p] == p)
    if isinstance(cat, GroupRepCategory):
        grp = fs_decompose(cat, fs_element_group(cat, tol), tol)
        doc["indicators_group_element"] = {cat.names[p]: grp[p] for p in cat.labels}
        ok = ok and all(grp[p] == nu[cat.names[p]] for p in cat.labels)
    doc["consistent"] = ok
    _emit(doc)
    print(" ".join(f"{k}:{v:+d}" for k, v in nu.items()), file=sys.stderr)
    return 0 if ok else 1


def _cmd_hexagon(cat, args, tol) -> int:
    res = hexagon_solve(cat, args.lattice, tol)
    sols = [[[[float(z.real), float(z.imag)] for z in row] for row in R] for R in res.solutions]
    _emit({"category": cat.name, "omega_index": res.omega_index, "lattice": res.lattice_order,
           "solutions": sols, "min_residual": res.min_residual})
    print(f"{len(sols)} braidings on the {args.lattice}-lattice, min residual {res.min_residual:.3g}",
          file=sys.stderr)
    return 0


COMMANDS = {
    "verify": _cmd_verify,
    "fsymbols": _cmd_fsymbols,
    "orbits": _cmd_orbits,
    "indicators": _cmd_indicators,
    "hexagon": _cmd_hexagon,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        tol = as_tol(args.tol)
        cat = load_category(args.category, tol)
        return COMMANDS[args.command](cat, args, tol)
    except (TetrasymError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
