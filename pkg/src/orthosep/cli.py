"""Command-line interface.

Exit codes: 0 every executed check passed, 1 a claim failed verification,
2 configuration error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import (BadDescriptor, BudgetExceeded, FieldTooLarge, NotAPrimePower,
                     NotFound, NotFoundWithinBudget, NotSeparating, PoolTooLarge)
from .gf import field_make
from .invariants import (custom_set, expand_set, minimal_set, set_chen, set_Tm, set_Tm2)
from .orbits import (default_budget, orbit_count_formula, orbit_partition,
                     orbit_reps_enumerate, orbit_size, type_breakdown)
from .separate import (beta_sep, expected_beta, gamma_sep_check, is_minimal, is_separating,
                       min_separating_subset, sigma_sep_bounded)

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3
SET_CHOICES = ("Tm", "Tm2", "chen", "T1-expanded", "minimal", "file")
CSV_COLUMNS = ("q", "m", "kappa", "gamma", "beta_sep", "set", "set_size",
               "separating", "minimal", "status")


class ConfigError(ValueError):
    pass


# -- set selection -----------------------------------------------------------------

def select_set(name: str, m: int, spec, set_file: str | None = None):
    """Return (InvariantSet, claimed property or None)."""
    if name == "Tm":
        # at q = 2 the H_ij collapse into T_i, so T_m is T_m^(2)
        return set_Tm(m, spec), "separating"
    if name == "Tm2":
        return set_Tm2(m, spec), "separating" if spec.q == 2 else None
    if name == "minimal":
        return minimal_set(m, spec), "separating"
    if name == "chen":
        return set_chen(m, spec), "separating" if spec.p == 2 else None
    if name == "T1-expanded":
        return expand_set(set_Tm(1, spec), m), "not-separating" if m >= 2 else "separating"
    if name == "file":
        if not set_file:
            raise ConfigError("--set file needs --set-file PATH")
        text = Path(set_file).read_text()
        return custom_set(Path(set_file).stem, text.splitlines(), m, spec), None
    raise ConfigError(f"unknown set {name!r}")


# -- commands ---------------------------------------------------------------------

def cmd_orbits(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    count = orbit_count_formula(args.m, spec.q)
    reps = orbit_reps_enumerate(args.m, spec, "grammar")
    report = {"q": spec.q, "m": args.m, **count.as_dict(), "grammar_count": len(reps),
              "types": type_breakdown(reps)}
    ok = len(reps) == count.kappa
    sizes = None
    if args.strategy in ("both", "brute"):
        try:
            part = orbit_partition(args.m, spec, args.budget)
        except BudgetExceeded:
            if args.strategy == "brute":
                raise
            report["brute_count"] = None
        else:
            report["brute_count"] = len(part)
            report["orbit_size_total"] = sum(part.values())
            report["strategies_agree"] = sorted(part) == [r.point.pair_codes() for r in reps]
            ok = ok and report["strategies_agree"] and sum(part.values()) == spec.q ** (2 * args.m)
            sizes = part
    rows = []
    for r in reps:
        d = r.describe()
        d["orbit_size"] = sizes[r.point.pair_codes()] if sizes else orbit_size(r.point)
        rows.append(d)
    report["reps"] = rows
    report["status"] = "PASS" if ok else "FAIL"
    return (EXIT_OK if ok else EXIT_MISMATCH), report


def cmd_verify(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    S, claim = select_set(args.set, args.m, spec, args.set_file)
    if args.minimality:
        try:
            rep = is_minimal(S)
        except NotSeparating:
            rep = is_separating(S)
    else:
        rep = is_separating(S)
    out = rep.as_dict()
    out["claim"] = claim
    ok = True
    if claim == "separating":
        ok = rep.separating and (not args.minimality or bool(rep.minimal))
    elif claim == "not-separating":
        ok = not rep.separating
    out["status"] = "PASS" if ok else "FAIL"
    if args.manifest:
        out["manifest"] = S.manifest()
    return (EXIT_OK if ok else EXIT_MISMATCH), out


def cmd_beta(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    try:
        rep = beta_sep(args.m, spec, args.max_degree)
    except NotFoundWithinBudget as exc:
        return EXIT_MISMATCH, {"q": spec.q, "m": args.m, "beta_sep": None, "error": str(exc),
                               "expected": expected_beta(spec.q), "status": "FAIL"}
    out = rep.as_dict()
    out["expected"] = expected_beta(spec.q)
    ok = rep.beta_sep == out["expected"]
    out["status"] = "PASS" if ok else "FAIL"
    return (EXIT_OK if ok else EXIT_MISMATCH), out


def cmd_sigma(args) -> tuple[int, dict]:
    rep = sigma_sep_bounded(field_make(args.q), args.max_m)
    out = rep.as_dict()
    out["status"] = "PASS" if rep.verified else "FAIL"
    return (EXIT_OK if rep.verified else EXIT_MISMATCH), out


def cmd_gamma(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    pool = select_set(args.pool, args.m, spec, args.set_file)[0] if args.pool else None
    rep = gamma_sep_check(args.m, spec, pool)
    out = rep.as_dict()
    ok = rep.bound_ok and not rep.pool_smaller_separating
    out["status"] = "PASS" if ok else "FAIL"
    return (EXIT_OK if ok else EXIT_MISMATCH), out


def cmd_search(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    pool, _ = select_set(args.set, args.m, spec, args.set_file)
    gamma = gamma_sep_check(args.m, spec).gamma
    out = {"q": spec.q, "m": args.m, "pool": pool.name, "pool_size": len(pool),
           "cap": args.cap, "gamma": gamma}
    try:
        found = min_separating_subset(pool, size_cap=args.cap)
    except NotFound:
        out.update(found=None, size=None, status="PASS")
        return EXIT_OK, out
    ok = len(found) >= gamma
    out.update(found=found.labels, size=len(found), status="PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_MISMATCH), out


def run_cell(q: int, m: int, budget: int) -> dict:
    """One grid cell of the reproduction table."""
    row = {"q": q, "m": m}
    try:
        spec = field_make(q)
        count = orbit_count_formula(m, q)
        row["kappa"] = count.kappa
        brute = len(orbit_partition(m, spec, budget))
        gamma = gamma_sep_check(m, spec)
        row["gamma"] = gamma.gamma
        beta = beta_sep(m, spec, expected_beta(q)).beta_sep
        row["beta_sep"] = beta
        S = minimal_set(m, spec)
        rep = is_minimal(S)
        row.update(set=S.name, set_size=len(S), separating=rep.separating, minimal=rep.minimal)
        ok = (brute == count.kappa and gamma.bound_ok and beta == expected_beta(q)
              and rep.separating and rep.minimal)
        row["status"] = "PASS" if ok else "FAIL"
    except (BudgetExceeded, NotSeparating, NotFoundWithinBudget) as exc:
        row["status"] = "SKIPPED" if isinstance(exc, BudgetExceeded) else "FAIL"
        row["note"] = str(exc)
    for c in CSV_COLUMNS:
        row.setdefault(c, None)
    return row


def cmd_tables(args) -> tuple[int, dict]:
    cells = [(q, m) for q in args.q_list for m in args.m_list]
    for q, _ in cells:
        field_make(q)  # config errors before any work
    if args.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(run_cell, *zip(*cells), [args.budget] * len(cells)))
    else:
        rows = [run_cell(q, m, args.budget) for q, m in cells]
    skipped = [r for r in rows if r["status"] == "SKIPPED"]
    if skipped:
        print(f"warning: {len(skipped)} cell(s) skipped over budget", file=sys.stderr)
    failed = any(r["status"] == "FAIL" for r in rows)
    return (EXIT_MISMATCH if failed else EXIT_OK), {"rows": rows}


def cmd_manifest(args) -> tuple[int, dict]:
    spec = field_make(args.q)
    S, _ = select_set(args.set, args.m, spec, args.set_file)
    return EXIT_OK, S.manifest()


# -- output -------------------------------------------------------------------------

def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def format_table(rows: list[dict], columns) -> str:
    grid = [list(columns)] + [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in grid) for i in range(len(columns))]
    lines = ["  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip() for row in grid]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: "" if r.get(c) is None else r.get(c) for c in columns})
    return buf.getvalue()


def render(command: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if command == "tables":
        rows, cols = report["rows"], CSV_COLUMNS
    elif command == "orbits" and fmt != "csv":
        head = {k: v for k, v in report.items() if k != "reps"}
        text = format_table([head], [k for k in head])
        return text + "\n\n" + format_table(report["reps"], ["point", "type", "orbit_size"]) + "\n"
    elif command == "orbits":
        rows, cols = report["reps"], ["point", "type", "orbit_size"]
    elif command == "manifest":
        rows, cols = report["members"], ["label", "poly"]
        if fmt != "csv":
            title = f"{report['name']} over GF({report['q']}), m={report['m']}, {report['size']} members"
            return title + "\n\n" + format_table(rows, cols) + "\n"
    elif command == "verify" and fmt != "csv":
        head = {k: v for k, v in report.items() if k not in ("witnesses", "manifest")}
        text = format_table([head], list(head))
        if report["witnesses"]:
            text += "\n\n" + format_table(report["witnesses"],
                                          ["removed", "u", "v", "fingerprint", "same_orbit"])
        return text + "\n"
    else:
        rows, cols = [report], [k for k in report if not isinstance(report[k], (list, dict))]
    if fmt == "csv":
        return format_csv(rows, cols)
    return format_table(rows, cols) + "\n"


# -- argument parsing ---------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthosep",
        description="Orbits and separating invariants of O_2^+(F_q) on m-tuples of plane vectors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--budget", type=int, default=None,
                        help="brute-force enumeration bound on q^(2m) (env ORTHOSEP_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    def qm(p, m=True):
        p.add_argument("--q", type=int, required=True)
        if m:
            p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("orbits", parents=[common], help="enumerate and count orbits")
    qm(p)
    p.add_argument("--strategy", choices=("both", "grammar", "brute"), default="both")

    for name, helptext in (("verify", "certify a separating set"),
                           ("search", "smallest separating subset of a pool"),
                           ("manifest", "print an invariant set")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        qm(p)
        p.add_argument("--set", choices=SET_CHOICES, default="minimal")
        p.add_argument("--set-file")
        if name == "verify":
            p.add_argument("--minimality", action="store_true")
            p.add_argument("--manifest", action="store_true", help="include the set's members")
        if name == "search":
            p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("beta", parents=[common], help="compute beta_sep")
    qm(p)
    p.add_argument("--max-degree", type=int, default=None)

    p = sub.add_parser("sigma", parents=[common], help="check sigma_sep = 2 up to a bound")
    qm(p, m=False)
    p.add_argument("--max-m", type=int, default=3)

    p = sub.add_parser("gamma", parents=[common], help="check ceil(log_q kappa) <= 2m")
    qm(p)
    p.add_argument("--pool", choices=SET_CHOICES, default=None)
    p.add_argument("--set-file")

    p = sub.add_parser("tables", parents=[common], help="reproduction grid")
    p.add_argument("--q", dest="q_list", type=_int_list, default=[2, 3, 4, 5])
    p.add_argument("--m", dest="m_list", type=_int_list, default=[1, 2, 3])
    p.add_argument("--workers", type=int, default=1)
    return parser


COMMANDS = {"orbits": cmd_orbits, "verify": cmd_verify, "beta": cmd_beta, "sigma": cmd_sigma,
            "gamma": cmd_gamma, "search": cmd_search, "tables": cmd_tables,
            "manifest": cmd_manifest}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    if getattr(args, "m", 1) < 1:
        print("error: --m must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "beta" and args.max_degree is None:
        args.max_degree = expected_beta(args.q) + 1 if args.q >= 2 else 2
    if args.command == "sigma" and args.max_m < 2:
        print("error: --max-m must be at least 2", file=sys.stderr)
        return EXIT_CONFIG
    t0 = time.perf_counter()
    try:
        code, report = COMMANDS[args.command](args)
    except (NotAPrimePower, FieldTooLarge, ConfigError, BadDescriptor, PoolTooLarge,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.command != "tables" and args.command != "manifest":
        report.setdefault("runtime_ms", round((time.perf_counter() - t0) * 1000, 3))
    text = render(args.command, report, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
