"""Command-line interface: ``thetalg {closure,theta,verify,batch}``.

Exit codes: 0 all checks pass, 1 a check failed, 2 solver did not converge,
3 input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from thetalg.config import DEFAULT_TOLERANCES, Tolerances
from thetalg.exactalg import check_coherent_axioms
from thetalg.graphs import Graph, Graph6Error, named_graph, parse_graph6, read_graph6_lines, write_graph6
from thetalg.sdp import VARIANTS, solve_theta

EXIT_OK, EXIT_FAIL, EXIT_NOCONV, EXIT_INPUT = 0, 1, 2, 3
SCHEMA_ID = "thetalg.run-report/1"
CLOSURE_SCHEMA_ID = "thetalg.closure/1"
THETA_SCHEMA_ID = "thetalg.theta/1"
CHECKS = ("closure", "lemma0", "clique-coclique", "main-bound", "products", "sandwich")
BATCH_COLUMNS = [
    "graph", "n", "connected", "homogeneous_coherent", "one_walk_regular",
    "omega", "alpha", "theta", "theta_bar", "theta_minus_bar", "theta_plus",
    "product_theta", "product_theta_pm", "clique_coclique_pass", "products_pass",
    "passed", "error",
]


class InputError(ValueError):
    pass


def resolve_source(token: str) -> tuple[Graph, str]:
    """graph6 string, else a file holding one, else a ``name:p1,p2`` generator spec."""
    try:
        g = parse_graph6(token)
        return g, token
    except Graph6Error:
        pass
    if os.path.isfile(token):
        with open(token) as fh:
            for _, line in read_graph6_lines(fh):
                try:
                    return parse_graph6(line), line
                except Graph6Error as exc:
                    raise InputError(f"{token}: {exc}") from None
        raise InputError(f"{token}: no graph in file")
    name, _, params = token.partition(":")
    try:
        values = [int(p) for p in params.split(",") if p.strip()]
        return named_graph(name, values), token
    except ValueError as exc:
        raise InputError(f"cannot read graph source {token!r}: {exc}") from None


def _tolerances(args) -> Tolerances:
    changes = {}
    if getattr(args, "tol", None) is not None:
        changes["gap"] = args.tol
    if getattr(args, "max_iters", None) is not None:
        changes["max_iters"] = args.max_iters
    if getattr(args, "relax", None) is not None:
        changes["relax"] = args.relax
    return DEFAULT_TOLERANCES.with_(**changes)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="duality-gap tolerance (relative, default 1e-6)")
    p.add_argument("--max-iters", type=int, help="solver iteration cap (default 200000)")
    p.add_argument("--relax", type=float, help="over-relaxation parameter (default 1.6)")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_json_default)


def _json_default(x):
    try:
        return float(x)
    except (TypeError, ValueError):
        return str(x)


# closure -----------------------------------------------------------------------

def cmd_closure(args) -> int:
    g, gid = resolve_source(args.source)
    from thetalg.exactalg import wl_closure

    c = wl_closure(g)
    axioms = check_coherent_axioms(c)
    if args.json:
        doc = {"schema": CLOSURE_SCHEMA_ID, "graph": gid, **c.to_dict(axioms)}
        print(_dump(doc))
    else:
        kind = "homogeneous" if c.identity_index is not None else "non-homogeneous"
        print(f"graph {gid}: n={g.n}")
        print(f"classes: {c.d + 1} (d={c.d}), {kind}")
        print(f"class sizes: {list(c.sizes)}")
        print(f"graph classes: {sorted(c.graph_classes)}")
        print(f"axioms: {'ok' if axioms.ok else 'FAILED ' + str(axioms.witnesses)}")
    return EXIT_OK if axioms.ok else EXIT_FAIL


# theta ---------------------------------------------------------------------------

def cmd_theta(args) -> int:
    g, gid = resolve_source(args.source)
    tol = _tolerances(args)
    variants = [v for v in VARIANTS if getattr(args, v)] or ["lovasz"]
    results = {}
    base = None
    for v in variants:
        warm = base if v != "lovasz" else None
        results[v] = solve_theta(g, v, tol, warm_start=warm)
        if v == "lovasz":
            base = results[v]
    if args.json:
        print(_dump({"schema": THETA_SCHEMA_ID, "graph": gid, "n": g.n, "results": {v: r.to_dict() for v, r in results.items()}}))
    else:
        for v, r in results.items():
            p, d, gap = r.residuals
            flag = "" if r.converged else "  NOT CONVERGED"
            print(f"{v:10s} {r.value:.4f}  (primal {p:.1e}, dual {d:.1e}, gap {gap:.1e}, iters {r.iterations}){flag}")
    return EXIT_OK if all(r.converged for r in results.values()) else EXIT_NOCONV


# verify ---------------------------------------------------------------------------

def _jsonable(report) -> dict:
    return report if isinstance(report, dict) else report.to_dict()


def run_checks(g: Graph, gid: str, checks, tol: Tolerances) -> dict:
    """Structure detection plus every requested, applicable check; returns a RunReport dict."""
    from thetalg import oracle, verify

    t0 = time.perf_counter()
    s = verify.analyze(g, tol)
    timing = {}
    out = []

    def timed(name, fn):
        t = time.perf_counter()
        try:
            rep = fn()
        except verify.NotApplicable as exc:
            rep = {"check": name, "applicable": False, "reason": str(exc), "passed": True}
        except ValueError as exc:  # size caps
            rep = {"check": name, "applicable": False, "reason": str(exc), "passed": True}
        timing[name] = time.perf_counter() - t
        rep.setdefault("check", name)
        out.append(rep)
        return rep

    flags = s.flags()
    if "closure" in checks:
        timed("closure", lambda: {
            "check": "closure",
            "d": s.closure.d,
            "homogeneous": s.homogeneous,
            "graph_classes": sorted(s.closure.graph_classes),
            "axioms": s.axioms.to_dict(),
            "passed": s.axioms.ok,
        })
    if "lemma0" in checks:
        def lemma0():
            rep = {"check": "lemma0", "closure": verify.lemma0_check(s.closure)}
            if flags["one_walk_regular"]:
                rep["adjacency_algebra"] = verify.lemma0_check(s.basis)
            rep["passed"] = all(v["passed"] for k, v in rep.items() if isinstance(v, dict))
            rep["applicable"] = any(v.get("applicable") for k, v in rep.items() if isinstance(v, dict))
            return rep
        timed("lemma0", lemma0)
    if "clique-coclique" in checks:
        timed("clique_coclique", lambda: oracle.clique_coclique_check(g, flags, tol))
    if "main-bound" in checks:
        def main_bound():
            M, N = verify.clique_coclique_pair(g, tol)
            reports = verify.main_bound_checks(M, N, g, tol, s)
            applicable = {k: r for k, r in reports.items() if not isinstance(r, dict)}
            return {
                "check": "main_bound",
                "inputs": "clique/coclique characteristic vectors",
                "applicable": bool(applicable),
                "reports": {k: _jsonable(r) for k, r in reports.items()},
                "passed": all(r.holds for r in applicable.values()),
            }
        timed("main_bound", main_bound)
    if "products" in checks:
        def products():
            pr = verify.theta_product_check(g, tol, s)
            rep = pr.to_dict()
            if pr.qualifies and pr.converged:
                M, N = pr.thetas["theta"].X, pr.thetas["theta_bar"].X
                link = {}
                for k, r in verify.main_bound_checks(M, N, g, tol, s).items():
                    link[k] = r if isinstance(r, dict) else {
                        "equality_certified": r.certificate["equality_certified"],
                        "ratio": float(r.lhs),
                        "lemma2_residual": r.certificate["lemma2"].certificate["residual"],
                        "max_per_term": max((abs(float(x)) for x in r.per_term), default=0.0),
                    }
                rep["equality_link"] = link
            return rep
        timed("products", products)
    if "sandwich" in checks:
        timed("sandwich", lambda: verify.sandwich_check(g, tol))

    converged = all(r.get("converged", True) for r in out)
    passed = all(r["passed"] for r in out)
    out.sort(key=lambda r: r["passed"])  # failures first
    return {
        "schema": SCHEMA_ID,
        "graph": gid,
        "graph6": write_graph6(g) if g.n <= DEFAULT_TOLERANCES.graph6_cap else None,
        "n": g.n,
        "structure": flags,
        "checks": out,
        "passed": passed,
        "converged": converged,
        "timing": {"total": time.perf_counter() - t0, **timing},
        "tolerances": tol.to_dict(),
    }


def _exit_code(report: dict) -> int:
    if not report["converged"]:
        return EXIT_NOCONV
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _selected_checks(args) -> list[str]:
    chosen = [c for c in CHECKS if getattr(args, c.replace("-", "_"), False)]
    return list(CHECKS) if args.all or not chosen else chosen


def cmd_verify(args) -> int:
    g, gid = resolve_source(args.source)
    tol = _tolerances(args)
    report = run_checks(g, gid, _selected_checks(args), tol)
    if args.json:
        print(_dump(report))
    else:
        print(f"graph {gid}: n={g.n}  structure: " + ", ".join(k for k, v in report["structure"].items() if v))
        for r in report["checks"]:
            status = "PASS" if r["passed"] else "FAIL"
            if r.get("applicable") is False:
                status += " (not applicable: " + r.get("reason", "structure") + ")"
            print(f"  {status:4s} {r['check']}{_summary_line(r)}")
        print("result: " + ("PASS" if report["passed"] else "FAIL"))
    return _exit_code(report)


def _summary_line(r: dict) -> str:
    c = r["check"]
    if c == "clique_coclique":
        return f": omega*alpha = {r['omega']}*{r['alpha']} = {r['product']} <= {r['n']}"
    if c == "theta_products":
        p = r["products"]
        kind = "= n" if r["qualifies"] else ">= n"
        return (f": theta*theta_bar = {p['theta_theta_bar']:.2f}, "
                f"theta-_bar*theta+ = {p['theta_minus_bar_theta_plus']:.2f} ({kind}, n={r['n']})")
    if c == "sandwich":
        ch = r["chain"]
        return ": " + " <= ".join(f"{k}={v:.4f}" for k, v in ch.items())
    if c == "closure":
        return f": d={r['d']}, {'homogeneous' if r['homogeneous'] else 'non-homogeneous'}"
    return ""


# batch -------------------------------------------------------------------------------

def _batch_row(job) -> dict:
    lineno, token, checks, tol = job
    row = {k: None for k in BATCH_COLUMNS}
    row["graph"] = token
    try:
        g = parse_graph6(token)
    except Graph6Error as exc:
        row.update(passed=False, error=f"parse-error (line {lineno}): {exc}")
        return row
    row["n"] = g.n
    try:
        rep = run_checks(g, token, checks, tol)
    except Exception as exc:  # a row failure must not stop the batch
        row.update(passed=False, error=f"{type(exc).__name__}: {exc}")
        return row
    st = rep["structure"]
    row.update(connected=st["connected"], homogeneous_coherent=st["homogeneous_coherent"],
               one_walk_regular=st["one_walk_regular"], passed=rep["passed"])
    for r in rep["checks"]:
        if r["check"] == "clique_coclique":
            row.update(omega=r["omega"], alpha=r["alpha"], clique_coclique_pass=r["passed"])
        elif r["check"] == "products":
            v, p = r["values"], r["products"]
            row.update(theta=v["theta"], theta_bar=v["theta_bar"], theta_minus_bar=v["theta_minus_bar"],
                       theta_plus=v["theta_plus"], product_theta=p["theta_theta_bar"],
                       product_theta_pm=p["theta_minus_bar_theta_plus"], products_pass=r["passed"])
            if not r["converged"]:
                row["error"] = "solver did not converge"
    return row


def cmd_batch(args) -> int:
    try:
        with open(args.file) as fh:
            lines = list(read_graph6_lines(fh))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    tol = _tolerances(args)
    checks = [c.strip() for c in args.checks.split(",")] if args.checks != "all" else list(CHECKS)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        print(f"error: unknown checks {sorted(unknown)}", file=sys.stderr)
        return EXIT_INPUT
    jobs = [(lineno, tok, checks, tol) for lineno, tok in lines]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_batch_row, jobs, chunksize=4))
    else:
        rows = [_batch_row(j) for j in jobs]
    npass = sum(1 for r in rows if r["passed"])
    summary = {"total": len(rows), "passed": npass, "failed": len(rows) - npass}
    out = sys.stdout
    if args.format == "json":
        for r in rows:
            out.write(json.dumps(r, default=_json_default) + "\n")
        out.write(json.dumps({"summary": summary}) + "\n")
    else:
        w = csv.DictWriter(out, fieldnames=BATCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(v) for k, v in r.items()})
        out.write(f"# summary total={summary['total']} passed={summary['passed']} failed={summary['failed']}\n")
    if any(r["error"] == "solver did not converge" for r in rows):
        return EXIT_NOCONV
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return v


# entry point -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetalg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("closure", help="coherent closure of a graph and its axiom check")
    c.add_argument("source", help="graph6 string, file of graph6 lines, or name:p1,p2")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_closure)

    t = sub.add_parser("theta", help="Lovász / Schrijver / Szegedy theta values")
    t.add_argument("source")
    for v in VARIANTS:
        t.add_argument(f"--{v}", action="store_true")
    t.add_argument("--json", action="store_true")
    _add_solver_flags(t)
    t.set_defaults(func=cmd_theta)

    v = sub.add_parser("verify", help="run every applicable verification on one graph")
    v.add_argument("source")
    v.add_argument("--all", action="store_true", help="run every check (default when none named)")
    for name in CHECKS:
        v.add_argument(f"--{name}", action="store_true")
    v.add_argument("--json", action="store_true")
    _add_solver_flags(v)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("batch", help="verify every graph6 line of a file")
    b.add_argument("file")
    b.add_argument("--checks", default="clique-coclique,products",
                   help=f"comma list from {','.join(CHECKS)} or 'all'")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--jobs", type=int, default=1)
    _add_solver_flags(b)
    b.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, Graph6Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:  # size caps and malformed generator parameters
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
