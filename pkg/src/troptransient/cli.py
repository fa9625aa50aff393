"""Command-line verification harness.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad input,
3 an iteration ran out of horizon.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import TropMatrix, fmt, scalar_mul
from .csr import csr_from_profile
from .errors import HorizonError, InputError, TropError
from .generate import generate_with_rank, random_irreducible
from .graph import Subgraph, cycle_arcs, is_irreducible, profile
from .io import load_factorization, load_matrix
from .pipeline import FORMAT_VERSION, analyze, value_text
from .schemes import SchemeChoice, weak_expansion
from .thresholds import (
    ThresholdQuery,
    exploration_penalty,
    tcr_reports,
    walk_existence_threshold,
    walk_reduction_threshold,
)

EXIT_OK, EXIT_ANOMALY, EXIT_INPUT, EXIT_HORIZON = 0, 1, 2, 3

CSV_COLUMNS = [
    "format_version",
    "matrix_id",
    "scheme",
    "d",
    "gamma",
    "g_hat",
    "sigma_hat",
    "sigma",
    "r",
    "lambda_A",
    "lambda_B",
    "T",
    "T1",
    "T2",
    "certified",
    "checks",
    "failures",
    "failed_checks",
    "status",
]


def parse_schemes(text: str) -> list:
    if text.strip().lower() == "all":
        return list(SchemeChoice)
    try:
        return [SchemeChoice.parse(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_weights(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        lo, hi = Fraction(lo), Fraction(hi)
    except ValueError:
        raise InputError(f"weights must look like LO..HI, got {text!r}") from None
    if lo > hi:
        raise InputError("weight range is empty")
    return lo, hi


def parse_subgraph(text: str, a: TropMatrix) -> Subgraph:
    """``critical`` | ``cycle:i,j,k`` | ``nodes:i,j[;arcs:i>j,...]``."""
    text = text.strip()
    try:
        if text == "critical":
            prof = profile(a)
            return prof.critical
        if text.startswith("cycle:"):
            nodes = [int(x) for x in text[6:].split(",")]
            if len(set(nodes)) != len(nodes):
                raise InputError("a cycle must not repeat nodes")
            return Subgraph.of(nodes, cycle_arcs(nodes))
        if text.startswith("nodes:"):
            parts = text.split(";")
            nodes = [int(x) for x in parts[0][6:].split(",") if x.strip()]
            if len(parts) > 1:
                if not parts[1].startswith("arcs:"):
                    raise InputError("expected 'arcs:' after ';'")
                arcs = []
                for tok in parts[1][5:].split(","):
                    if tok.strip():
                        i, j = tok.split(">")
                        arcs.append((int(i), int(j)))
            else:
                ns = set(nodes)
                arcs = [(i, j) for i, j, _ in a.arcs() if i in ns and j in ns]
            return Subgraph.of(nodes, arcs)
    except ValueError as exc:
        raise InputError(f"bad subgraph description {text!r}: {exc}") from None
    raise InputError(f"unknown subgraph description {text!r}")


# ---------------------------------------------------------------------------
# analyze


def _print_matrix(title, m, out):
    print(f"{title}:", file=out)
    for line in str(m).splitlines():
        print("  " + line, file=out)


def cmd_analyze(args, out=None) -> int:
    out = out or sys.stdout
    a = load_matrix(args.file)
    if not a.is_square or not is_irreducible(a):
        raise InputError("analyze needs a square irreducible matrix")
    fac = load_factorization(args.rank_file) if args.rank_file else None
    schemes = parse_schemes(args.scheme)
    prof = profile(a)
    print(f"d = {prof.node_count}, lambda = {fmt(prof.lam)}, cyclicity = {prof.cyclicity}", file=out)
    print(f"critical nodes = {sorted(prof.critical_nodes)}", file=out)
    print(f"critical arcs = {sorted(prof.critical_arcs)}", file=out)
    print(
        f"sigma = {prof.critical_cyclicity}, sigma_hat = {prof.max_critical_cyclicity}, "
        f"g_hat = {prof.max_critical_girth}, girth = {prof.girth}, "
        f"circumference = {prof.circumference}",
        file=out,
    )
    triple = csr_from_profile(a, prof)
    _print_matrix("C", triple.C, out)
    _print_matrix("S", triple.S, out)
    _print_matrix("R", triple.R, out)
    rows = analyze(a, schemes, fac, horizon=None)
    failures = 0
    for row in rows:
        exp = weak_expansion(a, SchemeChoice(row.scheme), prof)
        print(f"\nscheme {row.scheme}: removed = {list(row.removed)}, threshold = {value_text(row.threshold)}", file=out)
        _print_matrix("B", exp.b, out)
        print(f"T = {row.T}, T1 = {row.T1}, T2 = {row.T2} (t >= 0, literal)", file=out)
        for c in row.checks:
            if not c.applicable:
                verdict = "n/a"
                detail = c.reason
            else:
                verdict = "PASS" if c.passed else "FAIL"
                detail = f"{c.target} = {value_text(c.measured)} vs {value_text(c.bound)}"
            print(f"  [{verdict}] {c.name}: {detail}", file=out)
        failures += len(row.failures)
    print(f"\n{failures} failed check(s)", file=out)
    return EXIT_ANOMALY if failures else EXIT_OK


# ---------------------------------------------------------------------------
# campaign


def _campaign_one(job):
    idx, cfg = job
    rng = np.random.default_rng([cfg["seed"], idx])
    fac = None
    if cfg["rank"] is not None:
        a, fac = generate_with_rank(cfg["dim"], cfg["rank"], cfg["weights"], rng, cfg["gamma"])
    else:
        a = random_irreducible(
            cfg["dim"], rng, cfg["gamma"], cfg["weights"], cfg["density"], cfg["denominators"]
        )
    try:
        rows = analyze(a, cfg["schemes"], fac, matrix_id=idx)
    except HorizonError as exc:
        return idx, a, None, str(exc)
    return idx, a, rows, None


def _row_record(row) -> dict:
    fails = [c.name for c in row.failures]
    return {
        "format_version": FORMAT_VERSION,
        "matrix_id": row.matrix_id,
        "scheme": row.scheme,
        "d": row.d,
        "gamma": row.gamma,
        "g_hat": row.g_hat,
        "sigma_hat": row.sigma_hat,
        "sigma": row.sigma,
        "r": "" if row.r is None else row.r,
        "lambda_A": value_text(row.lambda_a),
        "lambda_B": value_text(row.lambda_b),
        "T": row.T,
        "T1": row.T1,
        "T2": row.T2,
        "certified": int(row.certified),
        "checks": sum(1 for c in row.checks if c.applicable),
        "failures": len(fails),
        "failed_checks": "|".join(fails),
        "status": "anomaly" if fails else "ok",
    }


def _check_record(c) -> dict:
    return {
        "name": c.name,
        "target": c.target,
        "measured": value_text(c.measured),
        "bound": value_text(c.bound),
        "applicable": c.applicable,
        "passed": c.passed,
        "reason": c.reason,
        "inputs": {k: value_text(v) for k, v in c.inputs.items()},
    }


def run_campaign(cfg: dict, jobs: int = 1) -> tuple:
    """Return (csv text, json object, anomalies, horizon failures)."""
    work = [(i, cfg) for i in range(cfg["samples"])]
    if jobs > 1 and work:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.map(_campaign_one, work, chunksize=max(1, len(work) // (4 * jobs)))
    else:
        results = [_campaign_one(w) for w in work]
    results.sort(key=lambda r: r[0])
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    records = []
    anomalies = horizon = 0
    for idx, a, rows, err in results:
        if rows is None:
            horizon += 1
            rec = {c: "" for c in CSV_COLUMNS}
            rec.update(format_version=FORMAT_VERSION, matrix_id=idx, status="horizon")
            writer.writerow(rec)
            records.append({"matrix_id": idx, "status": "horizon", "error": err})
            continue
        for row in rows:
            rec = _row_record(row)
            writer.writerow(rec)
            anomalies += rec["failures"] > 0
            full = dict(rec)
            full["removed"] = list(row.removed)
            full["threshold"] = value_text(row.threshold)
            full["matrix"] = a.tolist()
            full["bounds"] = [_check_record(c) for c in row.checks]
            records.append(full)
    config = {k: (value_text(v) if isinstance(v, Fraction) else v) for k, v in cfg.items()}
    config["schemes"] = [s.value for s in cfg["schemes"]]
    config["weights"] = [value_text(w) for w in cfg["weights"]]
    report = {
        "format_version": FORMAT_VERSION,
        "config": config,
        "anomalies": anomalies,
        "horizon_failures": horizon,
        "rows": records,
    }
    return buf.getvalue(), report, anomalies, horizon


def campaign_config(args) -> dict:
    if args.dim < 1:
        raise InputError("--dim must be positive")
    if args.samples < 0:
        raise InputError("--samples must be nonnegative")
    if args.gamma < 1 or args.gamma > args.dim:
        raise InputError("--gamma must lie in [1, dim]")
    if args.rank is not None and not args.gamma <= args.rank <= args.dim:
        raise InputError("--rank must lie in [gamma, dim]")
    if not 0 < args.density <= 1:
        raise InputError("--density must lie in (0, 1]")
    lo, hi = parse_weights(args.weights)
    if args.integer and (lo.denominator != 1 or hi.denominator != 1):
        raise InputError("--integer needs integer weight bounds")
    return {
        "dim": args.dim,
        "samples": args.samples,
        "seed": args.seed,
        "gamma": args.gamma,
        "rank": args.rank,
        "weights": (lo, hi),
        "density": args.density,
        "denominators": (1,) if args.integer else (1, 2, 3),
        "schemes": parse_schemes(args.scheme),
    }


def cmd_campaign(args, out=None) -> int:
    out = out or sys.stdout
    cfg = campaign_config(args)
    csv_text, report, anomalies, horizon = run_campaign(cfg, args.jobs)
    prefix = Path(args.out)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True)
    Path(f"{prefix}.csv").write_text(csv_text)
    Path(f"{prefix}.json").write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    print(
        f"{cfg['samples']} matrices, {anomalies} anomalous row(s), "
        f"{horizon} horizon failure(s) -> {prefix}.csv, {prefix}.json",
        file=out,
    )
    if horizon:
        return EXIT_HORIZON
    return EXIT_ANOMALY if anomalies else EXIT_OK


# ---------------------------------------------------------------------------
# thresholds


def cmd_thresholds(args, out=None) -> int:
    out = out or sys.stdout
    a = load_matrix(args.file)
    if not a.is_square:
        raise InputError("thresholds needs a square matrix")
    sub = parse_subgraph(args.subgraph, a)
    try:
        q = ThresholdQuery(a, sub, args.sigma)
    except TropError as exc:
        raise InputError(str(exc)) from None
    prof = profile(a)
    t_ex = walk_existence_threshold(q)
    norm = scalar_mul(-prof.lam, a)
    t_wr = walk_reduction_threshold(ThresholdQuery(norm, sub, args.sigma))
    print(f"subgraph nodes = {sorted(sub.nodes)}, arcs = {sorted(sub.arcs)}, sigma = {args.sigma}", file=out)
    print(f"T_ex = {t_ex} (lower bound for the cycle removal threshold)", file=out)
    print(f"T_wr = {t_wr} (on the normalized matrix)", file=out)
    for v in sorted(sub.nodes):
        try:
            ep = exploration_penalty(sub, args.sigma, v)
            print(f"  ep({v}) = {ep}", file=out)
        except TropError as exc:
            print(f"  ep({v}) undefined: {exc}", file=out)
    critical = sub.nodes <= prof.critical_nodes and sub.arcs <= prof.critical_arcs
    failures = 0
    for rep in tcr_reports(q):
        if not rep.applicable:
            print(f"  [n/a] {rep.name}: {rep.reason}", file=out)
            continue
        ok = rep.admits(t_ex)
        failures += not ok
        print(f"  [{'PASS' if ok else 'FAIL'}] {rep.name}: T_ex = {t_ex} vs {rep.value}", file=out)
        if critical:
            ok = rep.admits(t_wr)
            failures += not ok
            print(f"  [{'PASS' if ok else 'FAIL'}] {rep.name}: T_wr = {t_wr} vs {rep.value}", file=out)
    print(f"{failures} failed check(s)", file=out)
    return EXIT_ANOMALY if failures else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="troptransient", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="full analysis of one matrix file")
    an.add_argument("file")
    an.add_argument("--scheme", default="all", help="N, HA, CT, a comma list, or all")
    an.add_argument("--rank-file", default=None, help="JSON file with factors U and L")

    ca = sub.add_parser("campaign", help="randomized verification campaign")
    ca.add_argument("--dim", type=int, required=True)
    ca.add_argument("--samples", type=int, required=True)
    ca.add_argument("--seed", type=int, required=True)
    ca.add_argument("--gamma", type=int, default=1)
    ca.add_argument("--rank", type=int, default=None)
    ca.add_argument("--weights", default="-5..5")
    ca.add_argument("--integer", action=argparse.BooleanOptionalAction, default=True,
                    help="integer weights only (default); --no-integer adds halves and thirds")
    ca.add_argument("--density", type=float, default=0.5)
    ca.add_argument("--scheme", default="all")
    ca.add_argument("--out", required=True, help="report prefix; writes PREFIX.csv and PREFIX.json")
    ca.add_argument("--jobs", type=int, default=1)

    th = sub.add_parser("thresholds", help="walk thresholds of a subgraph")
    th.add_argument("file")
    th.add_argument("--subgraph", required=True, help="critical | cycle:i,j,k | nodes:i,j[;arcs:i>j,...]")
    th.add_argument("--sigma", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler = {"analyze": cmd_analyze, "campaign": cmd_campaign, "thresholds": cmd_thresholds}[args.command]
    try:
        return handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HorizonError as exc:
        print(f"horizon exhausted: {exc}", file=sys.stderr)
        return EXIT_HORIZON


if __name__ == "__main__":
    sys.exit(main())
