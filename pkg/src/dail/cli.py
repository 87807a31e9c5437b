"""Command line: ``dail run``, ``dail analyze`` and ``dail verify``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .experiments import (
    DEFAULT_SEEDS,
    PRESETS,
    apply_overrides,
    default_output_dir,
    parse_overrides,
    run_experiment,
)
from .latin import generate_mols, is_prime
from .oracle import OracleConfig, exhaustive_theorem_check, monte_carlo_lambda


def _seeds(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-")
            out += list(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def cmd_run(args) -> int:
    preset = PRESETS[args.preset]
    if args.config:
        preset = apply_overrides(preset, parse_overrides(Path(args.config).read_text()))
    out = Path(args.out) if args.out else default_output_dir() / f"{args.preset}_summary.csv"
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "a"):
            pass
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return 2
    res = run_experiment(preset, args.seeds, out, workers=args.workers, per_run_dir=args.per_run_dir)
    print(f"wrote {out}")
    if res.violations:
        print(f"collision-bound violations ({len(res.violations)}):", file=sys.stderr)
        for v in res.violations[:10]:
            print("  " + v, file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args) -> int:
    try:
        p = analysis.AnalyticalParams(args.q, args.m, args.k, args.omega, args.family_size)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lo, hi = analysis.collision_bounds(p.Q, p.K)
    est, se = monte_carlo_lambda(OracleConfig(p, trials=args.trials, seed=args.seed))
    variants = analysis.VARIANTS if args.strict_eq12 else tuple(v for v in analysis.VARIANTS if v != "strict")
    print(f"Q={p.Q} M={p.M} K={p.K} omega={p.omega} m={p.m} Z={p.Z}")
    print(f"collision bounds per superframe: ({lo}, {hi})")
    print(f"{'variant':<12}{'lambda':>12}{'|diff|/se':>12}  note")
    for v in variants:
        lam = analysis.success_probability(p, v, check=False)
        note = "" if 0.0 <= lam <= 1.0 + 1e-12 else "outside [0, 1]"
        z = abs(lam - est) / se if se > 0 else (0.0 if abs(lam - est) < 1e-12 else float("inf"))
        print(f"{v:<12}{lam:>12.6f}{z:>12.2f}  {note}")
    print(f"{'monte-carlo':<12}{est:>12.6f}{'':>12}  se={se:.2e}, 95% CI [{est - 1.96 * se:.6f}, {est + 1.96 * se:.6f}]")
    return 0


def _corrupt(grid: np.ndarray) -> np.ndarray:
    g = grid.copy()
    g[0, 0], g[0, 1] = g[0, 1], g[0, 0]
    return g


def cmd_verify(args) -> int:
    checks = []
    for q in range(2, args.max_prime + 1):
        if is_prime(q):
            fam = [s.grid for s in generate_mols(q)]
            checks.append((f"order {q}, full squares", fam, q, q))
    if args.max_prime >= 17:
        fam = [s.grid for s in generate_mols(17)]
        checks.append(("order 17 cut to 16x12", fam, 16, 12))
    if args.inject_fault and checks:
        name, fam, r, c = checks[-1]
        fam = [_corrupt(fam[0])] + fam[1:]
        checks[-1] = (name + " (square 0 corrupted: cells (0,0) and (0,1) swapped)", fam, r, c)
    failed = False
    for name, fam, r, c in checks:
        rep = exhaustive_theorem_check(fam, r, c)
        status = "ok" if rep.ok else f"FAIL ({len(rep.violations)} violations)"
        print(f"{name}: {rep.pairs_checked} pattern pairs, {status}")
        if not rep.ok:
            print(f"  first counterexample: {rep.violations[0]}")
            failed = True
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dail", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a preset sweep and write a summary CSV")
    r.add_argument("--preset", required=True, choices=sorted(PRESETS))
    r.add_argument("--seeds", type=_seeds, default=list(DEFAULT_SEEDS), help="e.g. 0-9 or 1,5,7")
    r.add_argument("--out", help="summary CSV path (default: $DAIL_OUTPUT_DIR/<preset>_summary.csv)")
    r.add_argument("--config", help="key=value override file")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--per-run-dir", help="also write per-superframe CSVs here")
    r.set_defaults(func=cmd_run)

    a = sub.add_parser("analyze", help="closed-form success probability next to a Monte Carlo estimate")
    a.add_argument("--q", type=int, required=True, help="interfering neighbours Q")
    a.add_argument("--m", type=int, required=True, help="channels M")
    a.add_argument("--k", type=int, required=True, help="slots per superframe K")
    a.add_argument("--omega", type=float, required=True)
    a.add_argument("--family-size", type=int, required=True, help="orthogonal family size m")
    a.add_argument("--trials", type=int, default=200_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--strict-eq12", action="store_true", help="also show the C(Q+1,x), C(K+1,y) coefficients")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="exhaustive pattern-overlap check of generated families")
    v.add_argument("--max-prime", type=int, default=17)
    v.add_argument("--inject-fault", action="store_true", help="corrupt one square to exercise the failure path")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
