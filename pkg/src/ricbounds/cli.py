"""Command-line front end.

Subcommands: bounds (single point), grid (surface sweep), finite (tail
probabilities at concrete sizes), empirical (sampled estimates vs theory),
phase (l1 recovery curve), cover (random covering simulation).

Output contract: human-readable text by default, a versioned JSON envelope
with --json, CSV/SVG artifacts via --format/--out.  Numeric CSV fields use
shortest round-trip formatting.  Every randomized command is replay
deterministic given --seed.

Exit codes: 0 success, 2 domain error, 3 solver failure, 4 guard refusal,
5 I/O failure.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import asymptotic, covering, empirical, finite
from .errors import DomainError, GuardError, IOFailure, RicBoundsError, SolverError
from .svgfig import curve_svg, heatmap_svg

SCHEMA_VERSION = "1"

GRID_COLUMNS = [
    "delta",
    "rho",
    "family",
    "L",
    "U",
    "lambda_min",
    "lambda_max",
    "gamma_min",
    "gamma_max",
    "nu_opt",
]


def _num(x) -> str:
    """Shortest decimal that round-trips the value; empty for missing."""
    if x is None:
        return ""
    if isinstance(x, bool) or isinstance(x, int):
        return str(x)
    return repr(float(x))


def _rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [_num(v) if isinstance(v, (int, float)) or v is None else str(v)
             for v in (row.get(c) for c in columns)]
        )
    return buf.getvalue()


def _write_out(content: str, out: str | None) -> None:
    if out is None:
        click.echo(content, nl=not content.endswith("\n"))
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(content)
    except OSError as exc:
        raise IOFailure(f"cannot write {out}: {exc}") from exc


def _emit(ctx, command: str, params: dict, results, *, csv_text=None, svg_text=None, text=None):
    opts = ctx.obj
    if opts["json"] or opts["format"] == "json":
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "seed": opts["seed"],
            "wall_time_s": time.monotonic() - opts["t0"],
            "results": results,
        }
        _write_out(json.dumps(envelope, indent=2, allow_nan=True), opts["out"])
    elif opts["format"] == "svg" and svg_text is not None:
        _write_out(svg_text, opts["out"])
    elif opts["format"] == "csv" and csv_text is not None:
        _write_out(csv_text, opts["out"])
    else:
        _write_out(text if text is not None else json.dumps(results, indent=2), opts["out"])


@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON envelope instead of text.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output to a file.")
@click.option("--seed", type=int, default=0, show_default=True, help="Root RNG seed.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads for sweeps.")
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json", "svg"]), default="csv",
    show_default=True, help="Artifact format for tabular commands.",
)
@click.pass_context
def cli(ctx, as_json, out, seed, threads, fmt):
    """Probabilistic bounds on restricted isometry constants of Gaussian
    matrices: asymptotic bound families, finite-size tail probabilities,
    empirical estimates, covering simulations, and recovery phase curves."""
    ctx.obj = {
        "json": as_json,
        "out": out,
        "seed": seed,
        "threads": max(1, threads),
        "format": fmt,
        "t0": time.monotonic(),
    }


def _bound_record(b: asymptotic.AsymptoticBound) -> dict:
    rec = {
        "delta": b.delta,
        "rho": b.rho,
        "family": b.family,
        "L": b.L,
        "U": b.U,
        "lambda_min": b.lambda_min,
        "lambda_max": b.lambda_max,
        "log_lambda_min": b.log_lambda_min,
        "gamma_min": b.gamma_min,
        "gamma_max": b.gamma_max,
        "nu_opt": b.nu_opt,
    }
    if b.family == "BT":
        rec["stationarity_residual_upper"] = _stationarity_residual(b, "upper")
        rec["stationarity_residual_lower"] = _stationarity_residual(b, "lower")
        rec["boundary_upper"] = b.boundary_upper
        rec["boundary_lower"] = b.boundary_lower
    return rec


def _stationarity_residual(b: asymptotic.AsymptoticBound, side: str) -> float | None:
    """Log-form residual of the first-order condition; None at boundary
    optima or when gamma - rho vanishes in double precision."""
    if side == "upper":
        if b.boundary_upper or b.gamma_min is None:
            return None
        diff = b.gamma_min - b.rho
        if diff <= 0.0:
            return None
        return abs(
            math.log(b.lambda_max) + 2.0 * math.log(diff) - 3.0 * math.log(b.gamma_min)
        )
    if b.boundary_lower or b.gamma_max is None:
        return None
    diff = b.gamma_max - b.rho
    if diff <= 0.0:
        return None
    return abs(
        3.0 * math.log(b.gamma_max)
        + b.log_lambda_min
        - 2.0 * math.log1p(-b.gamma_max)
        - 2.0 * math.log(diff)
    )


@cli.command()
@click.argument("delta", type=float)
@click.argument("rho", type=float)
@click.option("--family", type=click.Choice(asymptotic.FAMILIES), default="BT", show_default=True)
@click.pass_context
def bounds(ctx, delta, rho, family):
    """Bound values at a single (DELTA, RHO) point."""
    b = asymptotic.compute_bounds(family, delta, rho)
    rec = _bound_record(b)
    lines = [f"{family} bounds at delta={delta:g}, rho={rho:g}"]
    for key in ("L", "U", "lambda_min", "lambda_max"):
        lines.append(f"  {key:<12} {rec[key]:.6e}")
    for key in ("gamma_min", "gamma_max", "nu_opt"):
        if rec.get(key) is not None:
            lines.append(f"  {key:<12} {rec[key]:.6e}")
    for key in ("stationarity_residual_upper", "stationarity_residual_lower"):
        if rec.get(key) is not None:
            lines.append(f"  {key} {rec[key]:.3e}")
    _emit(ctx, "bounds", {"delta": delta, "rho": rho, "family": family}, rec,
          text="\n".join(lines))


def _linspace(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _parse_families(text: str) -> list[str]:
    fams = [f.strip().upper() for f in text.split(",") if f.strip()]
    for f in fams:
        if f not in asymptotic.FAMILIES:
            raise DomainError(f"unknown family {f!r}; expected subset of {asymptotic.FAMILIES}")
    if not fams:
        raise DomainError("at least one family required")
    return fams


@cli.command()
@click.option("--delta-min", type=float, default=0.05, show_default=True)
@click.option("--delta-max", type=float, default=0.9524, show_default=True)
@click.option("--delta-steps", type=int, default=20, show_default=True)
@click.option("--rho-min", type=float, default=0.05, show_default=True)
@click.option("--rho-max", type=float, default=0.95, show_default=True)
@click.option("--rho-steps", type=int, default=20, show_default=True)
@click.option("--families", default="BT", show_default=True, help="Comma-separated subset of BT,BCT,CT.")
@click.pass_context
def grid(ctx, delta_min, delta_max, delta_steps, rho_min, rho_max, rho_steps, families):
    """Sweep the bound families over a (delta, rho) grid."""
    fams = _parse_families(families)
    deltas = _linspace(delta_min, delta_max, delta_steps)
    rhos = _linspace(rho_min, rho_max, rho_steps)
    points = [(f, d, r) for f in fams for d in deltas for r in rhos]
    with ThreadPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
        bounds_list = list(
            pool.map(lambda p: asymptotic.compute_bounds(p[0], p[1], p[2]), points)
        )
    rows = [
        {c: rec.get(c) for c in GRID_COLUMNS}
        for rec in map(_bound_record, bounds_list)
    ]
    surface = [
        [bounds_list[(0 * len(deltas) + i) * len(rhos) + j].U for i in range(len(deltas))]
        for j in range(len(rhos))
    ]
    svg = heatmap_svg(surface, deltas, rhos, f"U {fams[0]} bound surface")
    params = {
        "delta_range": [delta_min, delta_max, delta_steps],
        "rho_range": [rho_min, rho_max, rho_steps],
        "families": fams,
    }
    _emit(ctx, "grid", params, rows, csv_text=_rows_to_csv(rows, GRID_COLUMNS), svg_text=svg)


@cli.command("finite")
@click.argument("k", type=int)
@click.argument("n", type=int)
@click.argument("n_total", type=int, metavar="N")
@click.option("--epsilon", type=float, default=1e-3, show_default=True)
@click.option("--side", type=click.Choice(["upper", "lower"]), default="upper", show_default=True)
@click.pass_context
def finite_cmd(ctx, k, n, n_total, epsilon, side):
    """Tail probability bound at a concrete size (K, N_ROWS, N)."""
    inst = finite.FiniteInstance(k=k, n=n, N=n_total, epsilon=epsilon)
    tb = finite.tail_prob_upper(inst) if side == "upper" else finite.tail_prob_lower(inst)
    rec = {
        "side": tb.side,
        "k": k,
        "n": n,
        "N": n_total,
        "epsilon": epsilon,
        "total": tb.total,
        "eig_term": tb.eig_term,
        "cover_term": tb.cover_term,
        "lambda_star": tb.lambda_star,
        "log_lambda_star": tb.log_lambda_star,
        "gamma_used": tb.gamma_used,
        "psi_derivative": tb.psi_derivative,
        "log_eig_term": tb.log_eig_term,
        "log_cover_term": tb.log_cover_term,
        "log_total": tb.log_total,
        "log_prefactor_proof": tb.log_prefactor_proof,
        "log_prefactor_stated": tb.log_prefactor_stated,
    }
    lines = [
        f"{side} tail bound for (k={k}, n={n}, N={n_total}, eps={epsilon:g})",
        f"  total        {tb.total:.3e}   (log {tb.log_total:.6g})",
        f"  eig_term     {tb.eig_term:.3e}   (log {tb.log_eig_term:.6g})",
        f"  cover_term   {tb.cover_term:.3e}   (log {tb.log_cover_term:.6g})",
        f"  lambda_star  {tb.lambda_star:.6e} (log {tb.log_lambda_star:.6g})",
        f"  gamma_used   {tb.gamma_used:.6e}",
        f"  prefactor logs: proof {tb.log_prefactor_proof:.6g}, "
        f"stated {tb.log_prefactor_stated:.6g}",
    ]
    _emit(ctx, "finite", {"k": k, "n": n, "N": n_total, "epsilon": epsilon, "side": side},
          rec, text="\n".join(lines))


EMPIRICAL_COLUMNS = ["n", "N", "k", "U_est", "L_est", "U_theory", "L_theory",
                     "ratio_U", "ratio_L", "error"]


@cli.command("empirical")
@click.option("--n", "n_rows", type=int, default=100, show_default=True)
@click.option("--sizes", default="200,400", show_default=True, help="Comma-separated N values.")
@click.option("--k-frac", type=float, default=0.05, show_default=True,
              help="Sparsity rule: k = max(1, round(k_frac * n)).")
@click.option("--k", "k_fixed", type=int, default=None, help="Fixed k overriding --k-frac.")
@click.option("--restarts", type=int, default=100, show_default=True)
@click.pass_context
def empirical_cmd(ctx, n_rows, sizes, k_frac, k_fixed, restarts):
    """Empirical RIC estimates vs theory across matrix widths.

    Guard violations are reported per cell; the sweep continues.
    """
    n_list = [int(s) for s in sizes.split(",") if s.strip()]
    k = k_fixed if k_fixed is not None else max(1, round(k_frac * n_rows))
    seed = ctx.obj["seed"]

    def run_cell(N: int) -> dict:
        row = {"n": n_rows, "N": N, "k": k, "error": ""}
        try:
            theory = asymptotic.bt_bounds(n_rows / N, k / n_rows)
            sample = empirical.sample_gaussian(n_rows, N, seed)
            up = empirical.local_search(sample, k, "upper", restarts=restarts, seed=seed)
            lo = empirical.local_search(sample, k, "lower", restarts=restarts, seed=seed)
            row.update(
                U_est=up.estimate,
                L_est=lo.estimate,
                U_theory=theory.U,
                L_theory=theory.L,
                ratio_U=theory.U / up.estimate if up.estimate > 0 else math.nan,
                ratio_L=theory.L / lo.estimate if lo.estimate > 0 else math.nan,
            )
        except RicBoundsError as exc:
            row["error"] = str(exc)
        return row

    with ThreadPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
        rows = list(pool.map(run_cell, n_list))
    params = {"n": n_rows, "sizes": n_list, "k": k, "restarts": restarts}
    _emit(ctx, "empirical", params, rows,
          csv_text=_rows_to_csv(rows, EMPIRICAL_COLUMNS))


PHASE_COLUMNS = ["delta", "family", "rho_star"]


@cli.command("phase")
@click.option("--delta-steps", type=int, default=50, show_default=True)
@click.option("--delta-min", type=float, default=0.05, show_default=True)
@click.option("--delta-max", type=float, default=0.9524, show_default=True)
@click.option("--families", default="BT", show_default=True,
              help="Comma-separated; pass BT,BCT to co-plot both curves.")
@click.pass_context
def phase_cmd(ctx, delta_steps, delta_min, delta_max, families):
    """l1 recovery phase-transition curve rho*(delta)."""
    fams = _parse_families(families)
    deltas = _linspace(delta_min, delta_max, delta_steps)
    points = [(f, d) for f in fams for d in deltas]
    with ThreadPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
        stars = list(pool.map(lambda p: asymptotic.l1_phase_transition(p[1], p[0]), points))
    rows = [
        {"delta": d, "family": f, "rho_star": s}
        for (f, d), s in zip(points, stars)
    ]
    series = {
        f: (deltas, [r["rho_star"] for r in rows if r["family"] == f])
        for f in fams
    }
    svg = curve_svg(series, "l1 phase transition lower bound", log_y=True)
    params = {"delta_range": [delta_min, delta_max, delta_steps], "families": fams}
    _emit(ctx, "phase", params, rows, csv_text=_rows_to_csv(rows, PHASE_COLUMNS), svg_text=svg)


@cli.command("cover")
@click.option("--universe", "-N", "n_universe", type=int, required=True, help="Universe size N.")
@click.option("--k", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--u", type=int, default=-1, help="Supersets to draw; default ceil(r*N).")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--details", is_flag=True, help="Include per-trial outcomes.")
@click.pass_context
def cover_cmd(ctx, n_universe, k, m, u, trials, details):
    """Monte-Carlo check of the random covering construction."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(ctx.obj["seed"])
    trial_seeds = [int(s) for s in rng.integers(2**63, size=trials)]

    def run_trial(ts: int):
        plan = covering.CoveringPlan(N=n_universe, k=k, m=m, seed=ts, u=u)
        covered, uncovered = covering.random_cover(plan)
        return plan, covered, uncovered

    with ThreadPoolExecutor(max_workers=ctx.obj["threads"]) as pool:
        outcomes = list(pool.map(run_trial, trial_seeds))
    plan0 = outcomes[0][0]
    failures = sum(1 for _, covered, _ in outcomes if not covered)
    cb = covering.covering_bound(covering.CoveringPlan(N=n_universe, k=k, m=m, seed=0))
    rec = {
        "N": n_universe,
        "k": k,
        "m": m,
        "r": plan0.r,
        "u": plan0.u,
        "trials": trials,
        "failures": failures,
        "failure_frequency": failures / trials,
        "bound_envelope": cb.envelope,
        "log_bound_envelope": cb.log_envelope,
        "bound_intermediate": cb.intermediate,
        "log_bound_intermediate": cb.log_intermediate,
    }
    if details:
        rec["trial_uncovered_counts"] = [unc for _, _, unc in outcomes]
    lines = [
        f"covering N={n_universe}, k={k}, m={m}: r={plan0.r:.6g}, u={plan0.u}",
        f"  failures {failures}/{trials} (frequency {failures / trials:.3g})",
        f"  envelope bound    {cb.envelope:.3e} (log {cb.log_envelope:.6g})",
        f"  intermediate bound {cb.intermediate:.3e} (log {cb.log_intermediate:.6g})",
    ]
    _emit(ctx, "cover", {"N": n_universe, "k": k, "m": m, "u": u, "trials": trials},
          rec, text="\n".join(lines))


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(1)
    except DomainError as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(2)
    except SolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(3)
    except GuardError as exc:
        click.echo(f"guard refusal: {exc}", err=True)
        sys.exit(4)
    except (IOFailure, OSError) as exc:
        click.echo(f"i/o failure: {exc}", err=True)
        sys.exit(5)
    return 0


if __name__ == "__main__":
    main()
