"""Command-line front end: ``coupledfp example1 | probe | bvp``.

Exit codes: 0 success, 2 probe mismatch or failed hypothesis, 3 no
convergence, 4 configuration or I/O error.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click
import numpy as np

from . import config as cfgmod
from .errors import InvalidConfig
from .iteration import BRANCH_CONVENTION, IterationConfig, solve, uniqueness_report
from .periodic_bvp import (
    BvpSpec,
    check_preconditions,
    linear_family,
    linear_periodic_solution,
    solve_bvp,
    write_grid_csv,
)
from .probes import compare_conditions, probe_mixed_monotone, real_line_sampler
from .product_space import ProductPoint, product_distance, real_line

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_NOT_CONVERGED = 3
EXIT_IO = 4

EXAMPLE1_K = 0.8
EXAMPLE1_BHASKAR_K = 1.2
EXAMPLE1_START = (-3.0, 3.0)


@dataclass
class RunConfig:
    command: str
    config_path: Optional[Path] = None
    out_dir: Path = Path("out")
    tolerance: Optional[float] = None
    max_iterations: Optional[int] = None
    seed: Optional[int] = None
    grid_n: Optional[int] = None


def example1_map(x, y):
    return (x - 3.0 * y) / 5.0


def family_map(family: str, a: float = 0.0, b: float = 0.0, c: float = 0.0):
    if family == "example1":
        return example1_map
    if family == "constant":
        return lambda x, y: c
    if family == "linear":
        return lambda x, y: a * x + b * y + c
    if family == "identity_x":
        return lambda x, y: x
    raise InvalidConfig(f"unknown operator family {family!r}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), indent=1, sort_keys=True) + "\n"


def _prepare_out(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)


def _load(cfg: RunConfig, schema: dict, required: bool) -> dict:
    if cfg.config_path is None:
        if required:
            raise InvalidConfig(f"command {cfg.command!r} needs --config")
        return {}
    return cfgmod.load(cfg.config_path, schema)


def run_example1(cfg: RunConfig) -> int:
    """Probes, solve from (-3, 3) and uniqueness report for F(x, y) = (x - 3y)/5."""
    try:
        opts = _load(cfg, cfgmod.EXAMPLE1_KEYS, required=False)
    except InvalidConfig as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    tol = cfg.tolerance if cfg.tolerance is not None else opts.get("tolerance", 1e-10)
    max_iter = cfg.max_iterations if cfg.max_iterations is not None else opts.get("max_iterations", 10_000)
    seed = cfg.seed if cfg.seed is not None else opts.get("seed", 0)
    samples = opts.get("samples", 10_000)

    F = example1_map
    space = real_line()
    sampler = real_line_sampler(seed)
    violations = probe_mixed_monotone(F, space, sampler, samples)
    cmp = compare_conditions(F, space, sampler, samples)
    probe_ok = (
        not violations
        and abs(cmp.symmetric.k_hat - EXAMPLE1_K) <= 1e-9
        and abs(cmp.bhaskar.k_hat - EXAMPLE1_BHASKAR_K) <= 1e-9
    )

    try:
        icfg = IterationConfig(contraction_k=EXAMPLE1_K, tolerance=tol, max_iterations=max_iter)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    res = solve(F, space, ProductPoint(*EXAMPLE1_START), icfg)
    err = product_distance(space, res.final, ProductPoint(0.0, 0.0))
    uniq = uniqueness_report(space, res)
    converged = res.converged and err <= tol * (1.0 + 1e-9)

    report = {
        "command": "example1",
        "convention": BRANCH_CONVENTION,
        "branch": res.branch.value,
        "status": res.status.value,
        "iterations": res.iterations,
        "final": list(res.final),
        "error_to_0_0": err,
        "tolerance": tol,
        "mixed_monotone_violations": len(violations),
        "symmetric": cmp.symmetric.as_dict(),
        "bhaskar": cmp.bhaskar.as_dict(),
        "verdict": cmp.verdict,
        "probe_ok": probe_ok,
        "uniqueness": uniq.as_dict(),
    }
    try:
        _prepare_out(cfg.out_dir)
        (cfg.out_dir / "trace.csv").write_text(res.trace.to_csv())
        (cfg.out_dir / "trace.json").write_text(res.trace.to_json() + "\n")
        (cfg.out_dir / "report.json").write_text(_dump(report))
    except OSError as exc:
        click.echo(f"error: cannot write outputs to {cfg.out_dir}: {exc}", err=True)
        return EXIT_IO

    click.echo(f"convention: {BRANCH_CONVENTION}")
    click.echo(f"start branch: {res.branch.value}")
    click.echo(f"k_hat symmetric = {cmp.symmetric.k_hat:.12g}, bhaskar = {cmp.bhaskar.k_hat:.12g} ({cmp.verdict})")
    click.echo(f"status: {res.status.value} after {res.iterations} steps, d2 to (0,0) = {err:.3e}")
    if not probe_ok:
        return EXIT_MISMATCH
    if not converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def run_probe(cfg: RunConfig) -> int:
    """Probe a built-in operator family on the real line; verdicts go to report.json."""
    try:
        opts = _load(cfg, cfgmod.PROBE_KEYS, required=True)
        if "family" not in opts:
            raise InvalidConfig("probe config needs a 'family' key")
        F = family_map(opts["family"], opts.get("a", 0.0), opts.get("b", 0.0), opts.get("c", 0.0))
    except InvalidConfig as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    seed = cfg.seed if cfg.seed is not None else opts.get("seed", 0)
    samples = opts.get("samples", 10_000)
    if samples < 1:
        click.echo("error: samples must be >= 1", err=True)
        return EXIT_IO
    space = real_line()
    sampler = real_line_sampler(seed, opts.get("scale", 10.0))
    violations = probe_mixed_monotone(F, space, sampler, samples)
    cmp = compare_conditions(F, space, sampler, samples)
    report = {
        "command": "probe",
        "family": opts["family"],
        "params": {k: opts[k] for k in ("a", "b", "c") if k in opts},
        "mixed_monotone": {
            "violations": len(violations),
            "witnesses": [[v.kind, v.low, v.high, v.other] for v in violations[:10]],
        },
        "symmetric": cmp.symmetric.as_dict(),
        "bhaskar": cmp.bhaskar.as_dict(),
        "verdict": cmp.verdict,
        "seed": seed,
    }
    try:
        _prepare_out(cfg.out_dir)
        (cfg.out_dir / "report.json").write_text(_dump(report))
    except OSError as exc:
        click.echo(f"error: cannot write outputs to {cfg.out_dir}: {exc}", err=True)
        return EXIT_IO
    click.echo(f"{opts['family']}: symmetric k_hat = {cmp.symmetric.k_hat:.12g}, "
               f"bhaskar k_hat = {cmp.bhaskar.k_hat:.12g}, verdict: {cmp.verdict}, "
               f"monotonicity violations: {len(violations)}")
    return EXIT_OK


def bvp_from_options(opts: dict, grid_n: Optional[int] = None):
    """Build (spec, alpha, beta, meta) from parsed bvp config values."""
    missing = [k for k in cfgmod.BVP_REQUIRED if k not in opts]
    if missing:
        raise InvalidConfig(f"bvp config is missing {', '.join(missing)}")
    l1, l2, m1, m2, T = (opts[k] for k in cfgmod.BVP_REQUIRED)
    f_slope = opts.get("f_slope", -l1 + 0.5 * m1)
    g_slope = opts.get("g_slope", l2 - 0.5 * m2)
    forcing = opts.get("forcing", "cos")
    amp = opts.get("amplitude", 1.0)
    n = grid_n if grid_n is not None else opts.get("grid_n", 256)
    f, g = linear_family(f_slope, g_slope, forcing, amp, T)
    try:
        spec = BvpSpec(f, g, l1, l2, m1, m2, T, n)
    except ValueError as exc:
        raise InvalidConfig(str(exc)) from exc
    # constant bounds -M, M work whenever M (g_slope - f_slope) >= max |forcing|
    gap = g_slope - f_slope
    M = 2.0 * abs(amp) / gap if gap > 0 else 1.0
    alpha = np.full(n + 1, opts.get("alpha", -M))
    beta = np.full(n + 1, opts.get("beta", M))
    meta = {"f_slope": f_slope, "g_slope": g_slope, "forcing": forcing, "amplitude": amp}
    return spec, alpha, beta, meta


def run_bvp(cfg: RunConfig) -> int:
    """Hypothesis checks, then the coupled fixed-point solve of the periodic problem."""
    try:
        opts = _load(cfg, cfgmod.BVP_KEYS, required=True)
        spec, alpha, beta, meta = bvp_from_options(opts, cfg.grid_n)
    except InvalidConfig as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    tol = cfg.tolerance if cfg.tolerance is not None else opts.get("tolerance", 1e-10)
    max_iter = cfg.max_iterations if cfg.max_iterations is not None else opts.get("max_iterations", 10_000)
    if not (tol > 0 and max_iter >= 1):
        click.echo("error: tolerance must be positive and max_iterations >= 1", err=True)
        return EXIT_IO

    report = {"command": "bvp", "convention": BRANCH_CONVENTION, "family": meta,
              "lambda1": spec.lambda1, "lambda2": spec.lambda2, "mu1": spec.mu1,
              "mu2": spec.mu2, "T": spec.T, "grid_n": spec.grid_n}
    pre = check_preconditions(spec, alpha, beta)
    report["preconditions"] = pre.as_dict()
    solution = None
    if pre.passed:
        solution = solve_bvp(spec, alpha, beta, tolerance=tol, max_iterations=max_iter)
        report["solve"] = solution.report
        a = meta["f_slope"] + meta["g_slope"]
        if a != 0.0:
            exact = linear_periodic_solution(spec.nodes, a, meta["forcing"], meta["amplitude"], spec.T)
            report["solve"]["max_error_vs_closed_form"] = float(np.max(np.abs(solution.u - exact)))

    try:
        _prepare_out(cfg.out_dir)
        (cfg.out_dir / "report.json").write_text(_dump(report))
        if solution is not None:
            write_grid_csv(cfg.out_dir / "solution.csv", spec.nodes, solution.u)
            (cfg.out_dir / "trace.csv").write_text(solution.result.trace.to_csv())
            (cfg.out_dir / "trace.json").write_text(solution.result.trace.to_json() + "\n")
    except OSError as exc:
        click.echo(f"error: cannot write outputs to {cfg.out_dir}: {exc}", err=True)
        return EXIT_IO

    click.echo(f"convention: {BRANCH_CONVENTION}")
    if not pre.passed:
        click.echo(f"preconditions failed: {', '.join(pre.failures)}")
        return EXIT_MISMATCH
    rep = solution.report
    click.echo(f"status: {rep['status']} after {rep['iterations']} steps; "
               f"sup|u-v| = {rep['sup_u_minus_v']:.3e}, ODE residual = {rep['ode_residual']:.3e}")
    if not solution.result.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


_common = [
    click.option("--config", "config_path", type=click.Path(path_type=Path), default=None),
    click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("out"), show_default=True),
    click.option("--tol", "tolerance", type=float, default=None),
    click.option("--max-iter", "max_iterations", type=int, default=None),
    click.option("--seed", type=int, default=None),
    click.option("--grid", "grid_n", type=int, default=None),
]


def _with_common(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Coupled fixed points of mixed monotone operators."""


def _command(name, runner, help_text):
    @cli.command(name, help=help_text)
    @_with_common
    def cmd(**kwargs):
        sys.exit(runner(RunConfig(command=name, **kwargs)))

    return cmd


_command("example1", run_example1, "Reproduce the (x - 3y)/5 example end to end.")
_command("probe", run_probe, "Probe a built-in operator family.")
_command("bvp", run_bvp, "Solve a configured periodic boundary value problem.")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.ClickException as exc:
        exc.show()
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
