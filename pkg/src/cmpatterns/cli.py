"""Command-line interface.

Subcommands: regimes, equilibria, dispersion, simulate, steady, index,
threshold, sweep.  Every subcommand reads a configuration file (see
config.py for the grammar), writes JSON/CSV/SVG reports into --out-dir,
and exits with

    0  success
    1  usage or configuration error
    2  an invariant violated during the run (count mismatch, mode coverage,
       a priori bound broken, band-edge degeneracy)
    3  numerical failure (blowup, Newton stall, singular linear system)

On any nonzero exit a machine-readable error object is printed to stderr.
Reports embed the fully resolved configuration and contain no timestamps,
so a fixed config and seed reproduce them byte for byte.
"""

import argparse
import dataclasses
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .config import RunConfig, load_config
from .equilibria import count_thresholds, expected_count, solve_equilibria
from .errors import (CmpatternsError, ConfigError, DomainError,
                     EigenvalueOnBandBoundary, InsufficientModes,
                     NoConvergence, NonpositiveField, NonpositiveInitialData,
                     NoPositivePredator, SingularJacobian, StepRejected)
from .fields import Grid
from .kinetics import KineticsKind, c_of_u, classify_regime
from .limits import limit_uz_equilibria, limit_wv_equilibrium
from .params import ModelParams
from .pde_sim import RunOutcome, init_field, run_until
from .report import canonical_json, svg_line_plot, write_csv, write_json, write_svg
from .stability import (classify_stability, default_j_max, dispersion,
                        index_and_degree, jacobian, lambda_band,
                        nonexistence_threshold)
from .steady_solver import multi_start

_USAGE, _INVARIANT, _NUMERICAL = 1, 2, 3

_KIND = {"cm": KineticsKind.CM, "wv": KineticsKind.LIMIT_WV,
         "uz": KineticsKind.LIMIT_UZ}


def _emit_error(exc, code: int) -> None:
    sys.stderr.write(canonical_json(
        {"error": {"type": type(exc).__name__, "message": str(exc),
                   "exit_code": code}}))


def _sample_c_curve(p: ModelParams, regime, samples: int):
    """Sample C(u) piecewise over its domain, inset from poles and edges."""
    us, cs = [], []
    pieces = regime.domain_of_c
    total = sum(hi - lo for lo, hi in pieces)
    for lo, hi in pieces:
        n = max(8, int(round(samples * (hi - lo) / total))) if total > 0 else 8
        inset = 1e-4 * (hi - lo)
        for u in np.linspace(lo + inset, hi - inset, n):
            us.append(float(u))
            cs.append(float(c_of_u(float(u), p)))
        us.append(float("nan"))  # break curve between branches
        cs.append(float("nan"))
    if us:
        us.pop()
        cs.pop()
    return us, cs


def cmd_regimes(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    regime = classify_regime(p.alpha, p.beta, p.d)
    us, cs = _sample_c_curve(p, regime, cfg.regimes_samples)
    finite = sorted(c for c in cs if np.isfinite(c))
    # window out the pole tails so the fold structure stays visible
    top = finite[int(0.85 * (len(finite) - 1))] if finite else 1.0
    svg = svg_line_plot([("C(u)", us, cs)], title=f"regime {regime.tag.value}",
                        x_label="u", y_label="C",
                        y_window=(0.0, 1.05 * top))
    report = {
        "config": cfg.as_dict(),
        "regime": regime.tag.value,
        "g_zeros": list(regime.g_zeros),
        "c_critical_points": list(regime.c_critical_points),
        "c_at_critical_points": [c_of_u(u, p) for u in regime.c_critical_points],
        "domain_of_c": [list(piece) for piece in regime.domain_of_c],
        "count_thresholds": count_thresholds(p),
    }
    write_json(os.path.join(out, "regimes.json"), report)
    write_csv(os.path.join(out, "c_curve.csv"), ("u", "c_of_u"),
              [(u, c) for u, c in zip(us, cs) if np.isfinite(u)])
    write_svg(os.path.join(out, "c_curve.svg"), svg)
    return 0


def cmd_equilibria(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    eqs = solve_equilibria(p)
    expected = expected_count(p)
    consistent = len(eqs) == expected.count
    report = {
        "config": cfg.as_dict(),
        "equilibria": [{"u": e.u, "v": e.v, "c_prime_at_u": e.c_prime_at_u,
                        "psi1_prime_at_u": e.psi1_prime_at_u} for e in eqs],
        "expected_count": expected.count,
        "expected_label": expected.label,
        "consistent": consistent,
        "count_thresholds": count_thresholds(p),
    }
    write_json(os.path.join(out, "equilibria.json"), report)
    return 0 if consistent else _INVARIANT


def cmd_dispersion(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    blocks, csv_rows, series = [], [], []
    for k, e in enumerate(solve_equilibria(p)):
        j_max = cfg.dispersion_j_max or default_j_max(e, p)
        rows = dispersion(e, p, j_max=j_max)
        verdict = classify_stability(rows)
        jac = jacobian(e, p)
        band = lambda_band(e, p)
        blocks.append({
            "u": e.u, "v": e.v,
            "jacobian": {"a11": jac.a11, "a12": jac.a12,
                         "a21": jac.a21, "a22": jac.a22},
            "band": None if band is None else list(band),
            "stable": verdict.stable,
            "unstable_modes": list(verdict.unstable_modes),
            "j_max": j_max,
            "rows": [{"j": r.j, "mu": r.mu, "trace": r.trace, "det": r.det,
                      "max_re_lambda": r.max_re_lambda} for r in rows],
        })
        csv_rows += [(k, r.j, r.mu, r.trace, r.det, r.max_re_lambda)
                     for r in rows]
        series.append((f"u*={e.u:.4g}", [r.mu for r in rows],
                       [r.max_re_lambda for r in rows]))
    report = {"config": cfg.as_dict(), "equilibria": blocks}
    write_json(os.path.join(out, "dispersion.json"), report)
    write_csv(os.path.join(out, "dispersion.csv"),
              ("equilibrium", "j", "mu", "trace", "det", "max_re_lambda"),
              csv_rows)
    write_svg(os.path.join(out, "dispersion.svg"),
              svg_line_plot(series, title="mode growth rates",
                            x_label="mu_j", y_label="max Re lambda"))
    return 0


def _sim_base(cfg: RunConfig, kind: KineticsKind):
    """Initial base state and the Lyapunov reference (CM only)."""
    p = cfg.params
    if cfg.sim_base == "constants":
        return (cfg.sim_u0, cfg.sim_v0), None
    idx = cfg.sim_equilibrium_index
    if kind is KineticsKind.CM:
        eqs = solve_equilibria(p)
        if not 0 <= idx < len(eqs):
            raise ConfigError(f"equilibrium_index {idx} out of range "
                              f"({len(eqs)} equilibria)")
        return eqs[idx], eqs[idx]
    if kind is KineticsKind.LIMIT_WV:
        return limit_wv_equilibrium(p.beta, p.d), None
    points = limit_uz_equilibria(p.alpha, p.beta, p.d)
    if not 0 <= idx < len(points):
        raise ConfigError(f"equilibrium_index {idx} out of range "
                          f"({len(points)} rescaled states)")
    return points[idx], None


def cmd_simulate(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    kind = _KIND[cfg.sim_kinetics]
    grid = Grid(n=cfg.grid_n, length=p.domain_length)
    base, lyap_ref = _sim_base(cfg, kind)
    if cfg.sim_lyapunov and lyap_ref is None:
        raise ConfigError("lyapunov tracing needs kinetics = cm and "
                          "base = equilibrium")
    field = init_field(grid, base, modes=cfg.sim_modes,
                       amplitude=cfg.sim_amplitude, seed=cfg.seed)
    rep = run_until(field, p, grid, steady_tol=cfg.sim_steady_tol,
                    t_max=cfg.sim_t_max,
                    dt=cfg.sim_dt if cfg.sim_dt > 0.0 else None,
                    kind=kind, check_every=cfg.sim_check_every,
                    lyapunov_ref=lyap_ref if cfg.sim_lyapunov else None,
                    sample_every=cfg.sim_sample_every)
    report = {
        "config": cfg.as_dict(),
        "outcome": rep.outcome.value,
        "steps": rep.steps,
        "dt": rep.dt,
        "final_time": rep.final.t,
        "rate_norm": rep.rate_norm,
        "constancy": list(rep.constancy),
        "u_range": [float(rep.final.u.min()), float(rep.final.u.max())],
        "v_range": [float(rep.final.v.min()), float(rep.final.v.max())],
        "lyapunov_trace": (None if rep.lyapunov_trace is None
                           else rep.lyapunov_trace),
    }
    write_json(os.path.join(out, "simulate.json"), report)
    write_csv(os.path.join(out, "final_profile.csv"), ("x", "u", "v"),
              zip(grid.x, rep.final.u, rep.final.v))
    write_svg(os.path.join(out, "final_profile.svg"),
              svg_line_plot([("u", grid.x, rep.final.u),
                             ("v", grid.x, rep.final.v)],
                            title=f"final profile ({rep.outcome.value})",
                            x_label="x"))
    if rep.outcome is RunOutcome.BLOWUP:
        raise StepRejected("simulation blew up; see simulate.json")
    return 0


def cmd_steady(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    grid = Grid(n=cfg.grid_n, length=p.domain_length)
    sols = multi_start(p, grid, amplitudes=cfg.steady_amplitudes,
                       extra_seeds=cfg.steady_extra_seeds, seed=cfg.seed,
                       tol=cfg.steady_tol, max_iter=cfg.steady_max_iter)
    entries = []
    for k, s in enumerate(sols):
        entries.append({
            "classification": s.classification.value,
            "residual_norm": s.residual_norm,
            "newton_iters": s.newton_iters,
            "bounds_ok": s.bounds_ok,
            "u_range": [float(s.field.u.min()), float(s.field.u.max())],
            "v_range": [float(s.field.v.min()), float(s.field.v.max())],
        })
        write_csv(os.path.join(out, f"steady_profile_{k}.csv"),
                  ("x", "u", "v"), zip(grid.x, s.field.u, s.field.v))
        write_svg(os.path.join(out, f"steady_profile_{k}.svg"),
                  svg_line_plot([("u", grid.x, s.field.u),
                                 ("v", grid.x, s.field.v)],
                                title=f"steady state {k} "
                                      f"({s.classification.value})",
                                x_label="x"))
    report = {"config": cfg.as_dict(), "solutions": entries}
    write_json(os.path.join(out, "steady.json"), report)
    return 0 if all(e["bounds_ok"] for e in entries) else _INVARIANT


def cmd_index(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    eqs = solve_equilibria(p)
    rep = index_and_degree(eqs, p)
    report = {
        "config": cfg.as_dict(),
        "entries": [{"u": e.u,
                     "band": None if en.band is None else list(en.band),
                     "gamma": en.gamma, "index": en.index}
                    for e, en in zip(eqs, rep.entries)],
        "degree_sum": rep.degree_sum,
        "predicts_nonconstant": rep.predicts_nonconstant,
    }
    write_json(os.path.join(out, "index.json"), report)
    return 0


def cmd_threshold(cfg: RunConfig, out: str) -> int:
    p = cfg.params
    rep = nonexistence_threshold(p)
    report = {
        "config": cfg.as_dict(),
        "a_bound": rep.a_bound,
        "b_bound": rep.b_bound,
        "mu1": rep.mu1,
        "d_star": rep.d_star,
        "min_diffusion": min(p.d1, p.d2),
        "exceeds_threshold": min(p.d1, p.d2) > rep.d_star,
    }
    write_json(os.path.join(out, "threshold.json"), report)
    return 0


def _sweep_cell(task) -> dict:
    """One isolated sweep cell; returns a plain row dict (picklable)."""
    (idx, model, n, x_param, x_val, y_param, y_val,
     t_max, steady_tol, modes, amplitude, seed) = task
    overrides = {x_param: x_val}
    if y_param is not None:
        overrides[y_param] = y_val
    row = {"cell": idx, "x": x_val, "y": y_val, "count": None,
           "expected": None, "n_stable": None, "outcome": None,
           "status": "ok"}
    try:
        p = ModelParams(**model).with_(**overrides)
        eqs = solve_equilibria(p)
        expected = expected_count(p)
        row["count"] = len(eqs)
        row["expected"] = expected.count
        if len(eqs) != expected.count:
            row["status"] = "inconsistent"
            return row
        n_stable = 0
        for e in eqs:
            verdict = classify_stability(dispersion(e, p, default_j_max(e, p)))
            n_stable += verdict.stable
        row["n_stable"] = n_stable
        if eqs:
            grid = Grid(n=n, length=p.domain_length)
            # clip the requested amplitude so positivity holds however small
            # the perturbed equilibrium is (weights are bounded by 1 per mode)
            cap = 0.5 * min(eqs[0].u, eqs[0].v) / max(1, len(modes))
            amp = float(np.copysign(min(abs(amplitude), cap), amplitude))
            field = init_field(grid, eqs[0], modes=tuple(modes),
                               amplitude=amp, seed=[seed, idx])
            rep = run_until(field, p, grid, steady_tol=steady_tol,
                            t_max=t_max)
            row["outcome"] = rep.outcome.value
        else:
            row["outcome"] = "NoInteriorEquilibrium"
    except CmpatternsError as exc:
        row["status"] = f"error:{type(exc).__name__}"
    return row


def cmd_sweep(cfg: RunConfig, out: str, jobs: int = 1) -> int:
    if not cfg.sweep_x_values:
        raise ConfigError("[sweep] x_values must be nonempty")
    y_param = None if cfg.sweep_y_param == "none" else cfg.sweep_y_param
    y_values = cfg.sweep_y_values if y_param else (None,)
    if y_param and not cfg.sweep_y_values:
        raise ConfigError("[sweep] y_values must be nonempty when y_param is set")
    model = cfg.params.as_dict()
    tasks = []
    idx = 0
    for y in y_values:
        for x in cfg.sweep_x_values:
            tasks.append((idx, model, cfg.grid_n,
                          cfg.sweep_x_param, x, y_param, y,
                          cfg.sweep_t_max, cfg.sweep_steady_tol,
                          list(cfg.sweep_modes), cfg.sweep_amplitude,
                          cfg.seed))
            idx += 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_cell, tasks))
    else:
        rows = [_sweep_cell(t) for t in tasks]
    rows.sort(key=lambda r: r["cell"])
    header = (cfg.sweep_x_param, y_param or "-", "count", "expected",
              "n_stable", "outcome", "status")
    write_csv(os.path.join(out, "sweep.csv"), header,
              [(r["x"], "" if r["y"] is None else r["y"], r["count"],
                r["expected"], r["n_stable"], r["outcome"], r["status"])
               for r in rows])
    report = {"config": cfg.as_dict(), "rows": rows,
              "all_ok": all(r["status"] == "ok" for r in rows)}
    write_json(os.path.join(out, "sweep.json"), report)
    return 0 if report["all_ok"] else _INVARIANT


_COMMANDS = {
    "regimes": cmd_regimes,
    "equilibria": cmd_equilibria,
    "dispersion": cmd_dispersion,
    "simulate": cmd_simulate,
    "steady": cmd_steady,
    "index": cmd_index,
    "threshold": cmd_threshold,
    "sweep": cmd_sweep,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmpatterns",
        description="Equilibrium, stability, and pattern analysis for a "
                    "diffusive predator-prey system with predator "
                    "interference.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True,
                        help="path to the run configuration file")
        sp.add_argument("--out-dir", default=".",
                        help="directory for report files (created if absent)")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the [run] seed")
        if name == "sweep":
            sp.add_argument("--jobs", type=int, default=1,
                            help="parallel sweep cells")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _USAGE if exc.code not in (0, None) else 0
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        os.makedirs(args.out_dir, exist_ok=True)
        if args.command == "sweep":
            code = cmd_sweep(cfg, args.out_dir, jobs=args.jobs)
        else:
            code = _COMMANDS[args.command](cfg, args.out_dir)
    except (ConfigError, FileNotFoundError, IsADirectoryError,
            PermissionError) as exc:
        _emit_error(exc, _USAGE)
        return _USAGE
    except (StepRejected, NoConvergence, SingularJacobian,
            NonpositiveInitialData, NonpositiveField) as exc:
        _emit_error(exc, _NUMERICAL)
        return _NUMERICAL
    except (DomainError, NoPositivePredator, InsufficientModes,
            EigenvalueOnBandBoundary, CmpatternsError) as exc:
        _emit_error(exc, _INVARIANT)
        return _INVARIANT
    if code != 0:
        _emit_error(CmpatternsError(
            f"{args.command}: invariant violation recorded in report"), code)
    return code


if __name__ == "__main__":
    sys.exit(main())
