#!/usr/bin/env python3
"""Timing comparison of the kernel backends.

Runs the IMEX stepper and the coupled linearised solve on identical inputs
through every backend built into this installation and reports per-call
times and the speedup of the compiled extension over the pure NumPy
fallback.  The stepper is timed over a long march on the pattern-forming
parameter set (the workload the library actually spends its time on); the
linear solve is timed per call, best of several batches.

Both backends are also cross-checked on the spot: the march must agree to
rounding noise or the timing is meaningless.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 129 257 513 1025]
                                        [--steps 2000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from cmpatterns import _kernels
from cmpatterns.fields import Grid
from cmpatterns.kinetics import KineticsKind, reaction_jacobian_terms
from cmpatterns.params import ModelParams
from cmpatterns.pde_sim import dt_max, semi_discrete_rhs
from cmpatterns.fields import Field

# striped-pattern regime: small prey diffusion, predator diffusion above the
# band opening for modes 1 and 2
PARAMS = ModelParams(d1=0.01, d2=0.766, alpha=3.0, beta=0.755, c=17.715, d=0.1)


def make_state(n):
    g = Grid(n, np.pi)
    u = 0.18 + 0.04 * np.cos(2.0 * g.x) + 0.01 * np.cos(g.x)
    v = 5.27 + 0.60 * np.cos(2.0 * g.x) + 0.15 * np.cos(g.x)
    return g, u, v


def bench_stepper(kern, n, steps, dt):
    g, u, v = make_state(n)
    t0 = time.perf_counter()
    status = kern.imex_advance(u, v, steps, dt, g.dx, PARAMS.d1, PARAMS.d2,
                               int(KineticsKind.CM), PARAMS.alpha, PARAMS.beta,
                               PARAMS.c, PARAMS.d)
    elapsed = time.perf_counter() - t0
    if status != _kernels.OK:
        raise RuntimeError(f"stepper returned status {status}")
    return elapsed, u, v


def bench_solver(kern, n, repeats, batch=50):
    g, u, v = make_state(n)
    fu, fv, gu, gv = (np.ascontiguousarray(np.broadcast_to(a, u.shape), dtype=float)
                      for a in reaction_jacobian_terms(u, v, PARAMS))
    ru, rv = semi_discrete_rhs(Field(u, v), PARAMS, g)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(batch):
            status, x, y = kern.solve_coupled_tridiag(g.dx, PARAMS.d1, PARAMS.d2,
                                                      fu, fv, gu, gv, -ru, -rv)
        best = min(best, (time.perf_counter() - t0) / batch)
    if status != _kernels.OK:
        raise RuntimeError(f"solver returned status {status}")
    return best, x, y


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[129, 257, 513, 1025])
    ap.add_argument("--steps", type=int, default=2000,
                    help="IMEX steps per stepper timing")
    ap.add_argument("--repeats", type=int, default=5,
                    help="batches per solver timing (best batch wins)")
    args = ap.parse_args(argv)

    backends = _kernels.available()
    names = list(backends)
    print(f"backends: {', '.join(names)}   (active: {_kernels.BACKEND})")
    if "compiled" not in backends:
        print("note: compiled extension not built; timing the fallback only")
    dt = 0.5 * dt_max(PARAMS)
    print(f"stepper: {args.steps} IMEX steps at dt = {dt:.3g}; "
          f"solver: per-call, best of {args.repeats} x 50\n")

    header = f"{'n':>6}  {'what':<8}" + "".join(f"{nm:>14}" for nm in names)
    if len(names) == 2:
        header += f"{'speedup':>10}{'agreement':>12}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        rows = {}
        for nm in names:
            t_step, u, v = bench_stepper(backends[nm], n, args.steps, dt)
            t_solve, x, y = bench_solver(backends[nm], n, args.repeats)
            rows[nm] = (t_step, t_solve, u, v, x, y)
        for k, what, unit in ((0, "step", args.steps), (1, "solve", 1)):
            line = f"{n:>6}  {what:<8}"
            for nm in names:
                line += f"{rows[nm][k] / unit * 1e6:>12.2f}us"
            if len(names) == 2:
                slow, fast = rows["fallback"][k], rows["compiled"][k]
                line += f"{slow / fast:>9.1f}x"
                if what == "step":
                    diff = max(float(np.abs(rows['fallback'][2] - rows['compiled'][2]).max()),
                               float(np.abs(rows['fallback'][3] - rows['compiled'][3]).max()))
                else:
                    diff = max(float(np.abs(rows['fallback'][4] - rows['compiled'][4]).max()),
                               float(np.abs(rows['fallback'][5] - rows['compiled'][5]).max()))
                line += f"{diff:>12.1e}"
            print(line)
    print("\nper-call figures; 'step' is one IMEX step of the full system, "
          "'solve' one coupled linearised solve")


if __name__ == "__main__":
    main()
