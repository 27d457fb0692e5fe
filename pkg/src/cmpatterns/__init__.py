"""Equilibria, stability and stationary patterns of a diffusive predator-prey
system with Crowley-Martin functional response on an interval with no-flux
boundaries."""

from ._kernels import BACKEND as kernel_backend
from .config import RunConfig, load_config, parse_config
from .equilibria import (Equilibrium, ExpectedCount, expected_count,
                         solve_equilibria, v_from_u)
from .fields import Field, Grid
from .kinetics import (KineticsKind, RegimeClass, RegimeTag, c_of_u, c_prime,
                       classify_regime, functional_response, g_of_u,
                       gamma_of_alpha, h_of_u, reaction)
from .limits import (LimitEquilibria, limit_equilibria, limit_uz_equilibria,
                     limit_wv_equilibrium, rescale_compare)
from .params import ModelParams
from .pde_sim import (RunOutcome, RunReport, dt_max, init_field,
                      lyapunov_value, run_until, step)
from .report import canonical_json, svg_line_plot, write_csv, write_json
from .stability import (DispersionRow, IndexReport, Jacobian2x2,
                        StabilityResult, ThresholdReport, classify_stability,
                        dispersion, index_and_degree, jacobian, lambda_band,
                        neumann_spectrum, nonexistence_threshold)
from .steady_solver import (SteadyClass, SteadyResult, classify_solution,
                            multi_start, newton_solve, residual)

__version__ = "0.1.0"

__all__ = [
    "Equilibrium", "ExpectedCount", "Field", "Grid",
    "IndexReport", "Jacobian2x2", "KineticsKind", "LimitEquilibria",
    "ModelParams", "RegimeClass", "RegimeTag", "RunConfig", "RunOutcome",
    "RunReport", "SteadyClass", "SteadyResult", "StabilityResult",
    "ThresholdReport", "DispersionRow", "c_of_u", "c_prime",
    "canonical_json", "classify_regime", "classify_solution",
    "classify_stability", "dispersion", "dt_max", "expected_count",
    "functional_response", "g_of_u", "gamma_of_alpha", "h_of_u",
    "index_and_degree", "init_field", "jacobian", "kernel_backend",
    "lambda_band", "limit_equilibria", "limit_uz_equilibria",
    "limit_wv_equilibrium", "load_config", "lyapunov_value", "multi_start",
    "neumann_spectrum", "newton_solve", "nonexistence_threshold",
    "parse_config", "reaction", "rescale_compare", "residual", "run_until",
    "solve_equilibria", "step", "svg_line_plot", "v_from_u", "write_csv",
    "write_json",
]
