"""Run configuration files: flat ``key = value`` lines under ``[section]``
headers.

Grammar, one entry per line::

    # comment           blank lines and text after '#' are ignored
    [section]           opens a section; must be one of the known names
    key = value         assigns a key inside the current section

Values are typed per key: floats, integers, booleans (``true``/``false``),
comma-separated lists, or a word from a fixed choice set.  Unknown sections,
unknown keys, duplicate assignments, and unparsable values are all rejected
with the offending line number.  Only the ``[model]`` section is mandatory
(``alpha``, ``beta``, ``c``, ``d`` have no defaults); everything else falls
back to the defaults listed in SCHEMA below.
"""

from dataclasses import dataclass
from math import pi

from .errors import ConfigError
from .params import ModelParams

_REQUIRED = object()

_SWEEP_AXES = ("d1", "d2", "alpha", "beta", "c", "d")


def _float(text: str) -> float:
    value = float(text)
    if value != value:
        raise ValueError("nan is not a valid value")
    return value


def _positive_float(text: str) -> float:
    value = _float(text)
    if value <= 0.0:
        raise ValueError("must be positive")
    return value


def _int(text: str) -> int:
    return int(text, 10)


def _positive_int(text: str) -> int:
    value = _int(text)
    if value <= 0:
        raise ValueError("must be positive")
    return value


def _bool(text: str):
    low = text.lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected true/false, got {text!r}")


def _float_list(text: str):
    if not text.strip():
        return ()
    return tuple(_float(part) for part in text.split(","))


def _int_list(text: str):
    if not text.strip():
        return ()
    return tuple(_int(part) for part in text.split(","))


def _choice(*options):
    def parse(text: str) -> str:
        low = text.lower()
        if low not in options:
            raise ValueError(f"expected one of {'/'.join(options)}, got {text!r}")
        return low
    return parse


# section -> key -> (parser, default).  _REQUIRED marks keys without one.
SCHEMA = {
    "model": {
        "d1": (_positive_float, 1.0),
        "d2": (_positive_float, 1.0),
        "alpha": (_positive_float, _REQUIRED),
        "beta": (_positive_float, _REQUIRED),
        "c": (_positive_float, _REQUIRED),
        "d": (_positive_float, _REQUIRED),
        "length": (_positive_float, pi),
    },
    "grid": {
        "n": (_positive_int, 257),
    },
    "run": {
        "seed": (_int, 0),
    },
    "regimes": {
        "samples": (_positive_int, 400),
    },
    "dispersion": {
        "j_max": (_int, 0),  # 0 = choose automatically
    },
    "simulate": {
        "kinetics": (_choice("cm", "wv", "uz"), "cm"),
        "t_max": (_positive_float, 2000.0),
        "steady_tol": (_positive_float, 1e-8),
        "dt": (_float, 0.0),  # 0 = stability limit
        "base": (_choice("equilibrium", "constants"), "equilibrium"),
        "equilibrium_index": (_int, 0),
        "u0": (_positive_float, 0.5),
        "v0": (_positive_float, 0.5),
        "modes": (_int_list, (1,)),
        "amplitude": (_float, 0.05),
        "lyapunov": (_bool, False),
        "check_every": (_positive_int, 25),
        "sample_every": (_positive_int, 100),
    },
    "steady": {
        "tol": (_positive_float, 1e-10),
        "max_iter": (_positive_int, 100),
        "amplitudes": (_float_list, (0.01, 0.05, 0.1)),
        "extra_seeds": (_int, 0),
    },
    "sweep": {
        "x_param": (_choice(*_SWEEP_AXES), "c"),
        "x_values": (_float_list, ()),
        "y_param": (_choice(*(_SWEEP_AXES + ("none",))), "none"),
        "y_values": (_float_list, ()),
        "t_max": (_positive_float, 400.0),
        "steady_tol": (_positive_float, 1e-7),
        "modes": (_int_list, (1,)),
        "amplitude": (_float, 0.05),
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration: model parameters plus per-command
    options, one attribute per schema entry."""

    params: ModelParams
    grid_n: int
    seed: int
    regimes_samples: int
    dispersion_j_max: int
    sim_kinetics: str
    sim_t_max: float
    sim_steady_tol: float
    sim_dt: float
    sim_base: str
    sim_equilibrium_index: int
    sim_u0: float
    sim_v0: float
    sim_modes: tuple
    sim_amplitude: float
    sim_lyapunov: bool
    sim_check_every: int
    sim_sample_every: int
    steady_tol: float
    steady_max_iter: int
    steady_amplitudes: tuple
    steady_extra_seeds: int
    sweep_x_param: str
    sweep_x_values: tuple
    sweep_y_param: str
    sweep_y_values: tuple
    sweep_t_max: float
    sweep_steady_tol: float
    sweep_modes: tuple
    sweep_amplitude: float

    def as_dict(self) -> dict:
        """Nested section -> key -> value mapping, suitable for embedding in
        reports (everything JSON serializable, lists as lists)."""
        model = self.params.as_dict()
        model["length"] = model.pop("domain_length")
        d = {
            "model": model,
            "grid": {"n": self.grid_n},
            "run": {"seed": self.seed},
            "regimes": {"samples": self.regimes_samples},
            "dispersion": {"j_max": self.dispersion_j_max},
            "simulate": {
                "kinetics": self.sim_kinetics,
                "t_max": self.sim_t_max,
                "steady_tol": self.sim_steady_tol,
                "dt": self.sim_dt,
                "base": self.sim_base,
                "equilibrium_index": self.sim_equilibrium_index,
                "u0": self.sim_u0,
                "v0": self.sim_v0,
                "modes": list(self.sim_modes),
                "amplitude": self.sim_amplitude,
                "lyapunov": self.sim_lyapunov,
                "check_every": self.sim_check_every,
                "sample_every": self.sim_sample_every,
            },
            "steady": {
                "tol": self.steady_tol,
                "max_iter": self.steady_max_iter,
                "amplitudes": list(self.steady_amplitudes),
                "extra_seeds": self.steady_extra_seeds,
            },
            "sweep": {
                "x_param": self.sweep_x_param,
                "x_values": list(self.sweep_x_values),
                "y_param": self.sweep_y_param,
                "y_values": list(self.sweep_y_values),
                "t_max": self.sweep_t_max,
                "steady_tol": self.sweep_steady_tol,
                "modes": list(self.sweep_modes),
                "amplitude": self.sweep_amplitude,
            },
        }
        return d


def _raw_entries(text: str) -> dict:
    """First pass: syntax only.  Returns {section: {key: (value, line)}}."""
    entries: dict = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("unterminated section header", lineno)
            name = line[1:-1].strip().lower()
            if name not in SCHEMA:
                raise ConfigError(f"unknown section [{name}]", lineno)
            section = name
            entries.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno)
        if section is None:
            raise ConfigError("assignment before any [section] header", lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in SCHEMA[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]", lineno)
        if key in entries[section]:
            raise ConfigError(f"duplicate key {key!r} in [{section}]", lineno)
        entries[section][key] = (value.strip(), lineno)
    return entries


def parse_config(text: str) -> RunConfig:
    """Parse configuration text into a RunConfig, applying SCHEMA defaults.

    Raises ConfigError with a line number for any syntactic or type problem,
    and without one for missing required keys.
    """
    entries = _raw_entries(text)
    resolved: dict = {}
    for section, keys in SCHEMA.items():
        resolved[section] = {}
        for key, (parser, default) in keys.items():
            if section in entries and key in entries[section]:
                value, lineno = entries[section][key]
                try:
                    resolved[section][key] = parser(value)
                except ValueError as exc:
                    raise ConfigError(f"bad value for {key!r}: {exc}", lineno) from exc
            elif default is _REQUIRED:
                raise ConfigError(f"[{section}] is missing required key {key!r}")
            else:
                resolved[section][key] = default

    m = resolved["model"]
    try:
        params = ModelParams(d1=m["d1"], d2=m["d2"], alpha=m["alpha"],
                             beta=m["beta"], c=m["c"], d=m["d"],
                             domain_length=m["length"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sim = resolved["simulate"]
    if sim["dt"] < 0.0:
        raise ConfigError("[simulate] dt must be >= 0 (0 selects the stability limit)")
    sw = resolved["sweep"]
    if sw["y_param"] != "none" and sw["y_param"] == sw["x_param"]:
        raise ConfigError("[sweep] x_param and y_param must differ")

    return RunConfig(
        params=params,
        grid_n=resolved["grid"]["n"],
        seed=resolved["run"]["seed"],
        regimes_samples=resolved["regimes"]["samples"],
        dispersion_j_max=resolved["dispersion"]["j_max"],
        sim_kinetics=sim["kinetics"],
        sim_t_max=sim["t_max"],
        sim_steady_tol=sim["steady_tol"],
        sim_dt=sim["dt"],
        sim_base=sim["base"],
        sim_equilibrium_index=sim["equilibrium_index"],
        sim_u0=sim["u0"],
        sim_v0=sim["v0"],
        sim_modes=sim["modes"],
        sim_amplitude=sim["amplitude"],
        sim_lyapunov=sim["lyapunov"],
        sim_check_every=sim["check_every"],
        sim_sample_every=sim["sample_every"],
        steady_tol=resolved["steady"]["tol"],
        steady_max_iter=resolved["steady"]["max_iter"],
        steady_amplitudes=resolved["steady"]["amplitudes"],
        steady_extra_seeds=resolved["steady"]["extra_seeds"],
        sweep_x_param=sw["x_param"],
        sweep_x_values=sw["x_values"],
        sweep_y_param=sw["y_param"],
        sweep_y_values=sw["y_values"],
        sweep_t_max=sw["t_max"],
        sweep_steady_tol=sw["steady_tol"],
        sweep_modes=sw["modes"],
        sweep_amplitude=sw["amplitude"],
    )


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
