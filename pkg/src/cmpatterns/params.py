"""Model parameters for the rescaled predator-prey system

    u_t - d1 u_xx = u(1-u) - u v / ((1+alpha*u)(1+beta*v))
    v_t - d2 v_xx = -d v + c u v / ((1+alpha*u)(1+beta*v))

on the interval (0, domain_length) with no-flux boundary conditions.

alpha and beta are the handling-time and interference constants of the
Crowley-Martin response, c the conversion rate and d the predator death
rate, all after rescaling.
"""

from dataclasses import dataclass, fields, replace
from math import pi


@dataclass(frozen=True)
class ModelParams:
    d1: float
    d2: float
    alpha: float
    beta: float
    c: float
    d: float
    domain_length: float = pi

    def __post_init__(self):
        for f in fields(self):
            val = getattr(self, f.name)
            if not isinstance(val, (int, float)):
                raise TypeError(f"{f.name} must be a number, got {type(val).__name__}")
            if not val > 0.0:
                raise ValueError(f"{f.name} must be positive, got {val!r}")
            object.__setattr__(self, f.name, float(val))

    def with_(self, **kw) -> "ModelParams":
        """Copy with some fields replaced (validation re-runs)."""
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def extinction_threshold(self) -> float:
        """d(1+alpha); below this conversion rate no positive constant
        equilibrium exists and the predator dies out."""
        return self.d * (1.0 + self.alpha)

    @property
    def predator_cap(self) -> float:
        """c/(d*beta), the a-priori upper bound for the predator density."""
        return self.c / (self.d * self.beta)
