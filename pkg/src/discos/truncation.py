"""Truncation-interval selection for distributions with unbounded support.

The expansion needs a finite [a, b] carrying essentially all probability
mass. Moments are read off the characteristic function by Richardson-refined
central differences, then either a Chebyshev tail bound or the wide
many-sigma rule used for self-exciting counts turns them into an interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NumericDomainError
from .models import HawkesModel, hawkes_count_charfn

__all__ = ["charfn_moments", "chebyshev_range", "hawkes_range", "RangeRule", "resolve_range"]


def _fd_moments(cf, h: float) -> tuple[float, float]:
    vals = np.asarray(cf(np.array([h, 0.0, -h])), dtype=complex)
    mean = float(((vals[0] - vals[2]) / (2.0 * h)).imag)
    second = float(-((vals[0] - 2.0 * vals[1] + vals[2]) / h**2).real)
    return mean, second


def charfn_moments(cf, h: float = 1e-4) -> tuple[float, float]:
    """(mean, variance) from central differences of the characteristic
    function at +-h and +-h/2, Richardson-combined to cancel the O(h^2) bias.

    Variance is floored at zero; a value below -1e-8 before flooring signals
    an unsuitable step and raises.
    """
    if not h > 0:
        raise ConfigurationError(f"step h must be positive, got {h}")
    m1a, m2a = _fd_moments(cf, h)
    m1b, m2b = _fd_moments(cf, h / 2.0)
    mean = (4.0 * m1b - m1a) / 3.0
    second = (4.0 * m2b - m2a) / 3.0
    variance = second - mean**2
    if variance < -1e-8:
        raise NumericDomainError(
            f"negative variance {variance} from finite differences; adjust h"
        )
    return mean, max(variance, 0.0)


def chebyshev_range(mean: float, variance: float, tol: float) -> tuple[float, float]:
    """Interval mean +- sqrt(variance/tol); the tail outside carries mass at
    most tol by Chebyshev's inequality. variance = 0 degenerates to (mean,
    mean) and the caller must pad."""
    if variance < 0:
        raise ConfigurationError(f"variance must be nonnegative, got {variance}")
    if not 0.0 < tol < 1.0:
        raise ConfigurationError(f"tol must lie in (0, 1), got {tol}")
    c = float(np.sqrt(variance / tol))
    return mean - c, mean + c


def hawkes_range(
    model: HawkesModel,
    cf=None,
    h: float = 1e-4,
    sigmas: float = 25.0,
    left_pad_frac: float = 0.1,
    steps: int = 2000,
) -> tuple[float, float]:
    """Count-inversion interval [N_t - left_pad_frac * u, u] with
    u = mean + sigmas * stddev from the conditional count transform.

    The wide upper multiplier covers the heavy right tail; shifting the
    lower bound below the smallest attainable count keeps the ringing from
    the interval edge away from the mass.
    """
    if sigmas < 0:
        raise ConfigurationError(f"sigmas must be nonnegative, got {sigmas}")
    if cf is None:
        cf = hawkes_count_charfn(model, steps)
    mean, variance = charfn_moments(cf, h)
    upper = mean + sigmas * float(np.sqrt(variance))
    return model.N_t - left_pad_frac * upper, upper


@dataclass(frozen=True)
class RangeRule:
    """Named truncation rule: explicit bounds, a Chebyshev tail tolerance,
    or the many-sigma count rule."""

    kind: str
    a: float | None = None
    b: float | None = None
    tol: float = 1e-6
    sigmas: float = 25.0
    left_pad_frac: float = 0.1

    def __post_init__(self):
        if self.kind not in ("explicit", "chebyshev", "hawkes_25sigma"):
            raise ConfigurationError(f"unknown range rule {self.kind!r}")
        if self.kind == "explicit":
            if self.a is None or self.b is None or not self.b > self.a:
                raise ConfigurationError("explicit range needs bounds with b > a")
        if self.kind == "chebyshev" and not 0.0 < self.tol < 1.0:
            raise ConfigurationError(f"tol must lie in (0, 1), got {self.tol}")
        if self.sigmas <= 0:
            raise ConfigurationError(f"sigmas must be positive, got {self.sigmas}")


def resolve_range(rule: RangeRule, cf=None, model: HawkesModel | None = None,
                  h: float = 1e-4) -> tuple[float, float]:
    """Turn a RangeRule into concrete bounds."""
    if rule.kind == "explicit":
        return float(rule.a), float(rule.b)
    if rule.kind == "chebyshev":
        if cf is None:
            raise ConfigurationError("chebyshev range needs a characteristic function")
        mean, variance = charfn_moments(cf, h)
        return chebyshev_range(mean, variance, rule.tol)
    if model is None:
        raise ConfigurationError("hawkes range rule needs the model state")
    return hawkes_range(model, cf=cf, h=h, sigmas=rule.sigmas,
                        left_pad_frac=rule.left_pad_frac)
