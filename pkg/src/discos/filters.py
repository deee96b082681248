"""Spectral filter catalogue.

A filter is an even function sigma on [-1, 1] with sigma(0) = 1 that damps
the high-order coefficients of a truncated Fourier series: coefficient k is
multiplied by sigma(k/K). Its formal order p controls how fast the damped
partial sums converge at jump discontinuities, which is the only knob this
package exposes for the smoothing/accuracy trade-off.

Every filter evaluates to exactly 0 outside [-1, 1] (hard compact-support
convention, applied even to the exponential kind whose analytic formula is
positive everywhere).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .numutil import cospi

__all__ = [
    "FilterSpec",
    "eval_filter",
    "resolve_alpha",
    "lanczos",
    "raised_cosine",
    "sharpened_raised_cosine",
    "exponential",
    "all_pass",
    "FILTER_KINDS",
]

FILTER_KINDS = ("lanczos", "raised_cosine", "sharpened_raised_cosine", "exponential", "all_pass")

_FIXED_ORDER = {"lanczos": 1, "raised_cosine": 2, "sharpened_raised_cosine": 8}

MACHINE_EPS_ALPHA = -float(np.log(np.finfo(float).eps))


@dataclass(frozen=True)
class FilterSpec:
    """Identifies a spectral filter and how its parameters resolve.

    Parameters
    ----------
    kind : str
        One of ``FILTER_KINDS``.
    order_p : int
        Formal order. Fixed per kind (lanczos 1, raised cosine 2, sharpened
        raised cosine 8); for ``exponential`` it is a user-chosen even
        integer >= 2. ``all_pass`` carries order 0 and is a test control
        only, excluded from all bound machinery.
    alpha : float or None
        Exponent scale for the exponential kind (``alpha_rule="fixed"``).
    alpha_rule : str
        "fixed", "machine_eps" (alpha = -ln(machine epsilon)), or
        "k_squared" (alpha = ln(K^2), resolved at evaluation time).
    """

    kind: str
    order_p: int
    alpha: float | None = None
    alpha_rule: str = "fixed"

    def __post_init__(self):
        if self.kind not in FILTER_KINDS:
            raise ConfigurationError(f"unknown filter kind {self.kind!r}")
        if self.kind in _FIXED_ORDER and self.order_p != _FIXED_ORDER[self.kind]:
            raise ConfigurationError(
                f"{self.kind} filter has fixed order {_FIXED_ORDER[self.kind]}, got {self.order_p}"
            )
        if self.kind == "exponential":
            if self.order_p < 2 or self.order_p % 2 != 0:
                raise ConfigurationError(
                    f"exponential filter order must be an even integer >= 2, got {self.order_p}"
                )
            if self.alpha_rule not in ("fixed", "machine_eps", "k_squared"):
                raise ConfigurationError(f"unknown alpha rule {self.alpha_rule!r}")
            if self.alpha_rule == "fixed":
                if self.alpha is None or self.alpha <= 0:
                    raise ConfigurationError("exponential filter needs alpha > 0")


def lanczos() -> FilterSpec:
    return FilterSpec("lanczos", 1)


def raised_cosine() -> FilterSpec:
    return FilterSpec("raised_cosine", 2)


def sharpened_raised_cosine() -> FilterSpec:
    return FilterSpec("sharpened_raised_cosine", 8)


def exponential(order_p: int = 2, alpha: float | None = None, alpha_rule: str | None = None) -> FilterSpec:
    """Exponential filter exp(-alpha * eta^p).

    With no arguments, alpha defaults to -ln(machine epsilon) so the filter
    value at eta = 1 sits at roundoff level.
    """
    if alpha_rule is None:
        alpha_rule = "fixed" if alpha is not None else "machine_eps"
    return FilterSpec("exponential", order_p, alpha, alpha_rule)


def all_pass() -> FilterSpec:
    """sigma == 1 on [-1, 1]: reproduces the unfiltered partial sum.

    A control for convergence experiments. It is not a valid order-p filter
    and the kernel-bound machinery rejects it.
    """
    return FilterSpec("all_pass", 0)


def resolve_alpha(spec: FilterSpec, K: int | None) -> float:
    """Resolve the exponential filter's alpha for a given term count K."""
    if spec.alpha_rule == "fixed":
        return float(spec.alpha)
    if spec.alpha_rule == "machine_eps":
        return MACHINE_EPS_ALPHA
    if K is None or K < 1:
        raise ConfigurationError("alpha rule 'k_squared' needs the term count K >= 1")
    return float(np.log(float(K) ** 2))


def eval_filter(spec: FilterSpec, eta, K: int | None = None):
    """Evaluate sigma(|eta|), hard-zeroed outside [-1, 1].

    Vectorized over eta; scalar in, scalar out. K is only consulted by the
    exponential kind under the k_squared alpha rule.
    """
    eta_arr = np.abs(np.asarray(eta, dtype=float))
    scalar = eta_arr.ndim == 0
    eta_arr = np.atleast_1d(eta_arr)
    inside = eta_arr <= 1.0
    e = np.where(inside, eta_arr, 0.0)

    if spec.kind == "lanczos":
        # np.sinc(x) = sin(pi x)/(pi x) with the removable singularity at 0.
        vals = np.sinc(e)
    elif spec.kind == "raised_cosine":
        vals = 0.5 * (1.0 + cospi(e))
    elif spec.kind == "sharpened_raised_cosine":
        sr = 0.5 * (1.0 + cospi(e))
        vals = sr**4 * (35.0 - 84.0 * sr + 70.0 * sr**2 - 20.0 * sr**3)
    elif spec.kind == "exponential":
        alpha = resolve_alpha(spec, K)
        vals = np.exp(-alpha * e**spec.order_p)
    else:  # all_pass
        vals = np.ones_like(e)

    vals = np.where(inside, vals, 0.0)
    return float(vals[0]) if scalar else vals
