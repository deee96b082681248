"""discos: filtered Fourier-cosine inversion for discrete probability laws.

Given a characteristic function, the package samples cosine-series
coefficients on a truncation interval, damps them with a spectral filter to
control the ringing that step-function CDFs otherwise produce, and evaluates
CDFs (1-D and 2-D), point masses, and moments semi-analytically. It ships
the filter catalogue with certified error-kernel envelopes and sweep
drivers, model builders (explicit discrete laws, two-point sums, a
self-exciting default-count process), truncation-range rules, and exact /
Monte Carlo oracles for verification.
"""

from .engine import (
    CosExpansion,
    CosExpansion2D,
    cdf_clamped_monotone,
    cos_moment,
    filtered_cdf,
    filtered_cdf_2d,
    power_cosine_integrals,
    recover_pmf,
    sample_coefficients,
    sample_coefficients_2d,
)
from .errors import (
    ConfigurationError,
    DiscosError,
    DomainError,
    NumericDomainError,
    PreconditionError,
    SizeError,
)
from .filters import (
    FilterSpec,
    all_pass,
    eval_filter,
    exponential,
    lanczos,
    raised_cosine,
    resolve_alpha,
    sharpened_raised_cosine,
)
from .kernels import (
    BoundReport,
    fit_decay_slope,
    k1_bound,
    k1_trace,
    kernel_k0,
    kernel_k1,
    verify_k1_bounds,
)
from .models import (
    DiscreteDist,
    GpbSpec,
    HawkesModel,
    LoadedModel,
    bundled_gpb95,
    charfn_discrete,
    charfn_gpb,
    hawkes_count_charfn,
    hawkes_joint_charfn,
    hawkes_mean_count,
    hawkes_transform,
    load_model,
    pb_spec,
)
from .oracles import (
    cdf_moment_quadrature,
    direct_coefficients,
    direct_coefficients_2d,
    exact_cdf,
    gpb_convolve,
    gpb_enumerate,
    gpb_sampler,
    hawkes_count_sampler,
    monte_carlo_cdf,
)
from .truncation import (
    RangeRule,
    charfn_moments,
    chebyshev_range,
    hawkes_range,
    resolve_range,
)

__version__ = "0.1.0"
