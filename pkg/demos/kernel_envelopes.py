"""Check the certified error-kernel envelopes on a fine grid.

The pointwise CDF error of a filtered series is a probability-weighted
combination of the kernel k1, so a closed-form envelope on |k1| certifies
the error. For each filter this sweeps 1000 interior points of (0, 2*pi)
across term counts and confirms the envelope is never crossed, then traces
|k1(0.5)| to show the decay next to its envelope.
"""

from discos import (
    exponential,
    k1_trace,
    lanczos,
    raised_cosine,
    sharpened_raised_cosine,
    verify_k1_bounds,
)

K_LIST = [16, 32, 64, 128, 256, 512]
CONFIGS = [
    ("lanczos", lanczos()),
    ("raised cosine", raised_cosine()),
    ("sharpened raised cosine", sharpened_raised_cosine()),
    ("exponential, alpha=16", exponential(alpha=16.0)),
    ("exponential, alpha=ln K^2", exponential(alpha_rule="k_squared")),
]

print("envelope sweep: 1000 interior grid points, K in", K_LIST, "\n")
for name, filt in CONFIGS:
    report = verify_k1_bounds(filt, K_LIST, grid_n=1000)
    print(f"{name:<28} checked={report.checked:<6} skipped={report.skipped:<5} "
          f"violations={len(report.violations)} min slack={report.min_slack:.2e}")

print("\n|k1(0.5)| against its envelope (raised cosine):")
print(f"{'K':>6} {'|k1(0.5)|':>14} {'envelope':>14}")
for K, v, bound, adm in k1_trace(raised_cosine(), 0.5, K_LIST):
    tag = "" if adm else "  (below certification threshold)"
    print(f"{int(K):>6} {v:>14.3e} {bound:>14.3e}{tag}")

print("\nNote how the trace sits well under the envelope and even decays about")
print("one order faster; the envelope is what the closed forms certify.")
