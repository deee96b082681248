"""Command-line front end.

Wires model documents through range selection, coefficient sampling, and
evaluation into CSV artifacts. Every artifact starts with one comment line
holding a JSON header that names the resolved parameters (including the
original argv), so any output can be regenerated bit-identically from its
own header. Exit codes: 0 success, 2 validation error, 3 numeric-domain
error, 4 envelope violation (bounds command only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .engine import (
    cos_moment,
    filtered_cdf,
    filtered_cdf_2d,
    recover_pmf,
    sample_coefficients,
    sample_coefficients_2d,
)
from .errors import (
    ConfigurationError,
    DiscosError,
    NumericDomainError,
)
from .filters import FilterSpec, all_pass, exponential, lanczos, raised_cosine, sharpened_raised_cosine
from .kernels import _kernel_k1_extended, k1_bound, k1_trace, verify_k1_bounds
from .models import LoadedModel, load_model
from .oracles import (
    exact_cdf,
    gpb_convolve,
    gpb_enumerate,
    gpb_sampler,
    hawkes_count_sampler,
    monte_carlo_cdf,
)
from .truncation import RangeRule, resolve_range

FILTER_ALIASES = {
    "lanczos": "lanczos",
    "rcos": "raised_cosine",
    "srcos": "sharpened_raised_cosine",
    "exp": "exponential",
    "none": "all_pass",
}


def parse_position(token: str) -> float:
    """Positions accept plain floats and pi-multiples like '0.6pi' or '-pi'."""
    t = token.strip().lower()
    if t.endswith("pi"):
        head = t[:-2].strip()
        if head in ("", "+"):
            return np.pi
        if head == "-":
            return -np.pi
        return float(head) * np.pi
    return float(t)


def parse_positions(text: str) -> list[float]:
    return [parse_position(tok) for tok in text.split(",") if tok.strip()]


def parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def build_filter(args) -> FilterSpec:
    kind = FILTER_ALIASES.get(args.filter)
    if kind is None:
        raise ConfigurationError(f"unknown filter {args.filter!r}")
    if kind == "lanczos":
        return lanczos()
    if kind == "raised_cosine":
        return raised_cosine()
    if kind == "sharpened_raised_cosine":
        return sharpened_raised_cosine()
    if kind == "all_pass":
        return all_pass()
    alpha = getattr(args, "alpha", None)
    order = getattr(args, "exp_order", 2)
    if alpha is None or alpha == "eps":
        return exponential(order, alpha_rule="machine_eps")
    if alpha == "k2":
        return exponential(order, alpha_rule="k_squared")
    return exponential(order, alpha=float(alpha))


def parse_range_rule(text: str) -> RangeRule:
    t = text.strip()
    if t.startswith("explicit:"):
        parts = t[len("explicit:"):].split(",")
        if len(parts) != 2:
            raise ConfigurationError("explicit range must look like explicit:a,b")
        return RangeRule("explicit", a=parse_position(parts[0]), b=parse_position(parts[1]))
    if t.startswith("chebyshev"):
        tol = 1e-6
        if ":" in t:
            tol = float(t.split(":", 1)[1])
        return RangeRule("chebyshev", tol=tol)
    if t == "hawkes":
        return RangeRule("hawkes_25sigma")
    raise ConfigurationError(f"unknown range rule {text!r}")


def pick_range(args, model: LoadedModel) -> tuple[float, float]:
    """Resolve [a, b]: explicit flags win, then --range, then a model default
    (support hull + 5% pad for bounded laws, the many-sigma rule for the
    count process)."""
    if getattr(args, "a", None) is not None or getattr(args, "b", None) is not None:
        if args.a is None or args.b is None:
            raise ConfigurationError("provide both --a and --b or neither")
        return parse_position(args.a), parse_position(args.b)
    if getattr(args, "range", None):
        rule = parse_range_rule(args.range)
        return resolve_range(rule, cf=model.charfn, model=model.hawkes)
    if model.kind == "hawkes":
        return resolve_range(RangeRule("hawkes_25sigma"), cf=model.charfn, model=model.hawkes)
    if model.kind in ("gpb", "pb"):
        lo, hi = model.gpb.support_bounds()
    else:
        lo, hi = float(model.dist.points[0]), float(model.dist.points[-1])
    pad = 0.05 * max(hi - lo, 1.0)
    return lo - pad, hi + pad


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".16e")


def write_artifact(path, header: dict, columns, rows, footer: str | None = None) -> None:
    header = dict(header)
    header["version"] = __version__
    threads = os.environ.get("DISCOS_THREADS")
    if threads is not None:
        header["threads_cap"] = threads
    lines = ["# " + json.dumps(header, sort_keys=True, separators=(",", ":"))]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    if footer is not None:
        lines.append("# " + footer)
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def read_artifact_header(path) -> dict:
    """Parse the JSON provenance header of an artifact (first line)."""
    with open(path) as fh:
        first = fh.readline()
    if not first.startswith("# "):
        raise ConfigurationError(f"{path} does not start with a provenance header")
    return json.loads(first[2:])


def _model_and_expansion(args):
    model = load_model(args.model, steps=getattr(args, "steps", 2000))
    filt = build_filter(args)
    a, b = pick_range(args, model)
    exp = sample_coefficients(model.charfn, a, b, args.K)
    return model, filt, exp


def _exact_reference(model: LoadedModel):
    """Exact CDF oracle for bounded models, None when unavailable."""
    if model.kind == "discrete":
        return model.dist
    if model.kind in ("gpb", "pb"):
        if model.gpb.n_components <= 20:
            return gpb_enumerate(model.gpb)
        return gpb_convolve(model.gpb)
    return None


def _header_base(args, command: str, extra: dict | None = None) -> dict:
    h = {"command": command, "argv": args._argv}
    if extra:
        h.update(extra)
    return h


# ----------------------------------------------------------------------------
# Subcommand drivers
# ----------------------------------------------------------------------------


def cmd_cdf(args) -> int:
    model, filt, exp = _model_and_expansion(args)
    xs = parse_positions(args.at) if args.at else list(np.linspace(exp.a, exp.b, 201))
    vals = filtered_cdf(exp, filt, np.asarray(xs))
    header = _header_base(args, "cdf", {"a": exp.a, "b": exp.b, "K": args.K, "filter": args.filter,
                                        "model": args.model, "seed": args.seed})
    write_artifact(args.output, header, ["x", "value"], zip(xs, np.atleast_1d(vals)))
    return 0


def _default_pmf_support(model: LoadedModel, exp, dx: float = 0.25) -> np.ndarray:
    if model.kind == "discrete":
        return model.dist.points
    if model.kind in ("gpb", "pb"):
        ref = _exact_reference(model)
        pts = ref.points
        return pts[(pts > exp.a) & (pts < exp.b)]
    # integer count lattice, kept clear of the interval ends by dx
    lo = int(np.ceil(max(model.hawkes.N_t, exp.a + dx + 1e-9)))
    hi = int(np.floor(exp.b - dx - 1e-9))
    return np.arange(lo, hi + 1, dtype=float)


def cmd_pmf(args) -> int:
    model, filt, exp = _model_and_expansion(args)
    support = np.asarray(parse_positions(args.at)) if args.at else _default_pmf_support(model, exp)
    dx = args.dx if args.dx is not None else 0.25 * float(np.min(np.diff(support))) if support.size > 1 else 0.25
    masses = recover_pmf(exp, filt, support, dx)
    header = _header_base(args, "pmf", {"a": exp.a, "b": exp.b, "K": args.K, "filter": args.filter,
                                        "model": args.model, "dx": dx, "seed": args.seed})
    write_artifact(args.output, header, ["x", "mass"], zip(support, masses))
    return 0


def cmd_moment(args) -> int:
    model, filt, exp = _model_and_expansion(args)
    rows = [(q, cos_moment(exp, filt, q)) for q in parse_int_list(args.q)]
    header = _header_base(args, "moment", {"a": exp.a, "b": exp.b, "K": args.K,
                                           "filter": args.filter, "model": args.model,
                                           "q": args.q, "seed": args.seed})
    write_artifact(args.output, header, ["q", "value"], rows)
    return 0


def cmd_cdf2d(args) -> int:
    text = args.model
    try:
        if os.path.exists(text):
            text = open(text).read()
    except OSError:
        pass
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("type") != "product":
        raise ConfigurationError('cdf2d expects a model document of type "product" with "x" and "y"')
    mx = load_model(doc["x"])
    my = load_model(doc["y"])
    filt = build_filter(args)
    ax, bx = pick_range(args, mx)
    ay, by = pick_range(args, my)

    def cf2(w1, w2):
        return np.asarray(mx.charfn(w1)) * np.asarray(my.charfn(w2))

    exp2 = sample_coefficients_2d(cf2, (ax, bx, ay, by), args.K1, args.K2)
    pts = []
    for tok in args.at.split(","):
        xy = tok.split(":")
        if len(xy) != 2:
            raise ConfigurationError("cdf2d --at expects pairs like 0.5pi:0.25pi")
        pts.append((parse_position(xy[0]), parse_position(xy[1])))
    rows = [(x, y, filtered_cdf_2d(exp2, filt, x, y)) for x, y in pts]
    header = _header_base(args, "cdf2d", {"bounds": [ax, bx, ay, by], "K1": args.K1,
                                          "K2": args.K2, "filter": args.filter,
                                          "model": args.model, "seed": args.seed})
    write_artifact(args.output, header, ["x1", "x2", "value"], rows)
    return 0


def cmd_bounds(args) -> int:
    filt = build_filter(args)
    report = verify_k1_bounds(filt, parse_int_list(args.K), args.grid)
    rows = []
    for K in report.K_values:
        absk1 = np.abs(_kernel_k1_extended(filt, K, report.grid)).astype(float)
        for x, v in zip(report.grid, absk1):
            bound, adm = k1_bound(filt, K, float(x))
            rows.append((K, x, v, bound, adm))
    summary = (
        f"checked={report.checked} skipped={report.skipped} "
        f"violations={len(report.violations)} min_slack={report.min_slack:.6e}"
    )
    header = _header_base(args, "bounds", {"filter": args.filter, "K": args.K,
                                           "grid": args.grid, "alpha": args.alpha})
    write_artifact(args.output, header, ["K", "x", "abs_K1", "bound", "admissible"], rows, footer=summary)
    return 4 if report.violations else 0


def cmd_trace(args) -> int:
    filt = build_filter(args)
    x = parse_position(args.at)
    tr = k1_trace(filt, x, parse_int_list(args.K))
    header = _header_base(args, "trace", {"filter": args.filter, "K": args.K, "x": x,
                                          "alpha": args.alpha})
    rows = [(int(K), v, b, bool(adm)) for K, v, b, adm in tr]
    write_artifact(args.output, header, ["K", "abs_K1", "bound", "admissible"], rows)
    return 0


def cmd_hawkes(args) -> int:
    model = load_model(args.config, steps=args.steps)
    if model.kind != "hawkes":
        raise ConfigurationError("hawkes command needs a model document of type hawkes")
    filt = build_filter(args)
    a, b = pick_range(args, model)
    exp = sample_coefficients(model.charfn, a, b, args.K)
    if args.what == "cdf":
        xs = parse_positions(args.at) if args.at else list(np.linspace(exp.a, exp.b, 401))
        vals = filtered_cdf(exp, filt, np.asarray(xs))
        cols, rows = ["x", "value"], zip(xs, np.atleast_1d(vals))
    elif args.what == "pmf":
        dx = args.dx if args.dx is not None else 0.25
        support = _default_pmf_support(model, exp, dx)
        masses = recover_pmf(exp, filt, support, dx)
        cols, rows = ["count", "mass"], zip(support, masses)
    else:
        rows = [(q, cos_moment(exp, filt, q)) for q in parse_int_list(args.q)]
        cols = ["q", "value"]
    header = _header_base(args, "hawkes", {"a": exp.a, "b": exp.b, "K": args.K,
                                           "filter": args.filter, "config": args.config,
                                           "steps": args.steps, "what": args.what})
    write_artifact(args.output, header, cols, rows)
    return 0


def cmd_gpb(args) -> int:
    args.model = args.config
    model = load_model(args.config)
    if model.kind not in ("gpb", "pb"):
        raise ConfigurationError("gpb command needs a model document of type gpb or pb")
    filt = build_filter(args)
    a, b = pick_range(args, model)
    exp = sample_coefficients(model.charfn, a, b, args.K)
    if args.what == "cdf":
        xs = np.asarray(parse_positions(args.at)) if args.at else np.linspace(exp.a, exp.b, 1001)
        vals = filtered_cdf(exp, filt, xs)
        cols, rows = ["x", "value"], zip(xs, np.atleast_1d(vals))
    else:
        ref = _exact_reference(model)
        support = ref.points[(ref.points > exp.a) & (ref.points < exp.b)]
        dx = args.dx if args.dx is not None else 0.25 * float(np.min(np.diff(support)))
        masses = recover_pmf(exp, filt, support, dx)
        cols, rows = ["x", "mass"], zip(support, masses)
    header = _header_base(args, "gpb", {"a": exp.a, "b": exp.b, "K": args.K,
                                        "filter": args.filter, "config": args.config,
                                        "what": args.what, "seed": args.seed})
    write_artifact(args.output, header, cols, rows)
    return 0


def cmd_oracle(args) -> int:
    model = load_model(args.model)
    ref = _exact_reference(model)
    xs = np.asarray(parse_positions(args.at)) if args.at else None
    if args.method == "exact":
        if ref is None:
            raise ConfigurationError("no exact oracle for this model kind; use --method mc")
        if args.what == "cdf":
            if xs is None:
                raise ConfigurationError("oracle cdf needs --at")
            rows = zip(xs, exact_cdf(ref, xs))
            cols = ["x", "value"]
        elif args.what == "pmf":
            rows = zip(ref.points, ref.probs)
            cols = ["x", "mass"]
        else:
            rows = [(q, ref.moment(q)) for q in parse_int_list(args.q)]
            cols = ["q", "value"]
    else:
        if args.what != "cdf":
            raise ConfigurationError("--method mc supports only the cdf oracle")
        if xs is None:
            raise ConfigurationError("oracle cdf needs --at")
        if model.kind in ("gpb", "pb"):
            sampler = gpb_sampler(model.gpb)
        elif model.kind == "hawkes":
            sampler = hawkes_count_sampler(model.hawkes)
        else:
            raise ConfigurationError("mc oracle supports gpb/pb/hawkes models")
        vals, se = monte_carlo_cdf(sampler, args.paths, xs, args.seed)
        rows = zip(xs, vals)
        cols = ["x", "value"]
    header = _header_base(args, "oracle", {"model": args.model, "method": args.method,
                                           "what": args.what, "paths": args.paths,
                                           "seed": args.seed})
    write_artifact(args.output, header, cols, rows)
    return 0


def cmd_convergence(args) -> int:
    model = load_model(args.model)
    ref = _exact_reference(model)
    if ref is None:
        raise ConfigurationError("convergence study needs a model with an exact oracle")
    filt = build_filter(args)
    a, b = pick_range(args, model)
    x = parse_position(args.at)
    truth = exact_cdf(ref, x)
    rows = []
    for K in parse_int_list(args.K):
        exp = sample_coefficients(model.charfn, a, b, K)
        v = filtered_cdf(exp, filt, x)
        rows.append((K, v, truth, abs(v - truth)))
    header = _header_base(args, "convergence", {"a": a, "b": b, "K": args.K, "x": x,
                                                "filter": args.filter, "model": args.model})
    write_artifact(args.output, header, ["K", "value", "exact", "abs_error"], rows)
    return 0


# ----------------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------------


def _add_filter_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--filter", default="rcos",
                   help="spectral filter: lanczos|rcos|srcos|exp|none (default rcos)")
    p.add_argument("--alpha", default=None,
                   help="exponential filter alpha: a float, 'eps' (=-ln machine eps), or 'k2' (=ln K^2)")
    p.add_argument("--exp-order", type=int, default=2, dest="exp_order",
                   help="exponential filter order p (even integer >= 2)")


def _add_range_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--range", default=None,
                   help="truncation rule: explicit:a,b | chebyshev:tol | hawkes "
                        "(default: support hull + 5%% pad, or the hawkes rule)")
    p.add_argument("--a", default=None, help="explicit lower truncation bound (accepts pi literals)")
    p.add_argument("--b", default=None, help="explicit upper truncation bound (accepts pi literals)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", default=None, help="output CSV path (default stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in the artifact header")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="discos",
        description="Filtered cosine-series inversion of characteristic functions "
                    "for discrete probability distributions.",
    )
    ap.add_argument("--version", action="version", version=f"discos {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def mk(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    p = mk("cdf", cmd_cdf, "filtered CDF of a 1-D model")
    p.add_argument("--model", "--charfn", dest="model", required=True,
                   help="model JSON document or path")
    p.add_argument("-K", type=int, required=True, help="highest Fourier index")
    p.add_argument("--at", default=None, help="evaluation points, comma list, pi literals ok")
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("pmf", cmd_pmf, "point masses at known support locations")
    p.add_argument("--model", "--charfn", dest="model", required=True)
    p.add_argument("-K", type=int, required=True)
    p.add_argument("--at", default=None, help="support points (default: model support)")
    p.add_argument("--dx", type=float, default=None, help="CDF half-increment (default: quarter gap)")
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("moment", cmd_moment, "moments of the filtered expansion")
    p.add_argument("--model", "--charfn", dest="model", required=True)
    p.add_argument("-K", type=int, required=True)
    p.add_argument("--q", default="1", help="moment orders, comma list (default 1)")
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("cdf2d", cmd_cdf2d, "joint CDF of an independent product model")
    p.add_argument("--model", required=True, help='JSON: {"type":"product","x":{...},"y":{...}}')
    p.add_argument("--K1", type=int, required=True)
    p.add_argument("--K2", type=int, required=True)
    p.add_argument("--at", required=True, help="pairs x:y, comma list")
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("bounds", cmd_bounds, "sweep |k1| against its certified envelope")
    p.add_argument("-K", required=True, help="comma list of term counts")
    p.add_argument("--grid", type=int, default=1000, help="number of interior grid points")
    _add_filter_flags(p); _add_common(p)

    p = mk("trace", cmd_trace, "|k1(x)| and envelope vs term count")
    p.add_argument("-K", required=True, help="comma list of term counts")
    p.add_argument("--at", required=True, help="kernel argument x in (0, 2pi)")
    _add_filter_flags(p); _add_common(p)

    p = mk("hawkes", cmd_hawkes, "count-distribution artifacts for the self-exciting model")
    p.add_argument("--config", required=True, help="hawkes model JSON document or path")
    p.add_argument("-K", type=int, required=True)
    p.add_argument("--steps", type=int, default=2000, help="RK4 steps for the transform ODEs")
    p.add_argument("--what", choices=("cdf", "pmf", "moment"), default="cdf")
    p.add_argument("--at", default=None)
    p.add_argument("--dx", type=float, default=None)
    p.add_argument("--q", default="1")
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("gpb", cmd_gpb, "CDF/PMF artifacts for two-point-sum models")
    p.add_argument("--config", required=True, help="gpb/pb model JSON document or path")
    p.add_argument("-K", type=int, required=True)
    p.add_argument("--what", choices=("cdf", "pmf"), default="cdf")
    p.add_argument("--at", default=None)
    p.add_argument("--dx", type=float, default=None)
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    p = mk("oracle", cmd_oracle, "ground-truth values (exact or Monte Carlo)")
    p.add_argument("what", choices=("cdf", "pmf", "moment"))
    p.add_argument("--model", required=True)
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--paths", type=int, default=100_000, help="Monte Carlo path count")
    p.add_argument("--at", default=None)
    p.add_argument("--q", default="1")
    _add_common(p)

    p = mk("convergence", cmd_convergence, "CDF error at a point vs term count")
    p.add_argument("--model", required=True)
    p.add_argument("-K", required=True, help="comma list of term counts")
    p.add_argument("--at", required=True)
    _add_filter_flags(p); _add_range_flags(p); _add_common(p)

    return ap


def _strip_output_flag(argv: list[str]) -> list[str]:
    out = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("-o", "--output"):
            skip = True
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # the header records the computation, not where it was written
    args._argv = _strip_output_flag(argv)
    try:
        return args.func(args)
    except NumericDomainError as exc:
        print(f"discos: numeric-domain error: {exc}", file=sys.stderr)
        return 3
    except (DiscosError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"discos: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
