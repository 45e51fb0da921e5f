"""Command-line entry point.

Subcommands: tau, coeffs, verify identities, verify factorization,
partial-sums, euler-eval.  Exit codes: 0 all checks pass, 1 check failure,
2 usage error, 3 IO/resource error.  Generated discriminant-form
coefficients are cached on disk in the coefficient-file format; the cache
directory is TRIPLE_HECKE_CACHE or ~/.cache/triple-hecke.
"""

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

from . import asymptotics, eigenvalues, identities, satake, series
from .errors import (
    CoefficientParseError,
    DepthError,
    DomainError,
    RankError,
    ResourceLimitError,
)

X_COEFF_BOUND = 1e-12


def fmt(value):
    """17 significant digits, the round-trip precision of a double."""
    return format(float(value), ".17g")


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the subcommands."""

    form: str = "delta"
    limit: int = 0
    prime_limit: int = 0
    depth: int = satake.DEFAULT_DEPTH
    tol: float = 1e-9
    cache_dir: str = ""
    use_cache: bool = True

    def __post_init__(self):
        if self.limit < 0 or self.prime_limit < 0:
            raise DomainError("limits must be positive")
        if self.tol < 0:
            raise DomainError("tolerance must be >= 0")
        if self.depth < 1:
            raise DomainError("depth must be >= 1")


def cache_directory(explicit=None):
    if explicit:
        return explicit
    env = os.environ.get("TRIPLE_HECKE_CACHE")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "triple-hecke")


_CACHE_RE = re.compile(r"^delta_tau_(\d+)\.coeffs$")


def delta_coefficients(limit, config):
    """Discriminant-form coefficients through the on-disk cache."""
    if not config.use_cache:
        return eigenvalues.generate_delta_coefficients(limit)
    cache = cache_directory(config.cache_dir)
    best = None
    if os.path.isdir(cache):
        for name in os.listdir(cache):
            m = _CACHE_RE.match(name)
            if m and int(m.group(1)) >= limit:
                if best is None or int(m.group(1)) < best[0]:
                    best = (int(m.group(1)), os.path.join(cache, name))
    if best is not None:
        return eigenvalues.load_form(best[1], limit=limit)
    coeffs = eigenvalues.generate_delta_coefficients(limit)
    os.makedirs(cache, exist_ok=True)
    path = os.path.join(cache, f"delta_tau_{limit}.coeffs")
    tmp = path + ".tmp"
    eigenvalues.save_form(coeffs, tmp)
    os.replace(tmp, path)
    return coeffs


def resolve_form(limit, config):
    if config.form == "delta":
        return delta_coefficients(limit, config)
    coeffs = eigenvalues.load_form(config.form, limit=limit)
    if coeffs.limit < limit:
        raise DomainError(
            f"form file {config.form} has {coeffs.limit} coefficients, need {limit}"
        )
    return coeffs


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_tau(args):
    if args.limit < 1:
        print("error: --limit must be >= 1", file=sys.stderr)
        return 2
    config = RunConfig(
        limit=args.limit, cache_dir=args.cache_dir or "", use_cache=not args.no_cache
    )
    coeffs = delta_coefficients(args.limit, config)
    trimmed = eigenvalues.FourierCoefficients(
        weight=coeffs.weight, values=coeffs.values[: args.limit + 1]
    )
    eigenvalues.save_form(trimmed, args.out)
    print(f"wrote {args.limit} coefficients to {args.out}")
    return 0


def cmd_coeffs(args):
    if args.limit < 1:
        print("error: --limit must be >= 1", file=sys.stderr)
        return 2
    config = RunConfig(form=args.form, limit=args.limit, cache_dir=args.cache_dir or "")
    coeffs = resolve_form(args.limit, config)
    result = series.build_series(coeffs, args.series, args.limit)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("n,value\n")
        for n in range(1, result.limit + 1):
            fh.write(f"{n},{fmt(result.values[n])}\n")
    print(f"wrote {result.limit} coefficients of {result.label} to {args.out}")
    return 0


def cmd_verify_identities(args):
    config = RunConfig(
        form=args.form,
        prime_limit=args.prime_limit,
        tol=args.tol,
        cache_dir=args.cache_dir or "",
    )
    form = resolve_form(args.prime_limit, config)
    reports = identities.check_all(
        form, args.prime_limit, args.tol, grid_size=args.synthetic_grid
    )
    print(f"{'identity':<28} {'tested':>7} {'max_dev':>12} {'worst':>16} pass")
    for r in reports:
        print(
            f"{r.identity:<28} {r.tested:>7} {r.max_dev:>12.3e} "
            f"{r.worst_point:>16} {'yes' if r.passed else 'NO'}"
        )
    all_pass = all(r.passed for r in reports)
    if args.report:
        write_json(
            args.report,
            {
                "check": "identities",
                "prime_limit": args.prime_limit,
                "synthetic_grid": args.synthetic_grid,
                "tol": args.tol,
                "reports": [r.to_dict() for r in reports],
                "pass": all_pass,
            },
        )
    return 0 if all_pass else 1


def factorization_check(form, prime_limit, depth, tol):
    """Coefficientwise local factorization check for both squared series.

    For each prime, the squared-series local factor must match the
    four-factor product times the correction factor, and the correction's
    x-coefficient must vanish.  Returns one result dict per series plus a
    degree bookkeeping entry.
    """
    primes, lams = eigenvalues.normalize_primes(form, prime_limit)
    rows = []
    for which in ("U", "V"):
        spec = series.CORRECTIONS[which]
        max_dev = 0.0
        worst = 0
        max_x = 0.0
        tested = 0
        for p, lam in zip(primes, lams):
            s = satake.satake_from_lambda(int(p), lam)
            squared = series.squared_local_factor(s, spec.base_label, depth)
            den = series.factorization_denominator(s, which, depth)
            corr = series.correction_factor_local(s, which, depth)
            recon = series.series_mul(den, list(corr.coefficients), depth)
            dev = max(
                abs(a - b) for a, b in zip(squared.coefficients, recon)
            )
            tested += 1
            if dev > max_dev:
                max_dev = dev
                worst = int(p)
            max_x = max(max_x, abs(corr.coefficients[1]))
        rows.append(
            {
                "series": spec.base_label + "-squared",
                "correction": which,
                "primes_tested": tested,
                "depth": depth,
                "max_coeff_dev": max_dev,
                "worst_prime": worst,
                "max_x_coefficient": max_x,
                "pass": max_dev <= tol and max_x < X_COEFF_BOUND,
            }
        )
    degrees = {
        which: {
            "pairing_degree": series.CORRECTIONS[which].pairing_degree,
            "factor_degree_sum": series.CORRECTIONS[which].degree_sum,
            "pass": series.CORRECTIONS[which].pairing_degree
            == series.CORRECTIONS[which].degree_sum,
        }
        for which in ("U", "V")
    }
    return rows, degrees


def cmd_verify_factorization(args):
    config = RunConfig(
        form=args.form,
        prime_limit=args.prime_limit,
        depth=args.depth,
        tol=args.tol,
        cache_dir=args.cache_dir or "",
    )
    form = resolve_form(args.prime_limit, config)
    rows, degrees = factorization_check(form, args.prime_limit, args.depth, args.tol)
    print(
        f"{'series':<18} {'primes':>7} {'max_dev':>12} {'max_x_coeff':>12} pass"
    )
    for r in rows:
        print(
            f"{r['series']:<18} {r['primes_tested']:>7} {r['max_coeff_dev']:>12.3e} "
            f"{r['max_x_coefficient']:>12.3e} {'yes' if r['pass'] else 'NO'}"
        )
    for which, d in degrees.items():
        print(
            f"degree bookkeeping {which}: pairing {d['pairing_degree']} "
            f"== sum {d['factor_degree_sum']}: {'yes' if d['pass'] else 'NO'}"
        )
    all_pass = all(r["pass"] for r in rows) and all(d["pass"] for d in degrees.values())
    if args.report:
        write_json(
            args.report,
            {
                "check": "factorization",
                "prime_limit": args.prime_limit,
                "depth": args.depth,
                "tol": args.tol,
                "series": rows,
                "degrees": degrees,
                "pass": all_pass,
            },
        )
    return 0 if all_pass else 1


def cmd_partial_sums(args):
    if args.limit < 1:
        print("error: --limit must be >= 1", file=sys.stderr)
        return 2
    config = RunConfig(form=args.form, limit=args.limit, cache_dir=args.cache_dir or "")
    coeffs = resolve_form(args.limit, config)
    result = series.build_series(coeffs, args.series, args.limit)
    grid = asymptotics.GeometricGrid(
        start=min(args.grid_start, args.limit), stop=args.limit, count=args.grid_points
    )
    table = asymptotics.partial_sums(result, grid)
    fit = asymptotics.fit_main_term(table, args.fit_degree, args.weighting)
    alt = None
    if args.fit_degree > 0:
        alt = asymptotics.fit_main_term(table, args.fit_degree - 1, args.weighting)
    exponent = asymptotics.residual_exponent_estimate(table, fit)
    payload = {
        "series": result.label,
        "grid": [int(x) for x in table.xs],
        "sums": [float(v) for v in table.sums],
        "fit": {
            "degree": fit.degree,
            "coeffs": [float(c) for c in fit.coefficients],
            "rms": fit.rms,
        },
        "alt_fit": None
        if alt is None
        else {
            "degree": alt.degree,
            "coeffs": [float(c) for c in alt.coefficients],
            "rms": alt.rms,
        },
        "residual_exponent": exponent.to_dict(),
    }
    write_json(args.report, payload)
    print(
        f"{result.label}: fit degree {fit.degree} rms {fmt(fit.rms)}"
        + ("" if alt is None else f", degree {alt.degree} rms {fmt(alt.rms)}")
    )
    exp_text = "below-noise" if exponent.below_noise else fmt(exponent.value)
    print(f"residual exponent estimate: {exp_text}")
    print(f"report written to {args.report}")
    return 0


def cmd_euler_eval(args):
    config = RunConfig(
        form=args.form, prime_limit=args.prime_limit, cache_dir=args.cache_dir or ""
    )
    if args.factor == "zeta":
        provider = series.zeta_provider
    else:
        coeffs = resolve_form(args.prime_limit, config)
        provider = series.correction_provider(coeffs, args.factor, args.prime_limit)
    result = series.evaluate_truncated_euler(provider, args.s, args.prime_limit)
    change = (
        "n/a" if result.last_decade_change is None else fmt(result.last_decade_change)
    )
    print(f"factor {args.factor} at s={fmt(args.s)}, primes <= {args.prime_limit}")
    print(f"value {fmt(result.value)} over {result.factors} factors")
    print(f"last-decade change {change}")
    if args.report:
        write_json(
            args.report,
            {
                "factor": args.factor,
                "s": args.s,
                "prime_limit": result.prime_limit,
                "factors": result.factors,
                "value": result.value,
                "last_decade_change": result.last_decade_change,
            },
        )
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="triple-hecke",
        description="Coefficient series, identity checks, and main-term fits "
        "for level-1 cusp forms",
    )
    parser.set_defaults(func=None)
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--form", default="delta", help="'delta' or a coefficient file")
        p.add_argument("--cache-dir", default=None, help="override the cache directory")

    p_tau = sub.add_parser("tau", help="generate discriminant-form coefficients")
    p_tau.add_argument("--limit", type=int, required=True)
    p_tau.add_argument("--out", required=True)
    p_tau.add_argument("--no-cache", action="store_true")
    p_tau.add_argument("--cache-dir", default=None)
    p_tau.set_defaults(func=cmd_tau)

    p_coeffs = sub.add_parser("coeffs", help="emit a coefficient series as CSV")
    common(p_coeffs)
    p_coeffs.add_argument(
        "--series", required=True, help="triple | sym2xf | sym:j | rs:i:j"
    )
    p_coeffs.add_argument("--limit", type=int, required=True)
    p_coeffs.add_argument("--out", required=True)
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_verify = sub.add_parser("verify", help="run verification suites")
    vsub = p_verify.add_subparsers(dest="suite")

    p_id = vsub.add_parser("identities", help="prime-coefficient identity suite")
    common(p_id)
    p_id.add_argument("--prime-limit", type=int, default=10_000)
    p_id.add_argument("--tol", type=float, default=1e-9)
    p_id.add_argument("--synthetic-grid", type=int, default=1000)
    p_id.add_argument("--report", default=None)
    p_id.set_defaults(func=cmd_verify_identities)

    p_fact = vsub.add_parser("factorization", help="local factorization suite")
    common(p_fact)
    p_fact.add_argument("--prime-limit", type=int, default=1000)
    p_fact.add_argument("--depth", type=int, default=10)
    p_fact.add_argument("--tol", type=float, default=1e-9)
    p_fact.add_argument("--report", default=None)
    p_fact.set_defaults(func=cmd_verify_factorization)

    p_ps = sub.add_parser("partial-sums", help="partial sums and main-term fit")
    common(p_ps)
    p_ps.add_argument(
        "--series",
        required=True,
        help="triple-sq | sym2xf-sq | triple | sym2xf | sym:j | rs:i:j",
    )
    p_ps.add_argument("--limit", type=int, required=True)
    p_ps.add_argument("--fit-degree", type=int, required=True)
    p_ps.add_argument("--report", required=True)
    p_ps.add_argument("--grid-points", type=int, default=40)
    p_ps.add_argument("--grid-start", type=int, default=1000)
    p_ps.add_argument("--weighting", choices=("uniform", "sqrt-x"), default="uniform")
    p_ps.set_defaults(func=cmd_partial_sums)

    p_euler = sub.add_parser("euler-eval", help="truncated Euler product value")
    common(p_euler)
    p_euler.add_argument("--factor", choices=("U", "V", "zeta"), required=True)
    p_euler.add_argument("--s", type=float, required=True)
    p_euler.add_argument("--prime-limit", type=int, required=True)
    p_euler.add_argument("--report", default=None)
    p_euler.set_defaults(func=cmd_euler_eval)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (CoefficientParseError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, DepthError, RankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
