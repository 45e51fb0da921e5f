"""Numerical checks of the prime-coefficient identity chain.

Each identity relates prime coefficients of the triple product, the
symmetric powers, and their Rankin-Selberg convolutions.  The two sides
are evaluated through different code paths (truncated local factor
expansions versus the Chebyshev recurrence), so a pass genuinely
cross-validates the implementations rather than comparing a value with
itself.  Deviations are absolute: the values live on the unit-circle
parameter space and are O(1) to O(100), where relative error degenerates
near zeros of either side.

Identity ids:

    triple-sq-sym3-expansion   t(p)^2 = u3^2 + 4 u3 u1 + 4 u1^2
    sym3-sq-rs24               u3^2 = 1 + r24(p)
    sym2-plus-sym4             u2 + u4 = u3 u1
    lambda-sq-sym2             u1^2 = 1 + u2
    triple-sq-basis            t(p)^2 = 5 + 8 u2 + 4 u4 + r24(p)
    sym2xf-split               g(p) = u3 + u1
    sym2xf-sq-basis            g(p)^2 = 2 + 3 u2 + 2 u4 + r24(p)

where u_j is the sym^j prime coefficient, t(p) the triple-product prime
coefficient, g(p) the sym^2 (x) f prime coefficient, and r24(p) the
sym^2 (x) sym^4 prime coefficient.  The constants in sym2xf-sq-basis are
forced by the multiplicities (2, 3, 2, 1) of its squared-series
factorization and are verified here rather than assumed.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import satake
from .eigenvalues import normalize_primes
from .errors import DomainError


def _primitives(theta, lam):
    u1 = lam
    u2 = lam * u1 - 1.0
    u3 = lam * u2 - u1
    u4 = lam * u3 - u2
    expand = satake.expand_inverse_product
    return {
        "u1": u1,
        "u2": u2,
        "u3": u3,
        "u4": u4,
        "triple": expand(theta, satake.TRIPLE_EXPONENTS, 1)[1],
        "rs21": expand(theta, satake.rankin_selberg_exponents(2, 1), 1)[1],
        "rs24": expand(theta, satake.rankin_selberg_exponents(2, 4), 1)[1],
        "sym2": expand(theta, satake.sym_exponents(2), 1)[1],
        "sym4": expand(theta, satake.sym_exponents(4), 1)[1],
    }


IDENTITIES = {
    "triple-sq-sym3-expansion": (
        lambda v: v["triple"] ** 2,
        lambda v: v["u3"] ** 2 + 4.0 * v["u3"] * v["u1"] + 4.0 * v["u1"] ** 2,
    ),
    "sym3-sq-rs24": (
        lambda v: v["u3"] ** 2,
        lambda v: 1.0 + v["rs24"],
    ),
    "sym2-plus-sym4": (
        lambda v: v["sym2"] + v["sym4"],
        lambda v: v["u3"] * v["u1"],
    ),
    "lambda-sq-sym2": (
        lambda v: v["u1"] ** 2,
        lambda v: 1.0 + v["sym2"],
    ),
    "triple-sq-basis": (
        lambda v: v["triple"] ** 2,
        lambda v: 5.0 + 8.0 * v["u2"] + 4.0 * v["u4"] + v["u2"] * v["u4"],
    ),
    "sym2xf-split": (
        lambda v: v["rs21"],
        lambda v: v["u3"] + v["u1"],
    ),
    "sym2xf-sq-basis": (
        lambda v: v["rs21"] ** 2,
        lambda v: 2.0 + 3.0 * v["u2"] + 2.0 * v["u4"] + v["u2"] * v["u4"],
    ),
}


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    tested: int
    max_dev: float
    worst_point: str
    tol: float

    @property
    def passed(self):
        return self.max_dev <= self.tol

    def to_dict(self):
        return {
            "identity": self.identity,
            "tested": self.tested,
            "max_dev": self.max_dev,
            "worst_point": self.worst_point,
            "pass": self.passed,
        }


def _form_points(form, prime_limit):
    primes, lams = normalize_primes(form, prime_limit)
    for p, lam in zip(primes, lams):
        s = satake.satake_from_lambda(int(p), lam)
        yield f"p={int(p)}", s.theta, s.lam


def _grid_points(grid_size):
    # endpoints theta = 0 and pi included deliberately: the identities are
    # polynomial in cos(theta) and must survive the degenerate corners
    for theta in np.linspace(0.0, math.pi, grid_size):
        yield f"theta={theta:.6f}", float(theta), 2.0 * math.cos(theta)


def check_identity(identity, *, form=None, prime_limit=None, grid_size=None, tol=1e-9):
    """Max |LHS - RHS| of one identity over a point source.

    Use form+prime_limit for the Satake angles of a genuine form, or
    grid_size for a synthetic theta grid on [0, pi] including endpoints.
    """
    if identity not in IDENTITIES:
        raise DomainError(f"unknown identity {identity!r}")
    if tol < 0:
        raise DomainError("tolerance must be >= 0")
    if grid_size is not None:
        points = _grid_points(grid_size)
    elif form is not None and prime_limit is not None:
        points = _form_points(form, prime_limit)
    else:
        raise DomainError("need either form+prime_limit or grid_size")
    lhs_fn, rhs_fn = IDENTITIES[identity]
    worst = -1.0
    worst_point = ""
    tested = 0
    for label, theta, lam in points:
        v = _primitives(theta, lam)
        dev = abs(lhs_fn(v) - rhs_fn(v))
        tested += 1
        if dev > worst:
            worst = dev
            worst_point = label
    return IdentityReport(
        identity=identity,
        tested=tested,
        max_dev=max(worst, 0.0),
        worst_point=worst_point,
        tol=tol,
    )


def merge_reports(a, b):
    """Aggregate two reports of the same identity (e.g. form + grid)."""
    if a.identity != b.identity or a.tol != b.tol:
        raise DomainError("can only merge reports of the same identity and tol")
    worse = a if a.max_dev >= b.max_dev else b
    return IdentityReport(
        identity=a.identity,
        tested=a.tested + b.tested,
        max_dev=worse.max_dev,
        worst_point=worse.worst_point,
        tol=a.tol,
    )


def check_all(form, prime_limit, tol, grid_size=1000):
    """Every identity against the form's primes and a synthetic grid."""
    reports = []
    for identity in IDENTITIES:
        on_form = check_identity(
            identity, form=form, prime_limit=prime_limit, tol=tol
        )
        on_grid = check_identity(identity, grid_size=grid_size, tol=tol)
        reports.append(merge_reports(on_form, on_grid))
    return reports
