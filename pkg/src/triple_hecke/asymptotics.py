"""Partial sums of coefficient series and main-term polynomial fits.

For a squared coefficient series the partial sum S(x) grows like
x P(log x); the degree of P is what the fit is meant to exhibit (4 for the
squared triple product, 1 for the squared sym2xf convolution).  The
polynomial coefficients themselves arise from an unevaluated residue and
have no reference values, so they are free fit parameters: the testable
claims are the degree (a degree-d fit beats degree d-1 in rms) and the
sublinear growth of the residual.

The residual exponent estimate is an empirical slope on a desk-scale
sample; exponents a few 1e-4 apart are indistinguishable here, and the
estimate carries a caveat saying so.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RankError
from .kernels import prefix_sums_at

#: Relative residual level (against the partial-sum scale) below which the
#: exponent estimate is meaningless and the below-noise sentinel is returned.
NOISE_FLOOR = 1e-12

EXPONENT_CAVEAT = (
    "desk-scale estimate: slopes from x <= 1e6 cannot separate nearby "
    "exponents and do not certify any particular error term"
)


@dataclass(frozen=True)
class GeometricGrid:
    """count sample points log-uniformly spaced on [start, stop]."""

    start: int
    stop: int
    count: int

    def points(self):
        if self.count < 1 or self.start < 1 or self.stop < self.start:
            raise DomainError(f"degenerate grid {self}")
        raw = np.exp(np.linspace(math.log(self.start), math.log(self.stop), self.count))
        return np.unique(np.rint(raw).astype(np.int64))


def default_grid(limit):
    """Geometric grid from 1e3 (or below for tiny runs) to `limit`, 40 points."""
    return GeometricGrid(start=min(1000, limit), stop=limit, count=40)


@dataclass(frozen=True)
class PartialSumTable:
    label: str
    xs: np.ndarray
    sums: np.ndarray

    def __len__(self):
        return len(self.xs)


def partial_sums(series, grid):
    """Compensated partial sums S(x) = sum_{n <= x} a(n) at the grid points.

    Extending the grid never changes earlier sums: the accumulation is a
    single deterministic left-to-right sweep.
    """
    xs = grid.points() if hasattr(grid, "points") else np.asarray(grid, dtype=np.int64)
    if len(xs) == 0:
        return PartialSumTable(series.label, xs, np.empty(0, dtype=np.float64))
    if np.any(np.diff(xs) <= 0):
        raise DomainError("grid points must be strictly increasing")
    if xs[0] < 1 or xs[-1] > series.limit:
        raise DomainError(
            f"grid range {xs[0]}..{xs[-1]} outside series range 1..{series.limit}"
        )
    sums = prefix_sums_at(series.values, xs)
    return PartialSumTable(series.label, xs, sums)


@dataclass(frozen=True)
class FittedPolynomial:
    """Least-squares polynomial for S(x)/x against t = log x.

    coefficients is ascending: P(t) = sum_k coefficients[k] t^k.  residuals
    are y_i - P(t_i) on the S(x)/x scale; rms is the weighted root mean
    square of those residuals.
    """

    degree: int
    coefficients: tuple
    residuals: np.ndarray
    rms: float
    weighting: str

    def main_term(self, xs):
        """x P(log x) evaluated at the given points."""
        xs = np.asarray(xs, dtype=np.float64)
        return xs * np.polynomial.polynomial.polyval(np.log(xs), self.coefficients)


def fit_main_term(table, degree, weighting="uniform"):
    """Fit S(x)/x by a degree-`degree` polynomial in log x.

    The solve runs in numpy's scaled polynomial domain (mapped to [-1, 1])
    and converts back, so the raw Vandermonde conditioning never enters.
    Weighting 'uniform' minimizes sum r_i^2, 'sqrt-x' minimizes
    sum sqrt(x_i) r_i^2.
    """
    if degree < 0:
        raise DomainError(f"fit degree must be >= 0, got {degree}")
    if len(table) < degree + 2:
        raise RankError(
            f"need at least {degree + 2} sample points for degree {degree}, "
            f"got {len(table)}"
        )
    if table.xs[0] < 3:
        raise DomainError("sample points must be >= 3 so that log x > 1")
    if weighting not in ("uniform", "sqrt-x"):
        raise DomainError(f"unknown weighting {weighting!r}")
    t = np.log(table.xs.astype(np.float64))
    y = table.sums / table.xs
    if weighting == "sqrt-x":
        omega = np.sqrt(table.xs.astype(np.float64))
    else:
        omega = np.ones_like(t)
    # numpy's w multiplies the residual before squaring
    poly = np.polynomial.Polynomial.fit(t, y, degree, w=np.sqrt(omega))
    residuals = y - poly(t)
    rms = math.sqrt(float(np.sum(omega * residuals**2) / np.sum(omega)))
    coeffs = tuple(float(c) for c in poly.convert().coef)
    # convert() drops trailing zeros; pad to the requested degree
    coeffs = coeffs + (0.0,) * (degree + 1 - len(coeffs))
    return FittedPolynomial(
        degree=degree,
        coefficients=coeffs,
        residuals=residuals,
        rms=rms,
        weighting=weighting,
    )


@dataclass(frozen=True)
class ResidualExponent:
    """Slope of log |S(x) - x P(log x)| against log x on the top half grid.

    value is None when the residuals sit at rounding noise (below_noise),
    as happens for exactly representable synthetic models.
    """

    value: float | None
    below_noise: bool
    caveat: str = EXPONENT_CAVEAT

    def to_dict(self):
        return {
            "value": self.value if self.value is not None else "below-noise",
            "caveat": self.caveat,
        }


def residual_exponent_estimate(table, fitted):
    """Empirical growth exponent of the fit residual on the S(x) scale."""
    if len(table) != len(fitted.residuals):
        raise DomainError("fit does not belong to this table")
    resid = table.sums - fitted.main_term(table.xs)
    scale = np.maximum(1.0, np.abs(table.sums))
    if np.max(np.abs(resid) / scale) < NOISE_FLOOR:
        return ResidualExponent(value=None, below_noise=True)
    half = len(table) // 2
    xs = table.xs[half:].astype(np.float64)
    rs = np.abs(resid[half:])
    usable = rs > 0
    if np.count_nonzero(usable) < 3:
        return ResidualExponent(value=None, below_noise=True)
    slope = np.polyfit(np.log(xs[usable]), np.log(rs[usable]), 1)[0]
    return ResidualExponent(value=float(slope), below_noise=False)
