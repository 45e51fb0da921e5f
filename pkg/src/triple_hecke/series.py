"""Global coefficient sequences, squared series, and correction factors.

A multiplicative sequence is assembled from its prime-power coefficients by
the sieve kernels; the prime-power data comes from the local factors in
triple_hecke.satake.  Series labels:

    triple        coefficients of the degree-8 triple product
    sym2xf        coefficients of sym^2 (x) f  (the degree-6 convolution)
    sym:j         coefficients of sym^j
    rs:i:j        coefficients of sym^i (x) sym^j
    <base>-squared  pointwise square of any of the above

The squared triple-product series factors locally as
zeta^5 * sym2^8 * sym4^4 * (sym2 (x) sym4) * U_p, and the squared sym2xf
series as zeta^2 * sym2^3 * sym4^2 * (sym2 (x) sym4) * V_p.  The correction
factors U_p, V_p are computed as truncated series quotients; their constant
term is 1 and their x-coefficient vanishes, which is what makes the global
correction Dirichlet series converge absolutely down to real part 1/2.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import satake
from .eigenvalues import normalize_primes
from .errors import DepthError, DomainError
from .kernels import assemble_multiplicative, primes_up_to


@dataclass(frozen=True)
class CoefficientSeries:
    """Real coefficients a(1..limit) of a Dirichlet series.

    values[n] is a(n); values[0] is 0.  Multiplicative unless the label
    carries the -squared suffix (squares of multiplicative sequences are
    still multiplicative, so the distinction is cosmetic).
    """

    label: str
    values: np.ndarray

    @property
    def limit(self):
        return len(self.values) - 1

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"series index {n} outside 1..{self.limit}")
        return float(self.values[n])


@dataclass(frozen=True)
class CorrectionFactor:
    """Truncated local series of a correction factor (label U or V) at p."""

    prime: int
    label: str
    coefficients: tuple

    def coefficient(self, k):
        return self.coefficients[k]


@dataclass(frozen=True)
class EulerProductResult:
    """Truncated Euler product value with a tail stability diagnostic."""

    value: float
    prime_limit: int
    factors: int
    #: |product(P) / product(P/10) - 1|, None when P/10 < 2.
    last_decade_change: float


@dataclass(frozen=True)
class CorrectionSpec:
    """Shape of one local factorization: numerator exponent multiset and
    the multiplicities of zeta, sym^2, sym^4, sym^2 (x) sym^4."""

    base_label: str
    base_exponents: tuple
    multiplicities: tuple  # (zeta, sym2, sym4, sym2 x sym4)

    @property
    def pairing_degree(self):
        return len(self.base_exponents) ** 2

    @property
    def factor_degrees(self):
        return (1, 3, 5, 15)

    @property
    def degree_sum(self):
        return sum(m * d for m, d in zip(self.multiplicities, self.factor_degrees))


CORRECTIONS = {
    "U": CorrectionSpec("triple", satake.TRIPLE_EXPONENTS, (5, 8, 4, 1)),
    "V": CorrectionSpec("sym2xf", satake.rankin_selberg_exponents(2, 1), (2, 3, 2, 1)),
}


# ---------------------------------------------------------------------------
# truncated power series helpers (real coefficients, plain lists)

def series_mul(a, b, depth):
    out = [0.0] * (depth + 1)
    for i in range(min(len(a), depth + 1)):
        ai = a[i]
        if ai:
            for j in range(min(len(b), depth + 1 - i)):
                out[i + j] += ai * b[j]
    return out


def series_pow(a, n, depth):
    out = [0.0] * (depth + 1)
    out[0] = 1.0
    for _ in range(n):
        out = series_mul(out, a, depth)
    return out


def series_div(num, den, depth):
    """Quotient of truncated series; den[0] must be nonzero (it is 1 here)."""
    out = [0.0] * (depth + 1)
    for k in range(depth + 1):
        acc = num[k] if k < len(num) else 0.0
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out[k] = acc / den[0]
    return out


# ---------------------------------------------------------------------------
# series labels

def parse_series_label(label):
    """Split a label into (kind tuple, squared flag).

    Kind tuples: ("triple",), ("sym2xf",), ("sym", j), ("rs", i, j).
    """
    base = label
    squared = False
    for suffix in ("-squared", "-sq"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
            squared = True
            break
    if base == "triple":
        kind = ("triple",)
    elif base == "sym2xf":
        kind = ("sym2xf",)
    elif base.startswith("sym:"):
        kind = ("sym", int(base.split(":")[1]))
    elif base.startswith("rs:"):
        _, i, j = base.split(":")
        kind = ("rs", int(i), int(j))
    else:
        raise DomainError(f"unknown series label {label!r}")
    return kind, squared


def _local_factor_for_kind(kind, s, depth):
    if kind[0] == "triple":
        return satake.local_factor_triple(s, depth)
    if kind[0] == "sym2xf":
        return satake.local_factor_rankin_selberg(s, 2, 1, depth)
    if kind[0] == "sym":
        return satake.local_factor_sym(s, kind[1], depth)
    return satake.local_factor_rankin_selberg(s, kind[1], kind[2], depth)


def _chebyshev_bulk(lams, j):
    """U_j(lam/2) over a float64 array."""
    if j == 0:
        return np.ones_like(lams)
    prev = np.ones_like(lams)
    cur = lams.copy()
    for _ in range(j - 1):
        prev, cur = cur, lams * cur - prev
    return cur


def _prime_coefficients_bulk(kind, lams):
    if kind[0] == "triple":
        return lams**3
    if kind[0] == "sym2xf":
        return _chebyshev_bulk(lams, 3) + lams
    if kind[0] == "sym":
        return _chebyshev_bulk(lams, kind[1])
    return _chebyshev_bulk(lams, kind[1]) * _chebyshev_bulk(lams, kind[2])


def max_needed_depth(p, limit):
    """Largest k with p^k <= limit."""
    k = 0
    q = 1
    while q <= limit // p:
        q *= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# assembly

def _assemble(ppcoeff, limit, label):
    values = assemble_multiplicative(ppcoeff, limit)
    return CoefficientSeries(label=label, values=values)


def assemble_global(local_provider, limit, label="custom"):
    """Multiplicative extension of per-prime local factors up to `limit`.

    local_provider maps a prime p to a LocalFactor whose depth covers every
    p^k <= limit; a shallower factor raises DepthError.
    """
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    ppcoeff = np.zeros(limit + 1, dtype=np.float64)
    for p in primes_up_to(limit):
        p = int(p)
        need = max_needed_depth(p, limit)
        factor = local_provider(p)
        if factor.depth < need:
            raise DepthError(
                f"local factor at p={p} has depth {factor.depth}, need {need}"
            )
        q = p
        for k in range(1, need + 1):
            ppcoeff[q] = factor.coefficients[k]
            q *= p
    return _assemble(ppcoeff, limit, label)


def build_series(coeffs, label, limit=None):
    """Assemble a labelled series for a form, sized for bulk runs.

    Primes above sqrt(limit) only ever contribute their first coefficient,
    which is computed vectorized from the Chebyshev recurrence; small primes
    get full local factor expansions.
    """
    kind, squared = parse_series_label(label)
    if limit is None:
        limit = coeffs.limit
    if limit < 1 or limit > coeffs.limit:
        raise DomainError(
            f"series limit {limit} outside 1..{coeffs.limit} of the form"
        )
    primes, lam_list = normalize_primes(coeffs, limit)
    lams = np.asarray(lam_list, dtype=np.float64)
    ppcoeff = np.zeros(limit + 1, dtype=np.float64)
    if len(primes):
        ppcoeff[primes] = _prime_coefficients_bulk(kind, lams)
    for p, lam in zip(primes, lam_list):
        p = int(p)
        if p * p > limit:
            break
        depth = max_needed_depth(p, limit)
        factor = _local_factor_for_kind(kind, satake.satake_from_lambda(p, lam), depth)
        q = p
        for k in range(1, depth + 1):
            ppcoeff[q] = factor.coefficients[k]
            q *= p
    base = _assemble(ppcoeff, limit, label if not squared else label_base(label))
    return square_series(base) if squared else base


def label_base(label):
    for suffix in ("-squared", "-sq"):
        if label.endswith(suffix):
            return label[: -len(suffix)]
    return label


def square_series(series):
    """Pointwise square; the label gains a -squared suffix."""
    return CoefficientSeries(
        label=series.label + "-squared", values=series.values**2
    )


# ---------------------------------------------------------------------------
# local factorization of the squared series

def squared_local_factor(s, base="triple", depth=satake.DEFAULT_DEPTH):
    """Local factor of the squared series: coefficients a(p^k)^2.

    Tagged with the degree of the self-pairing representation (64 for the
    triple product, 36 for sym2xf), which is also the degree of the
    four-factor product it factors through.
    """
    if base not in ("triple", "sym2xf"):
        raise DomainError(f"squared local factor for {base!r} not defined")
    spec = CORRECTIONS["U" if base == "triple" else "V"]
    expansion = satake.expand_inverse_product(s.theta, spec.base_exponents, depth)
    return satake.LocalFactor(
        prime=s.prime,
        coefficients=tuple(c * c for c in expansion),
        depth=depth,
        degree=spec.pairing_degree,
    )


def factorization_denominator(s, which, depth=satake.DEFAULT_DEPTH):
    """Truncated product zeta^a * sym2^b * sym4^c * (sym2 x sym4)^d at p."""
    spec = CORRECTIONS[which]
    a, b, c, d = spec.multiplicities
    theta = s.theta
    out = series_pow([1.0] * (depth + 1), a, depth)
    sym2 = satake.expand_inverse_product(theta, satake.sym_exponents(2), depth)
    sym4 = satake.expand_inverse_product(theta, satake.sym_exponents(4), depth)
    rs24 = satake.expand_inverse_product(
        theta, satake.rankin_selberg_exponents(2, 4), depth
    )
    out = series_mul(out, series_pow(sym2, b, depth), depth)
    out = series_mul(out, series_pow(sym4, c, depth), depth)
    out = series_mul(out, series_pow(rs24, d, depth), depth)
    return out


def correction_factor_local(s, which, depth=satake.DEFAULT_DEPTH):
    """Local series of the correction factor U (or V) at s.prime.

    Quotient of the squared-series local factor by the four-factor product;
    the constant term is exactly 1 and the x-coefficient cancels to
    rounding noise.
    """
    if which not in CORRECTIONS:
        raise DomainError(f"correction factor must be 'U' or 'V', got {which!r}")
    if depth < 2:
        raise DomainError(f"correction factor needs depth >= 2, got {depth}")
    num = squared_local_factor(
        s, CORRECTIONS[which].base_label, depth
    ).coefficients
    den = factorization_denominator(s, which, depth)
    quotient = series_div(num, den, depth)
    quotient[0] = 1.0
    return CorrectionFactor(prime=s.prime, label=which, coefficients=tuple(quotient))


# ---------------------------------------------------------------------------
# truncated Euler products

def euler_depth(p):
    """Expansion depth that makes the truncation error at x = 1/p negligible
    next to the 1e-3 stability diagnostics."""
    if p < 10:
        return 40
    if p <= 100:
        return 12
    if p <= 10_000:
        return 6
    return 3


def evaluate_truncated_euler(factor_provider, s, prime_limit):
    """prod over p <= prime_limit of the local series evaluated at p^{-s}.

    factor_provider maps a prime to anything with a `coefficients`
    attribute (LocalFactor, CorrectionFactor) or a plain sequence.  Returns
    the running product with the last-decade multiplicative change as a
    tail diagnostic; the diagnostic is reported, never asserted.
    """
    if s <= 0.5:
        raise DomainError(f"evaluation point s={s} outside the proven region s > 1/2")
    if prime_limit < 2:
        raise DomainError(f"prime limit must be >= 2, got {prime_limit}")
    decade_mark = prime_limit / 10.0
    at_decade = None
    product = 1.0
    count = 0
    for p in primes_up_to(prime_limit):
        p = int(p)
        if at_decade is None and p > decade_mark:
            at_decade = product
        factor = factor_provider(p)
        coeffs = getattr(factor, "coefficients", factor)
        x = p ** (-s)
        value = 0.0
        for c in reversed(coeffs):
            value = value * x + c
        product *= value
        count += 1
    change = None
    if at_decade not in (None, 0.0):
        change = abs(product / at_decade - 1.0)
    return EulerProductResult(
        value=product,
        prime_limit=prime_limit,
        factors=count,
        last_decade_change=change,
    )


def correction_provider(coeffs, which, prime_limit):
    """Provider of adaptively truncated U_p or V_p factors for a form."""
    primes, lams = normalize_primes(coeffs, prime_limit)
    lam_at = {int(p): lam for p, lam in zip(primes, lams)}

    def provider(p):
        sat = satake.satake_from_lambda(p, lam_at[p])
        return correction_factor_local(sat, which, euler_depth(p))

    return provider


def zeta_provider(p):
    """Adaptively truncated zeta local factors."""
    return satake.local_factor_zeta(p, euler_depth(p))
