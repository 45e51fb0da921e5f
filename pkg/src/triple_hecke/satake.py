"""Per-prime Satake data and truncated Euler local factors.

Every local factor handled here is an inverse product of linear terms
(1 - e^{i e theta} x)^{-1} indexed by an integer exponent multiset that is
symmetric under e -> -e.  That symmetry lets the denominator polynomial be
assembled from real quadratics (1 - 2 cos(e theta) x + x^2), so expansions
are exactly real; the complex route survives in the test suite as an
independent oracle.

Exponent multisets:

    sym^j            j, j-2, ..., -j
    sym^i (x) sym^j  all pairwise sums
    f (x) f (x) f    3, 1, 1, 1, -1, -1, -1, -3

The prime coefficient of sym^j is the Chebyshev value
sin((j+1) theta) / sin(theta), evaluated by the three-term recurrence to
stay finite at theta = 0 and pi.
"""

import math
from collections import Counter
from dataclasses import dataclass

from .errors import DomainError

#: Default truncation depth for local factors; global assembly to 10^6
#: needs at most floor(log2 10^6) = 19 coefficients at p = 2.
DEFAULT_DEPTH = 30

#: Tolerance for clamping |lambda| to the unitarity bound 2.
DELIGNE_CLAMP = 1e-12

#: Exponent multiset of the degree-8 triple product factor.
TRIPLE_EXPONENTS = (3, 1, 1, 1, -1, -1, -1, -3)


def sym_exponents(j):
    """Exponent multiset of the degree-(j+1) symmetric power factor."""
    return tuple(j - 2 * m for m in range(j + 1))


def rankin_selberg_exponents(i, j):
    """Pairwise-sum multiset: degree (i+1)(j+1)."""
    return tuple(a + b for a in sym_exponents(i) for b in sym_exponents(j))


@dataclass(frozen=True)
class SatakeData:
    """Unitary local parameters at p, packaged as the angle with
    2 cos(theta) = lambda(p)."""

    prime: int
    theta: float
    lam: float


@dataclass(frozen=True)
class LocalFactor:
    """Truncated power series in x = p^{-s} for one Euler factor.

    coefficients[k] multiplies x^k; coefficients[0] == 1.  degree is the
    dimension of the underlying local representation (the degree of the
    inverse-polynomial denominator).
    """

    prime: int
    coefficients: tuple
    depth: int
    degree: int

    def coefficient(self, k):
        return self.coefficients[k]


def satake_from_lambda(p, lam, clamp=DELIGNE_CLAMP):
    """Angle parametrization of a prime eigenvalue; |lam| <= 2 + clamp.

    Values beyond the clamp signal a non-eigenform or corrupted input and
    raise DomainError.
    """
    if abs(lam) > 2.0 + clamp:
        raise DomainError(
            f"|lambda({p})| = {abs(lam)} exceeds the unitarity bound 2"
        )
    half = min(1.0, max(-1.0, lam / 2.0))
    return SatakeData(prime=p, theta=math.acos(half), lam=lam)


def chebyshev_value(lam, j):
    """Second-kind Chebyshev value U_j(lam / 2) by the three-term recurrence."""
    if j == 0:
        return 1.0
    prev, cur = 1.0, lam
    for _ in range(j - 1):
        prev, cur = cur, lam * cur - prev
    return cur


def sym_power_prime_coeff(s, j):
    """Prime coefficient of sym^j at s.prime: sin((j+1)theta)/sin(theta)."""
    if j < 0:
        raise DomainError(f"symmetric power must be >= 0, got {j}")
    return chebyshev_value(s.lam, j)


def denominator_polynomial(theta, exponents):
    """Real coefficients of prod_e (1 - e^{i e theta} x) for a symmetric
    exponent multiset."""
    counts = Counter(exponents)
    poly = [1.0]
    for _ in range(counts.get(0, 0)):
        poly = _polymul(poly, (1.0, -1.0))
    for e in sorted(k for k in counts if k > 0):
        if counts[e] != counts[-e]:
            raise ValueError(f"exponent multiset not symmetric at {e}: {exponents}")
        quad = (1.0, -2.0 * math.cos(e * theta), 1.0)
        for _ in range(counts[e]):
            poly = _polymul(poly, quad)
    return poly


def _polymul(a, b):
    out = [0.0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def invert_series(poly, depth):
    """First depth+1 coefficients of 1 / poly(x); poly[0] must be 1."""
    out = [0.0] * (depth + 1)
    out[0] = 1.0
    top = len(poly) - 1
    for k in range(1, depth + 1):
        acc = 0.0
        for i in range(1, min(k, top) + 1):
            acc += poly[i] * out[k - i]
        out[k] = -acc
    return out


def expand_inverse_product(theta, exponents, depth):
    """Truncated expansion of prod_e (1 - e^{i e theta} x)^{-1}."""
    return invert_series(denominator_polynomial(theta, exponents), depth)


def local_factor_sym(s, j, depth=DEFAULT_DEPTH):
    """Local factor of the j-th symmetric power at s.prime."""
    if j < 0 or depth < 1:
        raise DomainError(f"need j >= 0 and depth >= 1, got j={j}, depth={depth}")
    coeffs = expand_inverse_product(s.theta, sym_exponents(j), depth)
    return LocalFactor(s.prime, tuple(coeffs), depth, j + 1)


def local_factor_rankin_selberg(s, i, j, depth=DEFAULT_DEPTH):
    """Local factor of sym^i (x) sym^j at s.prime; degree (i+1)(j+1)."""
    if i < 0 or j < 0 or depth < 1:
        raise DomainError(f"need i, j >= 0 and depth >= 1, got {i}, {j}, {depth}")
    coeffs = expand_inverse_product(s.theta, rankin_selberg_exponents(i, j), depth)
    return LocalFactor(s.prime, tuple(coeffs), depth, (i + 1) * (j + 1))


def local_factor_triple(s, depth=DEFAULT_DEPTH):
    """Degree-8 triple product local factor at s.prime."""
    if depth < 1:
        raise DomainError(f"need depth >= 1, got {depth}")
    coeffs = expand_inverse_product(s.theta, TRIPLE_EXPONENTS, depth)
    return LocalFactor(s.prime, tuple(coeffs), depth, 8)


def local_factor_zeta(p, depth=DEFAULT_DEPTH):
    """Local factor 1/(1-x) of the Riemann zeta function."""
    return LocalFactor(p, tuple([1.0] * (depth + 1)), depth, 1)
