"""Exact Fourier coefficients of level-1 cusp forms and their normalization.

The built-in form is the discriminant form of weight 12.  Its coefficients
tau(n) are generated exactly: the cube of the Dedekind eta quotient has the
sparse expansion sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}, and three squarings
of that series reach the 24th power.  Each squaring packs the integer
polynomial into one big integer (fixed-width windows, positive/negative
parts split), squares it, and unpacks with a balanced-digit carry, so the
whole computation stays exact; gmpy2 is used for the big multiply when
available.

External forms of any even weight are read from coefficient files:

    weight=<even integer>
    1,<c(1)>
    2,<c(2)>
    ...

with n strictly increasing from 1, no gaps, decimal integers.
"""

import math
import os
from dataclasses import dataclass, field

from .errors import CoefficientParseError, DomainError, ResourceLimitError
from .kernels import primes_up_to

try:
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:
    _HAVE_GMPY2 = False

#: Largest supported coefficient index; the quadratic-ish memory of the
#: series squaring makes bigger runs a deliberate opt-out.
MAX_SUPPORTED_LIMIT = 10**6


@dataclass(frozen=True)
class FormSpec:
    """What to compute coefficients for: the built-in form or a file."""

    weight: int = 12
    source: str = "builtin-delta"
    limit: int = 1000

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2 != 0:
            raise DomainError(f"weight must be even and >= 2, got {self.weight}")
        if self.limit < 1:
            raise DomainError(f"limit must be >= 1, got {self.limit}")


@dataclass(frozen=True)
class FourierCoefficients:
    """Exact integer coefficients c(1..limit) of a weight-k eigenform.

    values[n] is c(n); values[0] is an unused 0 so indexing is 1-based.
    Treat instances as immutable.
    """

    weight: int
    values: list = field(repr=False)

    @property
    def limit(self):
        return len(self.values) - 1

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"coefficient index {n} outside 1..{self.limit}")
        return self.values[n]


@dataclass(frozen=True)
class NormalizedEigenvalues:
    """Unit-normalized eigenvalues lambda(n) = c(n) / n^((k-1)/2) as doubles.

    values[n] is lambda(n); values[0] unused.  Each entry is within one ulp
    of the exact quotient.
    """

    weight: int
    values: list = field(repr=False)

    @property
    def limit(self):
        return len(self.values) - 1

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"eigenvalue index {n} outside 1..{self.limit}")
        return self.values[n]


def _eta_cube(limit):
    """First `limit` coefficients of prod (1-q^n)^3, sparse fill."""
    out = [0] * limit
    m = 0
    while m * (m + 1) // 2 < limit:
        out[m * (m + 1) // 2] = (2 * m + 1) if m % 2 == 0 else -(2 * m + 1)
        m += 1
    return out


def _square_truncated(coeffs, limit):
    """Exact square of an integer polynomial, truncated to `limit` terms.

    Kronecker substitution: evaluate at x = 2^b for a window width b large
    enough that every product coefficient fits a signed b-bit window, square
    one integer, then recover windows with a balanced-digit carry.
    """
    lead = min(len(coeffs), limit)
    maxc = max((abs(c) for c in coeffs[:lead]), default=0) or 1
    width = ((lead * maxc * maxc).bit_length() + 2 + 7) // 8
    bits = 8 * width
    half = 1 << (bits - 1)
    full = 1 << bits
    pos = bytearray(lead * width)
    neg = bytearray(lead * width)
    for i in range(lead):
        c = coeffs[i]
        if c > 0:
            pos[i * width : i * width + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
        elif c:
            c = -c
            neg[i * width : i * width + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    packed = int.from_bytes(pos, "little") - int.from_bytes(neg, "little")
    if _HAVE_GMPY2:
        v = gmpy2.mpz(packed)
        square = int(v * v)
    else:
        square = packed * packed
    raw = square.to_bytes(2 * lead * width + width, "little")
    view = memoryview(raw)
    out = [0] * limit
    carry = 0
    for i in range(limit):
        d = int.from_bytes(view[i * width : (i + 1) * width], "little") + carry
        if d >= half:
            out[i] = d - full
            carry = 1
        else:
            out[i] = d
            carry = 0
    return out


def generate_delta_coefficients(limit, max_limit=MAX_SUPPORTED_LIMIT):
    """Exact tau(1..limit) for the weight-12 discriminant form."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise ResourceLimitError(
            f"limit {limit} exceeds the supported ceiling {max_limit}"
        )
    series = _eta_cube(limit)
    for _ in range(3):
        series = _square_truncated(series, limit)
    # tau(n) is the coefficient of q^(n-1) in the 24th power
    return FourierCoefficients(weight=12, values=[0] + series[:limit])


def save_form(coeffs, path):
    """Write coefficients in the line-oriented coefficient-file format."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"weight={coeffs.weight}\n")
        for n in range(1, coeffs.limit + 1):
            fh.write(f"{n},{coeffs.values[n]}\n")


def load_form(path, limit=None):
    """Parse a coefficient file; optionally keep only the first `limit` rows.

    Raises CoefficientParseError for structural problems and DomainError for
    violated invariants (odd weight, c(1) != 1).
    """
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("weight="):
            raise CoefficientParseError(f"{path}: first line must be weight=<k>")
        try:
            weight = int(header[len("weight=") :])
        except ValueError:
            raise CoefficientParseError(f"{path}: unparseable weight {header!r}")
        if weight < 2 or weight % 2 != 0:
            raise DomainError(f"{path}: weight must be even and >= 2, got {weight}")
        values = [0]
        expected = 1
        for line in fh:
            line = line.strip()
            if not line:
                continue
            n_str, _, c_str = line.partition(",")
            try:
                n = int(n_str)
                c = int(c_str)
            except ValueError:
                raise CoefficientParseError(f"{path}: malformed line {line!r}")
            if n != expected:
                raise CoefficientParseError(
                    f"{path}: expected index {expected}, got {n} (no gaps allowed)"
                )
            values.append(c)
            expected += 1
            if limit is not None and expected > limit:
                break
        if len(values) == 1:
            raise CoefficientParseError(f"{path}: no coefficient lines")
        if values[1] != 1:
            raise DomainError(f"{path}: c(1) must be 1, got {values[1]}")
    return FourierCoefficients(weight=weight, values=values)


def normalized_value(c, n, weight):
    """c / n^((weight-1)/2) rounded to within one ulp of the exact quotient.

    Computed as sign(c) * sqrt(c^2 / n^(weight-1)) with the inner quotient
    taken over exact integers at 130 guard bits, so only the final float
    conversion and the correctly rounded sqrt contribute rounding.
    """
    if c == 0:
        return 0.0
    if n == 1:
        return float(c)
    t = (c * c << 130) // n ** (weight - 1)
    return math.copysign(math.sqrt(float(t)) * 2.0**-65, c)


def normalize(coeffs):
    """Normalize a full coefficient range to double-precision eigenvalues."""
    k = coeffs.weight
    values = [0.0] * (coeffs.limit + 1)
    for n in range(1, coeffs.limit + 1):
        values[n] = normalized_value(coeffs.values[n], n, k)
    return NormalizedEigenvalues(weight=k, values=values)


def normalize_primes(coeffs, prime_limit=None):
    """lambda(p) for primes p up to prime_limit (default: the full range).

    Returns (primes array, list of doubles), skipping the cost of
    normalizing composite indices; used by the bulk series builders.
    """
    bound = coeffs.limit if prime_limit is None else min(prime_limit, coeffs.limit)
    primes = primes_up_to(bound)
    k = coeffs.weight
    lams = [normalized_value(coeffs.values[int(p)], int(p), k) for p in primes]
    return primes, lams


@dataclass(frozen=True)
class HeckeReport:
    """Outcome of the exact multiplicativity and recurrence sweep."""

    limit: int
    pairs_checked: int
    powers_checked: int
    multiplicativity_violations: list
    recurrence_violations: list

    @property
    def passed(self):
        return not self.multiplicativity_violations and not self.recurrence_violations


def verify_hecke_structure(coeffs):
    """Exact-integer check of the Hecke relations on c(1..N).

    Lists every coprime pair (m, n), 2 <= m < n, mn <= N with
    c(mn) != c(m) c(n), and every prime power p^(j+1) <= N with
    c(p^(j+1)) != c(p) c(p^j) - p^(k-1) c(p^(j-1)).  Violations are data,
    not errors.
    """
    c = coeffs.values
    n_max = coeffs.limit
    mult_bad = []
    pairs = 0
    for m in range(2, math.isqrt(n_max) + 1):
        cm = c[m]
        for n in range(m + 1, n_max // m + 1):
            if math.gcd(m, n) == 1:
                pairs += 1
                if c[m * n] != cm * c[n]:
                    mult_bad.append((m, n))
    rec_bad = []
    powers = 0
    for p in primes_up_to(math.isqrt(n_max)):
        p = int(p)
        pk = p ** (coeffs.weight - 1)
        j = 1
        while p ** (j + 1) <= n_max:
            powers += 1
            if c[p ** (j + 1)] != c[p] * c[p**j] - pk * c[p ** (j - 1)]:
                rec_bad.append((p, j))
            j += 1
    return HeckeReport(
        limit=n_max,
        pairs_checked=pairs,
        powers_checked=powers,
        multiplicativity_violations=mult_bad,
        recurrence_violations=rec_bad,
    )


def deligne_max(coeffs, prime_limit=None):
    """max |lambda(p)| over primes p in range; <= 2 for a genuine eigenform."""
    primes, lams = normalize_primes(coeffs, prime_limit)
    worst = 0.0
    worst_p = 0
    for p, lam in zip(primes, lams):
        if abs(lam) > worst:
            worst = abs(lam)
            worst_p = int(p)
    return worst, worst_p
