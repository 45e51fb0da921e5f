"""Pure numpy/Python implementations of the hot kernels.

This is the fallback lane selected by triple_hecke.kernels when the
compiled extension is unavailable (or when TRIPLE_HECKE_PURE_PYTHON=1).
The multiplicative assembly here works by sweeping prime-power slices,
which is deliberately a different algorithm from the compiled lane's
smallest-prime-factor walk; the test suite exploits that as a
cross-check.
"""

import numpy as np

BACKEND = "python"


def primes_up_to(n):
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def assemble_multiplicative(ppcoeff, limit):
    """Extend prime-power coefficients to a full multiplicative sequence.

    ppcoeff is a float64 array of length limit+1 whose slot q = p^k holds
    the coefficient at that prime power; other slots are ignored.  Returns
    a float64 array a of length limit+1 with a[0] = 0, a[1] = 1 and
    a[n] = prod over p^k exactly dividing n of ppcoeff[p^k].
    """
    a = np.ones(limit + 1, dtype=np.float64)
    a[0] = 0.0
    for p in primes_up_to(limit):
        p = int(p)
        q = p
        while q <= limit:
            idx = np.arange(q, limit + 1, q, dtype=np.int64)
            # keep only multiples j*q with j coprime to p, so each n is
            # touched once per prime, at its exact power
            coprime = (idx // q) % p != 0
            a[idx[coprime]] *= ppcoeff[q]
            if q > limit // p:
                break
            q *= p
    return a


def prefix_sums_at(values, cuts):
    """Neumaier-compensated prefix sums of values[1..] at the cut indices.

    values is indexed by n (values[0] ignored); cuts is an ascending int64
    array of indices into values.  Returns one compensated sum per cut.
    """
    out = np.empty(len(cuts), dtype=np.float64)
    total = 0.0
    comp = 0.0
    pos = 1
    for j, cut in enumerate(cuts):
        cut = int(cut)
        for n in range(pos, cut + 1):
            x = values[n]
            t = total + x
            if abs(total) >= abs(x):
                comp += (total - t) + x
            else:
                comp += (x - t) + total
            total = t
        pos = cut + 1
        out[j] = total + comp
    return out
