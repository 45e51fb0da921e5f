# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: multiplicative assembly via a smallest-prime-factor
walk, and compensated prefix sums.  API mirrors triple_hecke._kernels_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def assemble_multiplicative(double[::1] ppcoeff, long limit):
    """Extend prime-power coefficients to a full multiplicative sequence.

    Same contract as the pure lane: ppcoeff[q] holds the coefficient at
    prime power q; returns float64 a[0..limit] with a[0]=0, a[1]=1.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=1] spf_arr = np.zeros(limit + 1, dtype=np.int64)
    cdef long[::1] spf = spf_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a_arr = np.zeros(limit + 1, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pp_arr = np.zeros(limit + 1, dtype=np.int64)
    cdef long[::1] pp = pp_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] rest_arr = np.zeros(limit + 1, dtype=np.int64)
    cdef long[::1] rest = rest_arr
    cdef long n, p, m

    if limit >= 1:
        a[1] = 1.0
    # smallest prime factor sieve
    for n in range(2, limit + 1):
        if spf[n] == 0:
            p = n
            m = n
            while m <= limit:
                if spf[m] == 0:
                    spf[m] = p
                m += p
    # pp[n] = p^k exactly dividing n for p = spf[n]; rest[n] = n / pp[n]
    for n in range(2, limit + 1):
        p = spf[n]
        m = n / p
        if m > 1 and spf[m] == p:
            pp[n] = pp[m] * p
            rest[n] = rest[m]
        else:
            pp[n] = p
            rest[n] = m
    for n in range(2, limit + 1):
        a[n] = a[rest[n]] * ppcoeff[pp[n]]
    return a_arr


def prefix_sums_at(double[::1] values, long[::1] cuts):
    """Neumaier-compensated prefix sums of values[1..] at the cut indices."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(len(cuts), dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double total = 0.0, comp = 0.0, x, t
    cdef long pos = 1, n, cut
    cdef Py_ssize_t j
    for j in range(len(cuts)):
        cut = cuts[j]
        for n in range(pos, cut + 1):
            x = values[n]
            t = total + x
            if (total if total >= 0 else -total) >= (x if x >= 0 else -x):
                comp += (total - t) + x
            else:
                comp += (x - t) + total
            total = t
        pos = cut + 1
        out[j] = total + comp
    return out_arr
