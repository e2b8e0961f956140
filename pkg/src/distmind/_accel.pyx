# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled butterfly kernel for the Walsh-Hadamard transform.

The pure-Python package works without this module; see distmind._kernels
for the dispatch and the numpy fallback.
"""


def fwht(double[::1] a):
    """In-place unnormalized transform: a[j] <- sum_t (-1)^popcount(j & t) a[t].

    The length of ``a`` must be a power of two (enforced by the caller).
    Stage order and operand pairing match the numpy fallback exactly, so
    both produce bit-identical results.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double x, y
    while h < n:
        i = 0
        while i < n:
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
            i += 2 * h
        h *= 2
