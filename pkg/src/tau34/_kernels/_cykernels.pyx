# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: sheet-resolved roots of lam(u) = u^3 - 3*a2*u + c0.

Same algorithm as the numpy fallback (_pykernels), one pass per point with
no array temporaries.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h":
    double cabs(double complex) nogil
    double complex csqrt(double complex) nogil
    double complex cpow(double complex, double complex) nogil

BACKEND = "cython"

cdef double complex OMEGA = cpow(-1.0 + 0j, 2.0 / 3.0 + 0j)


cdef inline void _roots_one(double a2, double complex c0, double complex lam,
                            double complex* r) nogil:
    cdef double complex p = -3.0 * a2
    cdef double complex q = c0 - lam
    cdef double complex disc = csqrt(q * q / 4.0 + p * p * p / 27.0)
    cdef double complex c3a = -q / 2.0 + disc
    cdef double complex c3b = -q / 2.0 - disc
    cdef double complex c3 = c3a if cabs(c3a) >= cabs(c3b) else c3b
    cdef double complex cval = cpow(c3, 1.0 / 3.0 + 0j)
    cdef double complex ck, u, f, fp
    cdef int k, it
    for k in range(3):
        ck = cval
        if k == 1:
            ck = cval * OMEGA
        elif k == 2:
            ck = cval * OMEGA * OMEGA
        if cabs(ck) < 1e-300:
            u = cpow(-q, 1.0 / 3.0 + 0j)
            if k == 1:
                u = u * OMEGA
            elif k == 2:
                u = u * OMEGA * OMEGA
        else:
            u = ck - p / (3.0 * ck)
        for it in range(2):
            f = u * (u * u + p) + q
            fp = 3.0 * u * u + p
            if cabs(fp) > 1e-300:
                u = u - f / fp
        r[k] = u


def sheet_roots(double a2, double complex c0, lam):
    """Sheet-assigned roots, shape (3,) + lam.shape (sheets 1, 2, 3)."""
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=np.complex128))
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] flat = lam_arr.ravel()
    cdef Py_ssize_t n = flat.shape[0]
    out_arr = np.empty((3, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = out_arr
    cdef double complex r[3]
    cdef double reg[3]
    cdef double x, y
    cdef Py_ssize_t i
    cdef int k, i2, ia, ib
    for i in range(n):
        _roots_one(a2, c0, flat[i], r)
        for k in range(3):
            x = r[k].real
            y = r[k].imag
            reg[k] = 3.0 * x * x - y * y - 3.0 * a2
        i2 = 0
        if reg[1] < reg[i2]:
            i2 = 1
        if reg[2] < reg[i2]:
            i2 = 2
        ia = (i2 + 1) % 3
        ib = (i2 + 2) % 3
        out[1, i] = r[i2]
        if r[ia].real >= r[ib].real:
            out[0, i] = r[ia]
            out[2, i] = r[ib]
        else:
            out[0, i] = r[ib]
            out[2, i] = r[ia]
    return out_arr.reshape((3,) + lam_arr.shape)
