# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot quadrature kernel.

Semantics must match kernels/_ref.py exactly; the test suite asserts
agreement to a few ulp on random inputs.
"""

import numpy as np

from libc.math cimport cos, sin, exp, tanh, fabs


cdef inline double _coth_half(double t) nogil:
    # coth(t), t > 0; series below 1e-4 where 1/tanh loses accuracy
    if t < 1e-4:
        return 1.0 / t + t / 3.0
    return 1.0 / tanh(t)


cdef inline double _horner(const double* c, Py_ssize_t n, double x) nogil:
    cdef double v = 0.0
    cdef Py_ssize_t j
    for j in range(n - 1, -1, -1):
        v = v * x + c[j]
    return v


def fc_integrand(double[::1] w, double z, double beta, double eta,
                 double w1sq, double w2sq,
                 double[::1] poly_cos, double[::1] poly_sin,
                 double[::1] series, double x_switch):
    """See kernels/_ref.py: same signature and meaning (beta = 0.0 is the
    zero-temperature marker)."""
    cdef Py_ssize_t n = w.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t nc = poly_cos.shape[0]
    cdef Py_ssize_t ns = poly_sin.shape[0]
    cdef Py_ssize_t nser = series.shape[0]
    cdef const double* pc = &poly_cos[0]
    cdef const double* ps = &poly_sin[0]
    cdef const double* pser = &series[0]
    cdef Py_ssize_t i
    cdef double wi, x, bracket, val

    with nogil:
        for i in range(n):
            wi = w[i]
            x = wi * z
            if fabs(x) < x_switch:
                bracket = _horner(pser, nser, x)
            else:
                bracket = (_horner(pc, nc, x) * cos(2.0 * x)
                           + _horner(ps, ns, x) * sin(2.0 * x))
            val = bracket * exp(-eta * wi) / ((w1sq - wi * wi) * (w2sq - wi * wi))
            if beta != 0.0:
                val *= _coth_half(0.5 * beta * wi)
            out[i] = val
    return out_arr
