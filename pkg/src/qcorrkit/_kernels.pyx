# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled two-qubit hot kernels; see _kernels_py for the reference versions."""

from libc.math cimport cos, sin, sqrt, log, fabs

cimport numpy as cnp
import numpy as np

cdef double _LOG2 = log(2.0)


cdef inline double _plogp(double x) nogil:
    if x > 1e-18:
        return x * log(x) / _LOG2
    return 0.0


cdef void _basis(double theta, double phi, double complex* v0, double complex* v1) nogil:
    cdef double c = cos(0.5 * theta)
    cdef double s = sin(0.5 * theta)
    cdef double complex e = cos(phi) + 1j * sin(phi)
    v0[0] = c
    v0[1] = e * s
    v1[0] = -s / e
    v1[1] = c


cdef void _block(const double complex[:, :] rho, double complex* v,
                 double complex* b00, double complex* b01, double complex* b11) nogil:
    # B[a, c] = sum_{b, d} conj(v[b]) rho[2a+b, 2c+d] v[d]
    cdef double complex cv0 = v[0].conjugate()
    cdef double complex cv1 = v[1].conjugate()
    b00[0] = (cv0 * (rho[0, 0] * v[0] + rho[0, 1] * v[1])
              + cv1 * (rho[1, 0] * v[0] + rho[1, 1] * v[1]))
    b01[0] = (cv0 * (rho[0, 2] * v[0] + rho[0, 3] * v[1])
              + cv1 * (rho[1, 2] * v[0] + rho[1, 3] * v[1]))
    b11[0] = (cv0 * (rho[2, 2] * v[0] + rho[2, 3] * v[1])
              + cv1 * (rho[3, 2] * v[0] + rho[3, 3] * v[1]))


cdef inline void _eig2(double complex b00, double complex b01, double complex b11,
                       double* lo, double* hi) nogil:
    cdef double tr = b00.real + b11.real
    cdef double gap = sqrt((b00.real - b11.real) ** 2
                           + 4.0 * (b01.real * b01.real + b01.imag * b01.imag))
    hi[0] = 0.5 * (tr + gap)
    lo[0] = 0.5 * (tr - gap)


def cond_entropy_measured_b(const double complex[:, :] rho, double theta, double phi):
    """sum_x p_x S(rho_x^A) for a projective measurement of the second qubit."""
    cdef double complex v0[2]
    cdef double complex v1[2]
    cdef double complex b00, b01, b11
    cdef double lo, hi, total = 0.0
    cdef int l
    _basis(theta, phi, v0, v1)
    for l in range(2):
        if l == 0:
            _block(rho, v0, &b00, &b01, &b11)
        else:
            _block(rho, v1, &b00, &b01, &b11)
        _eig2(b00, b01, b11, &lo, &hi)
        total += _plogp(lo + hi) - _plogp(lo) - _plogp(hi)
    return total


def dephased_entropy_b(const double complex[:, :] rho, double theta, double phi):
    """Entropy of (I x Pi) rho (I x Pi)."""
    cdef double complex v0[2]
    cdef double complex v1[2]
    cdef double complex b00, b01, b11
    cdef double lo, hi, total = 0.0
    cdef int l
    _basis(theta, phi, v0, v1)
    for l in range(2):
        if l == 0:
            _block(rho, v0, &b00, &b01, &b11)
        else:
            _block(rho, v1, &b00, &b01, &b11)
        _eig2(b00, b01, b11, &lo, &hi)
        total -= _plogp(lo) + _plogp(hi)
    return total


def dephased_entropy_product(const double complex[:, :] rho,
                             double theta_a, double phi_a,
                             double theta_b, double phi_b):
    """Entropy after dephasing both qubits in a product basis."""
    cdef double complex ua[2]
    cdef double complex ub[2]
    cdef double complex va[2]
    cdef double complex vb[2]
    cdef double complex amp
    cdef double total = 0.0
    cdef double p
    cdef int k, l, a, b, c, d
    cdef double complex u[2][2]
    cdef double complex v[2][2]
    _basis(theta_a, phi_a, ua, va)
    _basis(theta_b, phi_b, ub, vb)
    u[0][0] = ua[0]; u[0][1] = ua[1]
    u[1][0] = va[0]; u[1][1] = va[1]
    v[0][0] = ub[0]; v[0][1] = ub[1]
    v[1][0] = vb[0]; v[1][1] = vb[1]
    for k in range(2):
        for l in range(2):
            amp = 0.0
            for a in range(2):
                for b in range(2):
                    for c in range(2):
                        for d in range(2):
                            amp = amp + (u[k][a].conjugate() * v[l][b].conjugate()
                                         * rho[2 * a + b, 2 * c + d]
                                         * u[k][c] * v[l][d])
            p = amp.real
            total -= _plogp(p)
    return total
