"""Pure-Python implementations of the two-qubit hot kernels.

Same signatures as the compiled extension ``qcorrkit._kernels``; the package
picks whichever is importable. All functions take the raw 4x4 complex matrix
of a two-qubit state (dims [2, 2], row-major) and Bloch angles of rank-1
projective bases. Measurement and dephasing always act on the second qubit;
callers permute subsystems first.
"""

import math

import numpy as np

_LOG2 = math.log(2.0)


def _basis(theta, phi):
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    e = complex(math.cos(phi), math.sin(phi))
    v0 = np.array([c, e * s], dtype=np.complex128)
    v1 = np.array([-e.conjugate() * s, c], dtype=np.complex128)
    return v0, v1


def _blocks(rho, theta, phi):
    """Unnormalized conditional 2x2 blocks B_l = <v_l|_B rho |v_l>_B."""
    t = rho.reshape(2, 2, 2, 2)
    out = []
    for v in _basis(theta, phi):
        out.append(np.einsum("b,abcd,d->ac", v.conj(), t, v))
    return out


def _block_eigvals(b):
    tr = b[0, 0].real + b[1, 1].real
    gap = math.sqrt((b[0, 0].real - b[1, 1].real) ** 2 + 4.0 * abs(b[0, 1]) ** 2)
    return 0.5 * (tr + gap), 0.5 * (tr - gap)


def _plogp(x):
    return x * math.log(x) / _LOG2 if x > 1e-18 else 0.0


def cond_entropy_measured_b(rho, theta, phi):
    """sum_x p_x S(rho_x^A) for a projective measurement of the second qubit."""
    total = 0.0
    for b in _blocks(rho, theta, phi):
        lo, hi = _block_eigvals(b)
        p = lo + hi
        total += _plogp(p) - _plogp(lo) - _plogp(hi)
    return total


def dephased_entropy_b(rho, theta, phi):
    """Entropy of (I x Pi) rho (I x Pi): block-diagonal, so a sum of block terms."""
    total = 0.0
    for b in _blocks(rho, theta, phi):
        lo, hi = _block_eigvals(b)
        total -= _plogp(lo) + _plogp(hi)
    return total


def dephased_entropy_product(rho, theta_a, phi_a, theta_b, phi_b):
    """Entropy after dephasing both qubits in a product basis (diagonal result)."""
    t = rho.reshape(2, 2, 2, 2)
    total = 0.0
    for u in _basis(theta_a, phi_a):
        for v in _basis(theta_b, phi_b):
            p = np.einsum("a,b,abcd,c,d->", u.conj(), v.conj(), t, u, v).real
            total -= _plogp(p)
    return total
