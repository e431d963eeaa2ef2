"""Entropic functionals, all in bits (log base 2).

Matrix functions are evaluated through eigendecomposition only; every operand
here is Hermitian. Relative entropy returns ``math.inf`` when the first
argument has weight outside the support of the second.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .states import DensityMatrix, PureState, clipped_eigvals, partial_trace

SUPPORT_TOL = 1e-9  # projected-weight threshold separating support violation from eigen-noise
EIG_FLOOR = 1e-15


def shannon(probs) -> float:
    """Shannon entropy of a probability vector, with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    p = p[p > EIG_FLOOR]
    return float(-np.sum(p * np.log2(p)))


def von_neumann(rho) -> float:
    """S(rho) = -Tr[rho log2 rho]."""
    if isinstance(rho, PureState):
        return 0.0
    return shannon(clipped_eigvals(rho.data))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho||sigma) = Tr[rho log2 rho - rho log2 sigma].

    Diverges (returns ``inf``) when rho has weight above 1e-9 outside the
    support of sigma.
    """
    if rho.side != sigma.side:
        raise ValueError(f"dimension mismatch: {rho.side} vs {sigma.side}")
    svals, svecs = np.linalg.eigh(sigma.data)
    svals = np.clip(svals, 0.0, None)
    kernel = svals <= EIG_FLOOR
    if np.any(kernel):
        proj = svecs[:, kernel]
        outside = float(np.real(np.trace(proj.conj().T @ rho.data @ proj)))
        if outside > SUPPORT_TOL:
            return math.inf
    first = -von_neumann(rho)
    # Tr[rho log2 sigma] in sigma's eigenbasis; kernel branches carry
    # sub-threshold weight and are dropped.
    weights = np.real(np.einsum("ij,jk,ki->i", svecs.conj().T, rho.data, svecs))
    support = ~kernel
    second = float(np.sum(weights[support] * np.log2(np.maximum(svals[support], EIG_FLOOR))))
    return first - second


def _split(rho: DensityMatrix, cut: Iterable[int]):
    cut = tuple(cut)
    rest = tuple(i for i in range(len(rho.dims)) if i not in cut)
    if not cut or not rest:
        raise ValueError(f"cut {cut} is not a valid bipartition of dims {rho.dims}")
    return cut, rest


def mutual_information(rho, cut=(0,)) -> float:
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB) across the bipartition (cut | rest)."""
    if isinstance(rho, PureState):
        rho = rho.density()
    cut, rest = _split(rho, cut)
    s_a = von_neumann(partial_trace(rho, cut))
    s_b = von_neumann(partial_trace(rho, rest))
    return s_a + s_b - von_neumann(rho)


def conditional_entropy(rho, cut=(0,)) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B), with A the subsystems in ``cut``."""
    if isinstance(rho, PureState):
        rho = rho.density()
    cut, rest = _split(rho, cut)
    return von_neumann(rho) - von_neumann(partial_trace(rho, rest))


def coherent_information(rho, cut=(0,)) -> float:
    """I(A>B) = -S(A|B); the hashing lower bound on distillable entanglement."""
    return -conditional_entropy(rho, cut)


def jensen_shannon(psi: PureState, phi: PureState) -> float:
    """Jensen-Shannon divergence of two pure states.

    Computed as S(mu) - (S(psi) + S(phi))/2 with mu the equal mixture, which
    for pure inputs reduces to the entropy of the mixture.
    """
    if np.prod(psi.dims) != np.prod(phi.dims):
        raise ValueError(f"dimension mismatch: {psi.dims} vs {phi.dims}")
    mu = 0.5 * (np.outer(psi.amps, psi.amps.conj()) + np.outer(phi.amps, phi.amps.conj()))
    return shannon(clipped_eigvals(mu))
