"""Entanglement quantifiers for small systems.

Exact routes: entanglement entropy for pure states, the two-qubit concurrence
formula, PPT/negativity, and the hashing equality for maximally correlated
states. The ensemble-optimized entanglement of formation is a numerical upper
bound used to cross-validate the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import entropy as ent
from .measurements import UnsupportedInputError
from .optimize import OptimizerConfig, multistart_minimize, rank1_povm_vectors, unitary_param_count
from .states import DensityMatrix, PureState, partial_trace, purify, schmidt

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
)


@dataclass(frozen=True)
class EntanglementValue:
    """Value in bits with a tag naming the computation route."""

    bits: float
    method: str  # wootters | ensemble_opt | negativity | hashing | pure_exact

    def __float__(self):
        return self.bits


def binary_entropy(p: float) -> float:
    return ent.shannon([p, 1.0 - p])


def entanglement_entropy(psi: PureState, cut: Iterable[int] = (0,)) -> EntanglementValue:
    """Entropy of either marginal of a pure bipartite state."""
    dec = schmidt(psi, cut)
    return EntanglementValue(ent.shannon(dec.coefficients**2), "pure_exact")


def relative_entanglement_pure(psi: PureState, cut: Iterable[int] = (0,)) -> EntanglementValue:
    """Relative entropy of entanglement of a pure state: equals the marginal entropy."""
    return EntanglementValue(entanglement_entropy(psi, cut).bits, "pure_exact")


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence C = max(0, l1 - l2 - l3 - l4)."""
    if rho.dims != (2, 2):
        raise ValueError(f"concurrence needs a two-qubit state, got dims {rho.dims}")
    tilde = _SIGMA_YY @ rho.data.conj() @ _SIGMA_YY
    vals = np.linalg.eigvals(rho.data @ tilde)
    lams = np.sqrt(np.abs(np.sort(vals.real)[::-1]))
    return max(0.0, lams[0] - lams[1] - lams[2] - lams[3])


def eof_two_qubits(rho: DensityMatrix) -> EntanglementValue:
    """Closed-form two-qubit entanglement of formation from the concurrence."""
    c = concurrence(rho)
    return EntanglementValue(binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c))), "wootters")


def eof_ensemble_opt(
    rho: DensityMatrix,
    ensemble_size: Optional[int] = None,
    config: Optional[OptimizerConfig] = None,
    cut: Iterable[int] = (0,),
) -> EntanglementValue:
    """Minimized average pure-state entanglement over purification-induced ensembles.

    Ensembles are generated by n-outcome rank-1 measurements on the purifying
    environment, which sweeps every size-n decomposition of ``rho``; the result
    is an upper bound on the entanglement of formation that becomes tight as n
    covers the optimal decomposition size.
    """
    if rho.side > 16:
        raise ValueError("ensemble optimization is limited to total dimension <= 16")
    psi = purify(rho)
    env_dim = psi.dims[-1]
    cut = tuple(cut)
    if env_dim == 1:
        return EntanglementValue(entanglement_entropy(psi, cut).bits, "ensemble_opt")
    n = ensemble_size if ensemble_size is not None else min(env_dim * env_dim, 8)
    if n < env_dim:
        raise ValueError(f"ensemble size {n} below state rank {env_dim}")
    amps = psi.amps.reshape(-1, env_dim)  # system index x environment index
    sys_dims = psi.dims[:-1]
    rest = tuple(i for i in range(len(sys_dims)) if i not in cut)
    d_left = int(np.prod([sys_dims[i] for i in cut]))
    d_right = int(np.prod([sys_dims[i] for i in rest]))
    perm = cut + rest
    n_params = unitary_param_count(n) if n > env_dim else unitary_param_count(env_dim)

    def average_entanglement(params):
        mus = rank1_povm_vectors(params, env_dim, n)
        total = 0.0
        for x in range(n):
            branch = amps @ mus[x].conj()  # (I x <mu_x|) |psi>, unnormalized
            weight = float(np.vdot(branch, branch).real)
            if weight < 1e-14:
                continue
            mat = branch.reshape(sys_dims).transpose(perm).reshape(d_left, d_right)
            sq = np.linalg.svd(mat, compute_uv=False) ** 2
            total += ent.shannon(sq) + weight * np.log2(weight)
        return total

    res = multistart_minimize(average_entanglement, n_params, config)
    return EntanglementValue(max(res.value, 0.0), "ensemble_opt")


def partial_transpose(rho: DensityMatrix, cut: Iterable[int] = (0,)) -> np.ndarray:
    """Raw matrix transposed on every subsystem outside ``cut``."""
    cut = tuple(cut)
    dims = rho.dims
    m = len(dims)
    t = rho.data.reshape(dims + dims)
    axes = list(range(2 * m))
    for i in range(m):
        if i not in cut:
            axes[i], axes[m + i] = m + i, i
    return t.transpose(axes).reshape(rho.side, rho.side)


def negativity(rho: DensityMatrix, cut: Iterable[int] = (0,)) -> EntanglementValue:
    """(||rho^{T_B}||_1 - 1) / 2: the sum of negative partial-transpose eigenvalues."""
    vals = np.linalg.eigvalsh(partial_transpose(rho, cut))
    return EntanglementValue(float(np.sum(np.abs(vals[vals < 0.0]))), "negativity")


def is_ppt(rho: DensityMatrix, cut: Iterable[int] = (0,)) -> bool:
    vals = np.linalg.eigvalsh(partial_transpose(rho, cut))
    return bool(vals[0] >= -1e-10)


def _check_max_corr(rho: DensityMatrix, cut: tuple, tol: float = 1e-10):
    cut = tuple(cut)
    rest = tuple(i for i in range(len(rho.dims)) if i not in cut)
    d_s = int(np.prod([rho.dims[i] for i in cut]))
    d_m = int(np.prod([rho.dims[i] for i in rest]))
    if d_s != d_m:
        raise UnsupportedInputError(
            f"maximally correlated structure needs equal sides, got {d_s} x {d_m}"
        )
    perm = cut + rest
    m = len(rho.dims)
    t = rho.data.reshape(rho.dims + rho.dims)
    t = t.transpose(perm + tuple(p + m for p in perm)).reshape(d_s, d_m, d_s, d_m)
    worst = 0.0
    for i in range(d_s):
        for k in range(d_m):
            for j in range(d_s):
                for l in range(d_m):
                    if i == k and j == l:
                        continue
                    worst = max(worst, abs(t[i, k, j, l]))
    if worst > tol:
        raise UnsupportedInputError(
            f"state is not maximally correlated across the cut: "
            f"off-structure entry of magnitude {worst:.3e}"
        )


def distillable_max_corr(rho: DensityMatrix, cut: Iterable[int] = (0,)) -> EntanglementValue:
    """Distillable entanglement of a maximally correlated state (hashing equality).

    E_D = -S(S|M) = S(rho_M) - S(rho_SM), valid only for states supported on
    matched index pairs |ii><jj| across the cut; other inputs are rejected.
    """
    cut = tuple(cut)
    _check_max_corr(rho, cut)
    rest = tuple(i for i in range(len(rho.dims)) if i not in cut)
    s_m = ent.von_neumann(partial_trace(rho, rest))
    return EntanglementValue(max(s_m - ent.von_neumann(rho), 0.0), "hashing")
