"""Classical correlations, quantum discord, work deficits, classicality tests.

Optimized values are one-sided bounds: lower bounds for extracted classical
correlations, upper bounds for discord and deficits. Diagnostics expose the
spread across restarts so callers can assert convergence. The two-qubit
projective paths run on the compiled kernels; POVM and qudit paths use the
generic numpy route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import entropy as ent
from . import kernels
from .entanglement import relative_entanglement_pure
from .measurements import ProjectiveBasis
from .optimize import (
    OptimizerConfig,
    multistart_minimize,
    povm_param_count,
    projective_basis_columns,
    rank1_povm_vectors,
    unitary_param_count,
)
from .states import DensityMatrix, PureState, partial_trace, permute_subsystems, purify

CLIP = 1e-9


@dataclass(frozen=True)
class QuantumnessValue:
    """Optimized value in bits plus optimizer diagnostics and the best parameters."""

    bits: float
    method: str
    n_outcomes: int
    params: np.ndarray
    best_restart: int
    iterations: int
    spread: float

    def __float__(self):
        return self.bits


def _clip(x: float) -> float:
    if x < -CLIP:
        raise ValueError(f"value {x:.3e} below clipping threshold")
    return max(x, 0.0)


def _side_index(rho: DensityMatrix, side) -> int:
    if len(rho.dims) != 2:
        raise ValueError(f"bipartite state required, got dims {rho.dims}")
    if side in ("A", "a", 0):
        return 0
    if side in ("B", "b", 1):
        return 1
    raise ValueError(f"unknown side {side!r}")


def _measured_last(rho: DensityMatrix, measured: int):
    """Reorder so the measured subsystem is the second factor."""
    if measured == 0:
        rho = permute_subsystems(rho, (1, 0))
    return rho


def _measured_blocks(data: np.ndarray, d_keep: int, d_meas: int, vectors: np.ndarray):
    """Unnormalized conditional blocks <mu_x|_M rho |mu_x>_M for rank-1 vectors."""
    t = data.reshape(d_keep, d_meas, d_keep, d_meas)
    return [np.einsum("b,abcd,d->ac", v.conj(), t, v) for v in vectors]


def _block_entropy_terms(blocks):
    """(conditional entropy, dephased entropy) from unnormalized blocks."""
    cond = 0.0
    deph = 0.0
    for b in blocks:
        vals = np.clip(np.linalg.eigvalsh(b), 0.0, None)
        p = float(vals.sum())
        s = ent.shannon(vals)
        deph += s
        if p > 1e-15:
            cond += s + p * np.log2(p)  # p * S(block / p)
    return cond, deph


def classical_correlations(
    rho,
    measured="B",
    config: Optional[OptimizerConfig] = None,
    n_outcomes: Optional[int] = None,
) -> QuantumnessValue:
    """J: maximal mutual information extractable by measuring one side.

    Maximizes S(rho_kept) - sum_x p_x S(rho_x) over rank-1 measurements on the
    measured side; projective by default, POVMs with up to d^2 outcomes when
    ``n_outcomes`` exceeds the subsystem dimension.
    """
    if isinstance(rho, PureState):
        rho = rho.density()
    m = _side_index(rho, measured)
    oriented = _measured_last(rho, m)
    d_keep, d_meas = oriented.dims
    s_kept = ent.von_neumann(partial_trace(oriented, (0,)))
    n = n_outcomes or d_meas
    data = oriented.data

    if d_keep == 2 and d_meas == 2 and n == 2:
        objective = lambda x: kernels.cond_entropy_measured_b(data, x[0], x[1])
        n_params, method = 2, "projective"
    else:
        def objective(x):
            mus = rank1_povm_vectors(x, d_meas, n)
            cond, _ = _block_entropy_terms(_measured_blocks(data, d_keep, d_meas, mus))
            return cond
        n_params = povm_param_count(d_meas, n)
        method = "povm" if n > d_meas else "projective"

    res = multistart_minimize(objective, n_params, config)
    return QuantumnessValue(
        _clip(s_kept - res.value), method, n, res.params,
        res.best_restart, res.iterations, res.spread,
    )


def discord(
    rho,
    measured="B",
    config: Optional[OptimizerConfig] = None,
    n_outcomes: Optional[int] = None,
) -> QuantumnessValue:
    """D = I(A:B) - J, the correlations destroyed by the best local measurement."""
    if isinstance(rho, PureState):
        rho = rho.density()
    j = classical_correlations(rho, measured, config, n_outcomes)
    total = ent.mutual_information(rho, (0,))
    return QuantumnessValue(
        _clip(total - j.bits), j.method, j.n_outcomes, j.params,
        j.best_restart, j.iterations, j.spread,
    )


def _product_probs(data, dims, cols_a, cols_b):
    t = data.reshape(dims + dims)
    return np.real(
        np.einsum("ai,bj,abcd,ci,dj->ij", cols_a.conj(), cols_b.conj(), t, cols_a, cols_b)
    )


def _split_product_params(x, d_a, d_b):
    n_a = povm_param_count(d_a, d_a)
    cols_a = projective_basis_columns(x[:n_a], d_a)
    cols_b = projective_basis_columns(x[n_a:], d_b)
    return cols_a, cols_b


def discord_two_sided(rho, config: Optional[OptimizerConfig] = None) -> QuantumnessValue:
    """Minimal mutual-information loss under product projective measurements."""
    if isinstance(rho, PureState):
        rho = rho.density()
    if len(rho.dims) != 2:
        raise ValueError(f"bipartite state required, got dims {rho.dims}")
    d_a, d_b = rho.dims
    total = ent.mutual_information(rho, (0,))
    data = rho.data

    def objective(x):
        cols_a, cols_b = _split_product_params(x, d_a, d_b)
        p = np.clip(_product_probs(data, rho.dims, cols_a, cols_b), 0.0, None)
        classical = ent.shannon(p.sum(axis=1)) + ent.shannon(p.sum(axis=0)) - ent.shannon(p.ravel())
        return total - classical

    n_params = povm_param_count(d_a, d_a) + povm_param_count(d_b, d_b)
    res = multistart_minimize(objective, n_params, config)
    return QuantumnessValue(
        _clip(res.value), "projective", d_a * d_b, res.params,
        res.best_restart, res.iterations, res.spread,
    )


def one_way_deficit(
    rho, measured="B", config: Optional[OptimizerConfig] = None
) -> QuantumnessValue:
    """Minimal entropy production of a local dephasing on the measured side."""
    if isinstance(rho, PureState):
        rho = rho.density()
    m = _side_index(rho, measured)
    oriented = _measured_last(rho, m)
    d_keep, d_meas = oriented.dims
    s_in = ent.von_neumann(oriented)
    data = oriented.data

    if d_keep == 2 and d_meas == 2:
        objective = lambda x: kernels.dephased_entropy_b(data, x[0], x[1])
        n_params = 2
    else:
        def objective(x):
            cols = projective_basis_columns(x, d_meas)
            _, deph = _block_entropy_terms(_measured_blocks(data, d_keep, d_meas, cols.T))
            return deph
        n_params = povm_param_count(d_meas, d_meas)

    res = multistart_minimize(objective, n_params, config)
    return QuantumnessValue(
        _clip(res.value - s_in), "projective", d_meas, res.params,
        res.best_restart, res.iterations, res.spread,
    )


def zero_way_deficit(rho, config: Optional[OptimizerConfig] = None) -> QuantumnessValue:
    """Minimal entropy production of product dephasings on both sides."""
    if isinstance(rho, PureState):
        rho = rho.density()
    if len(rho.dims) != 2:
        raise ValueError(f"bipartite state required, got dims {rho.dims}")
    d_a, d_b = rho.dims
    s_in = ent.von_neumann(rho)
    data = rho.data

    if (d_a, d_b) == (2, 2):
        objective = lambda x: kernels.dephased_entropy_product(data, x[0], x[1], x[2], x[3])
        n_params = 4
    else:
        def objective(x):
            cols_a, cols_b = _split_product_params(x, d_a, d_b)
            p = np.clip(_product_probs(data, rho.dims, cols_a, cols_b), 0.0, None)
            return ent.shannon(p.ravel())
        n_params = povm_param_count(d_a, d_a) + povm_param_count(d_b, d_b)

    res = multistart_minimize(objective, n_params, config)
    return QuantumnessValue(
        _clip(res.value - s_in), "projective", d_a * d_b, res.params,
        res.best_restart, res.iterations, res.spread,
    )


def relative_entropy_of_quantumness(
    rho, variant: str = "QC", measured="B", config: Optional[OptimizerConfig] = None
) -> QuantumnessValue:
    """Distance to the classical-state set via the work-deficit equivalence.

    ``QC`` equals the one-way deficit (dephasing on the measured side), ``CC``
    the zero-way deficit; identical numerics, distinct labels.
    """
    if variant.upper() == "QC":
        return one_way_deficit(rho, measured, config)
    if variant.upper() == "CC":
        return zero_way_deficit(rho, config)
    raise ValueError(f"variant must be 'QC' or 'CC', got {variant!r}")


def total_work(rho: DensityMatrix) -> float:
    """Extractable work in bits: log2 N - S(rho)."""
    return float(np.log2(rho.side)) - ent.von_neumann(rho)


def work_deficit_bound_check(rho, config: Optional[OptimizerConfig] = None) -> bool:
    """Check the deficit >= relative-entropy-of-entanglement bound (pure inputs)."""
    if isinstance(rho, PureState):
        rho = rho.density()
    deficit = zero_way_deficit(rho, config).bits
    if rho.purity() > 1.0 - 1e-10:
        psi = purify(rho)
        amps = psi.amps.reshape(rho.side, -1)[:, 0]
        e_r = relative_entanglement_pure(PureState(rho.dims, amps), (0,)).bits
    else:
        e_r = 0.0
    return deficit >= e_r - 1e-6


def is_classical(
    rho,
    variant: str = "CC",
    measured="A",
    tol: float = 1e-6,
    config: Optional[OptimizerConfig] = None,
):
    """Classicality detection by minimal dephasing disturbance.

    Returns ``(verdict, bases)`` where verdict is True iff the trace-norm
    distance between rho and its optimally dephased version is at most ``tol``.
    ``CC`` dephases both sides, ``CQ`` only the measured side.
    """
    if isinstance(rho, PureState):
        rho = rho.density()
    if len(rho.dims) != 2:
        raise ValueError(f"bipartite state required, got dims {rho.dims}")
    variant = variant.upper()
    d_a, d_b = rho.dims
    data = rho.data
    t = data.reshape(rho.dims + rho.dims)

    if variant == "CC":
        def dephased(x):
            cols_a, cols_b = _split_product_params(x, d_a, d_b)
            p = _product_probs(data, rho.dims, cols_a, cols_b)
            vecs = np.einsum("ai,bj->abij", cols_a, cols_b).reshape(d_a * d_b, d_a * d_b)
            return (vecs * p.ravel()) @ vecs.conj().T
        n_params = povm_param_count(d_a, d_a) + povm_param_count(d_b, d_b)
    elif variant == "CQ":
        m = _side_index(rho, measured)
        def dephased(x):
            cols = projective_basis_columns(x, rho.dims[m])
            out = np.zeros_like(data)
            for v in cols.T:
                proj = np.outer(v, v.conj())
                if m == 0:
                    full = np.kron(proj, np.eye(d_b))
                else:
                    full = np.kron(np.eye(d_a), proj)
                out += full @ data @ full
            return out
        n_params = povm_param_count(rho.dims[m], rho.dims[m])
    else:
        raise ValueError(f"variant must be 'CQ' or 'CC', got {variant!r}")

    def objective(x):
        diff = dephased(x) - data
        return float(np.sum(np.abs(np.linalg.eigvalsh(diff))))

    res = multistart_minimize(objective, n_params, config)
    if variant == "CC":
        cols_a, cols_b = _split_product_params(res.params, d_a, d_b)
        bases = (ProjectiveBasis.from_unitary(cols_a), ProjectiveBasis.from_unitary(cols_b))
    else:
        bases = (ProjectiveBasis.from_unitary(projective_basis_columns(res.params, rho.dims[m])),)
    return res.value <= tol, bases
