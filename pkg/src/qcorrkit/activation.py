"""Measurement-interaction (controlled-copy) simulation and the conversion of
quantumness of correlations into system-apparatus entanglement.

The apparatus starts in |0...0> and the interaction is a generalized CNOT per
local subsystem, preceded by local basis rotations; the post-interaction state
is always maximally correlated across the system:apparatus cut, which makes
the hashing equality for its distillable entanglement exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import entropy as ent
from .entanglement import distillable_max_corr, negativity
from .optimize import OptimizerConfig, multistart_minimize, qubit_basis_vectors
from .quantumness import QuantumnessValue, is_classical, zero_way_deficit
from .states import DensityMatrix, PureState, partial_trace

UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class InteractionUnitary:
    """Controlled-copy interaction U = C (U_local x I) on system x apparatus."""

    dims: tuple
    local_unitaries: tuple
    matrix: np.ndarray

    def __post_init__(self):
        m = self.matrix
        err = np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])))
        if err > UNITARY_TOL:
            raise ValueError(f"interaction is not unitary (residual {err:.3e})")
        m.setflags(write=False)


@dataclass(frozen=True, eq=False)
class ActivatedState:
    """Post-interaction state on dims system + apparatus with the S:M cut marked."""

    state: DensityMatrix
    system_cut: tuple

    def __post_init__(self):
        _assert_max_corr(self.state, self.system_cut)


def _assert_max_corr(rho: DensityMatrix, cut: tuple, tol: float = 1e-10):
    d = int(np.prod([rho.dims[i] for i in cut]))
    t = rho.data.reshape(d, d, d, d)
    # entries may live only at (ii, jj) positions across the S:M cut
    allowed = np.zeros((d, d, d, d), dtype=bool)
    for i in range(d):
        for j in range(d):
            allowed[i, i, j, j] = True
    worst = float(np.max(np.abs(t[~allowed]))) if np.any(~allowed) else 0.0
    if worst > tol:
        raise ValueError(
            f"activated state violates the maximally correlated structure ({worst:.3e})"
        )


def _controlled_copy(d: int) -> np.ndarray:
    """Generalized CNOT on C^d x C^d: |k>|j> -> |k>|j + k mod d>."""
    c = np.zeros((d * d, d * d))
    for k in range(d):
        for j in range(d):
            c[k * d + ((j + k) % d), k * d + j] = 1.0
    return c


def build_interaction(
    dims: Sequence[int],
    local_unitaries: Optional[Sequence[np.ndarray]] = None,
) -> InteractionUnitary:
    """Interaction C (U_1 x ... x U_m x I_M) copying the rotated local bases.

    ``dims`` are the system's subsystem dimensions (one or two factors); the
    apparatus mirrors them. With identity rotations and a single qubit the
    matrix is the canonical 4x4 CNOT.
    """
    dims = tuple(int(d) for d in dims)
    if local_unitaries is None:
        local_unitaries = [np.eye(d) for d in dims]
    if len(local_unitaries) != len(dims):
        raise ValueError("need one local unitary per system subsystem")
    for i, (u, d) in enumerate(zip(local_unitaries, dims)):
        u = np.asarray(u)
        if u.shape != (d, d) or np.max(np.abs(u @ u.conj().T - np.eye(d))) > UNITARY_TOL:
            raise ValueError(f"local operator {i} is not a {d}x{d} unitary")
    d_s = int(np.prod(dims))
    u_s = local_unitaries[0]
    for u in local_unitaries[1:]:
        u_s = np.kron(u_s, u)

    # per-subsystem controlled copies on (S, M), with S = all system factors
    # first and M mirroring them
    m = len(dims)
    copy = np.eye(d_s * d_s)
    for i, d in enumerate(dims):
        c = _controlled_copy(d)  # acts on system factor i and apparatus factor i
        full = _embed_pair(c, dims, i)
        copy = full @ copy
    total = copy @ np.kron(u_s, np.eye(d_s))
    return InteractionUnitary(dims, tuple(np.asarray(u) for u in local_unitaries), total)


def _embed_pair(op: np.ndarray, dims: tuple, which: int) -> np.ndarray:
    """Lift an operator on (system factor i, apparatus factor i) to the full space."""
    m = len(dims)
    full_dims = dims + dims
    axes = [which, m + which] + [i for i in range(2 * m) if i not in (which, m + which)]
    rest = int(np.prod([full_dims[i] for i in axes[2:]], dtype=int)) if len(axes) > 2 else 1
    big = np.kron(op, np.eye(rest))
    perm_dims = [full_dims[i] for i in axes]
    t = big.reshape(perm_dims + perm_dims)
    inv = np.argsort(axes)
    order = list(inv) + [len(axes) + i for i in inv]
    n = int(np.prod(full_dims))
    return t.transpose(order).reshape(n, n)


def activate(rho: DensityMatrix, interaction: InteractionUnitary) -> ActivatedState:
    """Couple the apparatus in |0...0>, apply the interaction, return the joint state."""
    if rho.dims != interaction.dims:
        raise ValueError(f"state dims {rho.dims} do not match interaction dims {interaction.dims}")
    d_s = rho.side
    ancilla = np.zeros((d_s, d_s))
    ancilla[0, 0] = 1.0
    joint = np.kron(rho.data, ancilla)
    u = interaction.matrix
    out = u @ joint @ u.conj().T
    out = 0.5 * (out + out.conj().T)
    state = DensityMatrix(rho.dims + rho.dims, out)
    return ActivatedState(state, tuple(range(len(rho.dims))))


def _measure_activated(activated: ActivatedState, measure: str) -> float:
    cut = activated.system_cut
    if measure == "negativity":
        return negativity(activated.state, cut).bits
    if measure == "hashing":
        return distillable_max_corr(activated.state, cut).bits
    raise ValueError(f"unknown entanglement measure {measure!r}")


def min_activated_entanglement(
    rho: DensityMatrix,
    measure: str = "negativity",
    config: Optional[OptimizerConfig] = None,
) -> QuantumnessValue:
    """Minimum system-apparatus entanglement over local pre-measurement bases.

    Each objective evaluation builds the full activated state and scores it
    with the requested entanglement measure across the S:M cut.
    """
    if len(rho.dims) != 2 or rho.side > 16:
        raise ValueError(f"bipartite system of total dimension <= 16 required, got {rho.dims}")
    if rho.dims != (2, 2):
        raise NotImplementedError("local-unitary search is parametrized for two qubits")

    def objective(x):
        us = (qubit_basis_vectors(x[0], x[1]).conj().T, qubit_basis_vectors(x[2], x[3]).conj().T)
        inter = build_interaction(rho.dims, us)
        return _measure_activated(activate(rho, inter), measure)

    res = multistart_minimize(objective, 4, config)
    return QuantumnessValue(
        max(res.value, 0.0), measure, 4, res.params,
        res.best_restart, res.iterations, res.spread,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    deficit: float
    activated_ed: float
    residual: float


def zero_way_equivalence(
    rho: DensityMatrix, config: Optional[OptimizerConfig] = None
) -> EquivalenceReport:
    """|zero-way deficit - min_U E_D(activated)| via fully independent code paths."""
    if rho.dims != (2, 2):
        raise ValueError(f"two-qubit system required, got dims {rho.dims}")
    deficit = zero_way_deficit(rho, config).bits
    activated = min_activated_entanglement(rho, "hashing", config).bits
    return EquivalenceReport(deficit, activated, abs(deficit - activated))


CLASSICAL = "CLASSICAL"
NONCLASSICAL = "NONCLASSICAL"
INCONCLUSIVE = "INCONCLUSIVE"


def classicality_separability_test(
    rho: DensityMatrix,
    config: Optional[OptimizerConfig] = None,
    classical_threshold: float = 1e-6,
    nonclassical_threshold: float = 1e-4,
) -> str:
    """Three-way verdict from the minimized activated negativity.

    CLASSICAL below 1e-6, NONCLASSICAL above 1e-4, INCONCLUSIVE in between or
    when the structural dephasing-distance check disagrees.
    """
    if rho.dims != (2, 2):
        raise ValueError(f"two-qubit system required, got dims {rho.dims}")
    min_neg = min_activated_entanglement(rho, "negativity", config).bits
    if min_neg <= classical_threshold:
        verdict = CLASSICAL
    elif min_neg >= nonclassical_threshold:
        verdict = NONCLASSICAL
    else:
        return INCONCLUSIVE
    structurally_classical, _ = is_classical(rho, "CC", config=config)
    if structurally_classical != (verdict == CLASSICAL):
        return INCONCLUSIVE
    return verdict
