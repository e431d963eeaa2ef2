"""Shared fixtures and independent test-side oracles."""

import numpy as np
import pytest

from qcorrkit import (
    DensityMatrix,
    OptimizerConfig,
    PureState,
    partial_trace,
    von_neumann,
)

SQ2 = 1.0 / np.sqrt(2.0)


@pytest.fixture
def bell():
    """|Phi+> = (|00> + |11>)/sqrt(2)."""
    return PureState((2, 2), np.array([SQ2, 0.0, 0.0, SQ2]))


@pytest.fixture
def bell_dm(bell):
    return bell.density()


@pytest.fixture
def coin_classical():
    """Equal mixture of |00><00| and |11><11| (register x event)."""
    return DensityMatrix((2, 2), np.diag([0.5, 0.0, 0.0, 0.5]))


@pytest.fixture
def coin_quantum():
    """1/2 |0><0| x |+><+| + 1/2 |1><1| x |1><1| (register x event)."""
    plus = np.array([SQ2, SQ2])
    one = np.array([0.0, 1.0])
    data = 0.5 * np.kron(np.diag([1.0, 0.0]), np.outer(plus, plus)) + 0.5 * np.kron(
        np.diag([0.0, 1.0]), np.outer(one, one)
    )
    return DensityMatrix((2, 2), data)


@pytest.fixture
def fast_config():
    return OptimizerConfig(restarts=8, seed=0)


def werner(p):
    bell = np.zeros((4, 4))
    bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
    return DensityMatrix((2, 2), (1.0 - p) * np.eye(4) / 4.0 + p * bell)


def grid_classical_correlations(rho, n=400):
    """Brute-force J over an n x n (theta, phi) grid of projective bases on the
    second qubit; fully independent of the library's optimizer and kernels."""
    t = rho.data.reshape(2, 2, 2, 2)
    theta = np.linspace(0.0, np.pi, n)
    phi = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    c, s = np.cos(th / 2.0), np.sin(th / 2.0)
    e = np.exp(1j * ph)
    # grid of bases: axis 2 = basis vector index, axis 3 = component
    v = np.stack(
        [np.stack([c + 0j, e * s], -1), np.stack([-np.conj(e) * s, c + 0j], -1)], -2
    )
    blocks = np.einsum("ghxb,abcd,ghxd->ghxac", v.conj(), t, v)
    tr = np.real(blocks[..., 0, 0] + blocks[..., 1, 1])
    det = np.real(
        blocks[..., 0, 0] * blocks[..., 1, 1] - blocks[..., 0, 1] * blocks[..., 1, 0]
    )
    gap = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
    lo, hi = 0.5 * (tr - gap), 0.5 * (tr + gap)

    def plogp(x):
        return np.where(x > 1e-15, x * np.log2(np.maximum(x, 1e-300)), 0.0)

    cond = np.sum(plogp(lo + hi) - plogp(lo) - plogp(hi), axis=2)
    s_kept = von_neumann(partial_trace(rho, (0,)))
    return s_kept - float(cond.min())


def grid_discord(rho, n=400):
    """Mutual information minus the grid-oracle classical correlations."""
    s_a = von_neumann(partial_trace(rho, (0,)))
    s_b = von_neumann(partial_trace(rho, (1,)))
    total = s_a + s_b - von_neumann(rho)
    return max(total - grid_classical_correlations(rho, n), 0.0)
