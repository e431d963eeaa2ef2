"""Backend parity: compiled kernels must match the pure-python reference."""

import numpy as np
import pytest

from qcorrkit import RandomSource, random_density
from qcorrkit.kernels import BACKEND, impl, python_impl

KERNELS = [
    ("cond_entropy_measured_b", 2),
    ("dephased_entropy_b", 2),
    ("dephased_entropy_product", 4),
]


def test_backend_selected():
    assert BACKEND in ("cython", "python")


@pytest.mark.parametrize("name,n_angles", KERNELS)
def test_active_backend_matches_reference(name, n_angles):
    src = RandomSource(1)
    rng = src.split().generator
    for _ in range(30):
        rho = random_density((2, 2), 4, src.split()).data
        angles = rng.uniform(0.0, 2.0 * np.pi, n_angles)
        fast = getattr(impl, name)(rho, *angles)
        ref = getattr(python_impl, name)(rho, *angles)
        assert abs(fast - ref) <= 1e-12


@pytest.mark.parametrize("name,n_angles", KERNELS)
def test_reference_matches_dense_linear_algebra(name, n_angles):
    """Cross-check the python reference against a from-scratch projector build."""
    src = RandomSource(2)
    rng = src.split().generator
    rho = random_density((2, 2), 3, src.split()).data
    angles = rng.uniform(0.0, 2.0 * np.pi, n_angles)

    def basis(theta, phi):
        c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
        e = np.exp(1j * phi)
        return np.array([[c, -np.conj(e) * s], [e * s, c]])

    def entropy(vals):
        vals = np.clip(np.real(vals), 0.0, None)
        vals = vals[vals > 1e-15]
        return float(-np.sum(vals * np.log2(vals)))

    if name == "cond_entropy_measured_b":
        u = basis(*angles)
        total = 0.0
        for k in range(2):
            proj = np.kron(np.eye(2), np.outer(u[:, k], u[:, k].conj()))
            blk = proj @ rho @ proj
            p = np.real(np.trace(blk))
            if p > 1e-15:
                total += p * entropy(np.linalg.eigvalsh(blk) / p)
        expected = total
    elif name == "dephased_entropy_b":
        u = basis(*angles)
        out = np.zeros((4, 4), dtype=complex)
        for k in range(2):
            proj = np.kron(np.eye(2), np.outer(u[:, k], u[:, k].conj()))
            out += proj @ rho @ proj
        expected = entropy(np.linalg.eigvalsh(out))
    else:
        ua, ub = basis(*angles[:2]), basis(*angles[2:])
        out = np.zeros((4, 4), dtype=complex)
        for k in range(2):
            for l in range(2):
                proj = np.kron(
                    np.outer(ua[:, k], ua[:, k].conj()), np.outer(ub[:, l], ub[:, l].conj())
                )
                out += proj @ rho @ proj
        expected = entropy(np.linalg.eigvalsh(out))

    got = getattr(python_impl, name)(rho, *angles)
    assert abs(got - expected) <= 1e-10
