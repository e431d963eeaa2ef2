"""Shared multi-start derivative-free optimizer and measurement parametrizations.

The objectives here are smooth but non-convex with a handful of angle
parameters, so seeded Nelder-Mead restarts are enough. Restart k of a given
master seed always starts from the same point, and the reduction is an
associative minimum with lowest-index tie-break, so results do not depend on
evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start search parameters; identical config + input gives identical results."""

    restarts: int = 32
    max_iterations: int = 2000
    function_tol: float = 1e-9
    simplex_scale: float = 0.3  # radians
    seed: int = 0

    def with_seed(self, seed: int) -> "OptimizerConfig":
        return OptimizerConfig(
            self.restarts, self.max_iterations, self.function_tol, self.simplex_scale, seed
        )


@dataclass(frozen=True)
class OptResult:
    value: float
    params: np.ndarray
    best_restart: int
    iterations: int
    restart_values: tuple
    spread: float  # gap between the two best restarts

    @property
    def diagnostics(self) -> dict:
        return {
            "best_restart": self.best_restart,
            "iterations": self.iterations,
            "spread": self.spread,
        }


def multistart_minimize(
    objective: Callable[[np.ndarray], float],
    n_params: int,
    config: OptimizerConfig | None = None,
) -> OptResult:
    """Minimize over angle parameters with seeded Nelder-Mead restarts."""
    cfg = config or OptimizerConfig()
    best = None
    values = []
    total_iter = 0
    for k in range(cfg.restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(k,)))
        x0 = rng.uniform(0.0, TWO_PI, n_params)
        simplex = np.vstack([x0, x0 + cfg.simplex_scale * np.eye(n_params)])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": cfg.max_iterations,
                "fatol": cfg.function_tol,
                "xatol": 1e-7,
                "initial_simplex": simplex,
            },
        )
        values.append(float(res.fun))
        total_iter += int(res.nit)
        if best is None or res.fun < best[1]:
            best = (k, float(res.fun), np.asarray(res.x, dtype=float))
    # polish: restart from the winner with a tight simplex; helps non-smooth
    # objectives (e.g. trace norms) that stall short of the minimum
    x = best[2]
    simplex = np.vstack([x, x + 0.1 * cfg.simplex_scale * np.eye(n_params)])
    res = minimize(
        objective,
        x,
        method="Nelder-Mead",
        options={
            "maxiter": cfg.max_iterations,
            "fatol": 1e-12,
            "xatol": 1e-9,
            "initial_simplex": simplex,
        },
    )
    total_iter += int(res.nit)
    if res.fun < best[1]:
        best = (best[0], float(res.fun), np.asarray(res.x, dtype=float))
    ordered = sorted(values)
    spread = ordered[1] - ordered[0] if len(ordered) > 1 else 0.0
    return OptResult(best[1], best[2], best[0], total_iter, tuple(values), spread)


# ---------------------------------------------------------------------------
# Parametrizations
# ---------------------------------------------------------------------------


def qubit_basis_vectors(theta: float, phi: float) -> np.ndarray:
    """Orthonormal qubit basis from Bloch angles, as columns of a 2x2 unitary."""
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[c, -e.conjugate() * s], [e * s, c]], dtype=np.complex128)


def _hermitian_from_params(params: np.ndarray, m: int) -> np.ndarray:
    h = np.zeros((m, m), dtype=np.complex128)
    idx = m
    h[np.diag_indices(m)] = params[:m]
    for i in range(m):
        for j in range(i + 1, m):
            h[i, j] = params[idx] + 1j * params[idx + 1]
            h[j, i] = params[idx] - 1j * params[idx + 1]
            idx += 2
    return h


def unitary_param_count(m: int) -> int:
    return m * m


def unitary_from_params(params: np.ndarray, m: int) -> np.ndarray:
    """Unitary exp(iH) from m^2 real parameters; surjective onto U(m)."""
    return expm(1j * _hermitian_from_params(np.asarray(params, dtype=float), m))


def projective_basis_columns(params: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal basis of C^d (columns) from d^2 angle parameters."""
    if d == 2 and len(params) == 2:
        return qubit_basis_vectors(params[0], params[1])
    return unitary_from_params(params, d)


def rank1_povm_vectors(params: np.ndarray, d: int, n: int) -> np.ndarray:
    """n rank-1 POVM element vectors |mu_x> on C^d, rows of an n x d matrix.

    Elements M_x = |mu_x><mu_x| satisfy sum_x M_x = I for every parameter
    vector: the rows come from the first d columns of an n x n unitary.
    """
    if not (d <= n <= d * d):
        raise ValueError(f"outcome count must satisfy {d} <= n <= {d * d}, got {n}")
    if n == d:
        return projective_basis_columns(params, d).T
    u = unitary_from_params(params, n)
    return u[:, :d].conj()


def povm_param_count(d: int, n: int) -> int:
    if n == d:
        return 2 if d == 2 else unitary_param_count(d)
    return unitary_param_count(n)
