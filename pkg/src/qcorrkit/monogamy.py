"""Numerical verification of the purification balance between classical
correlations, discord and entanglement of formation on tripartite states.

All checks are restricted to three qubits so both entanglement-of-formation
terms come from the exact two-qubit formula and every measurement is
qubit-sized; the identities then hold to optimizer precision. When the
projective measurement leaves a residual above 1e-3, the classical-correlation
or discord optimization is retried with a 3-outcome rank-1 POVM.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import entropy as ent
from .entanglement import eof_two_qubits
from .optimize import OptimizerConfig
from .quantumness import classical_correlations, discord
from .states import DensityMatrix, PureState, RandomSource, partial_trace, random_pure

POVM_RETRY_RESIDUAL = 1e-3


@dataclass(frozen=True)
class KwReport:
    """Per-sample scalar results (bits) and absolute residuals of the identities."""

    J_AE: float = float("nan")
    S_A: float = float("nan")
    Ef_AB: float = float("nan")
    Ef_AE: float = float("nan")
    D_AE: float = float("nan")
    D_AB: float = float("nan")
    cond_S_AE: float = float("nan")
    residual_kw: float = float("nan")
    residual_e4: float = float("nan")
    residual_conservation: float = float("nan")
    seed: Optional[int] = None
    dims: tuple = (2, 2, 2)


def _check_three_qubits(psi: PureState):
    if tuple(psi.dims) != (2, 2, 2):
        raise ValueError(f"three-qubit pure state required, got dims {psi.dims}")


def _marginals(psi: PureState):
    rho = psi.density()
    return (
        partial_trace(rho, (0,)),
        partial_trace(rho, (0, 1)),
        partial_trace(rho, (0, 2)),
    )


def _classical_with_retry(rho_ae, residual_of, config):
    """Projective optimization first; 3-outcome POVM when the residual is large."""
    j = classical_correlations(rho_ae, measured="B", config=config)
    if residual_of(j.bits) > POVM_RETRY_RESIDUAL:
        j3 = classical_correlations(rho_ae, measured="B", config=config, n_outcomes=3)
        if j3.bits > j.bits:
            j = j3
    return j


def kw_balance(psi: PureState, config: Optional[OptimizerConfig] = None, seed=None) -> KwReport:
    """Residual of J(A:E) = S(rho_A) - E_f(rho_AB) for a tripartite pure state."""
    _check_three_qubits(psi)
    rho_a, rho_ab, rho_ae = _marginals(psi)
    s_a = ent.von_neumann(rho_a)
    ef_ab = eof_two_qubits(rho_ab).bits
    target = s_a - ef_ab
    j = _classical_with_retry(rho_ae, lambda b: abs(b - target), config)
    return KwReport(
        J_AE=j.bits, S_A=s_a, Ef_AB=ef_ab,
        residual_kw=abs(j.bits - target), seed=seed,
    )


def discord_eof_relation(
    psi: PureState, config: Optional[OptimizerConfig] = None, seed=None
) -> KwReport:
    """Residual of D(A:E) = E_f(rho_AB) - S(A|E), discord measured on E."""
    _check_three_qubits(psi)
    _, rho_ab, rho_ae = _marginals(psi)
    ef_ab = eof_two_qubits(rho_ab).bits
    cond = ent.conditional_entropy(rho_ae, (0,))
    target = ef_ab - cond
    total = ent.mutual_information(rho_ae, (0,))
    j = _classical_with_retry(rho_ae, lambda b: abs((total - b) - target), config)
    d_ae = max(total - j.bits, 0.0)
    return KwReport(
        D_AE=d_ae, Ef_AB=ef_ab, cond_S_AE=cond,
        residual_e4=abs(d_ae - target), seed=seed,
    )


def conservation_law(
    psi: PureState, config: Optional[OptimizerConfig] = None, seed=None
) -> KwReport:
    """Residual of D(A:E) + D(A:B) = E_f(rho_AE) + E_f(rho_AB)."""
    _check_three_qubits(psi)
    _, rho_ab, rho_ae = _marginals(psi)
    ef_ab = eof_two_qubits(rho_ab).bits
    ef_ae = eof_two_qubits(rho_ae).bits

    def measured_discord(rho, ef_other, cond):
        total = ent.mutual_information(rho, (0,))
        target = ef_other - cond
        j = _classical_with_retry(rho, lambda b: abs((total - b) - target), config)
        return max(total - j.bits, 0.0)

    d_ae = measured_discord(rho_ae, ef_ab, ent.conditional_entropy(rho_ae, (0,)))
    d_ab = measured_discord(rho_ab, ef_ae, ent.conditional_entropy(rho_ab, (0,)))
    residual = abs(d_ae + d_ab - ef_ae - ef_ab)
    return KwReport(
        D_AE=d_ae, D_AB=d_ab, Ef_AB=ef_ab, Ef_AE=ef_ae,
        residual_conservation=residual, seed=seed,
    )


def monogamy_check(rho: DensityMatrix, config: Optional[OptimizerConfig] = None) -> float:
    """Signed slack of E_f(AB) + J(A:C) <= S(rho_A) for a tripartite state (AB qubits)."""
    if len(rho.dims) != 3 or rho.dims[0] != 2 or rho.dims[1] != 2:
        raise ValueError(f"tripartite state with qubit A and B required, got dims {rho.dims}")
    s_a = ent.von_neumann(partial_trace(rho, (0,)))
    ef_ab = eof_two_qubits(partial_trace(rho, (0, 1))).bits
    j_ac = classical_correlations(partial_trace(rho, (0, 2)), measured="B", config=config).bits
    return s_a - ef_ab - j_ac


def full_report(psi: PureState, config: Optional[OptimizerConfig] = None, seed=None) -> KwReport:
    """All three identities on one sample, merged into a single report."""
    kw = kw_balance(psi, config, seed)
    e4 = discord_eof_relation(psi, config, seed)
    cons = conservation_law(psi, config, seed)
    return KwReport(
        J_AE=kw.J_AE, S_A=kw.S_A, Ef_AB=kw.Ef_AB, Ef_AE=cons.Ef_AE,
        D_AE=e4.D_AE, D_AB=cons.D_AB, cond_S_AE=e4.cond_S_AE,
        residual_kw=kw.residual_kw, residual_e4=e4.residual_e4,
        residual_conservation=cons.residual_conservation, seed=seed,
    )


def kw_suite(samples: int, seed: int, config: Optional[OptimizerConfig] = None) -> list:
    """Verify all identities on seeded random three-qubit pure states."""
    source = RandomSource(seed)
    reports = []
    for k in range(samples):
        psi = random_pure((2, 2, 2), source.split())
        reports.append(full_report(psi, config, seed=k))
    return reports


def reports_to_csv(reports, path):
    fields = list(asdict(reports[0]).keys())
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for r in reports:
            writer.writerow(asdict(r))


def summarize(reports) -> dict:
    def stats(name):
        vals = np.array([getattr(r, name) for r in reports])
        vals = vals[~np.isnan(vals)]
        if vals.size == 0:
            return {}
        return {
            "max": float(vals.max()),
            "mean": float(vals.mean()),
            "median": float(np.median(vals)),
        }

    return {
        "samples": len(reports),
        "residual_kw": stats("residual_kw"),
        "residual_e4": stats("residual_e4"),
        "residual_conservation": stats("residual_conservation"),
    }
