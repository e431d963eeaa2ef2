"""Measurement maps: POVMs, projective bases, dephasing, Naimark embedding."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .states import DensityMatrix, InvalidStateError, clipped_eigvals

POVM_TOL = 1e-10


class UnsupportedInputError(ValueError):
    """Raised for inputs outside the implemented measurement class."""


@dataclass(frozen=True, eq=False)
class Povm:
    """PSD elements on a subsystem of dimension ``dim`` resolving the identity."""

    dim: int
    elements: tuple

    def __post_init__(self):
        elems = tuple(np.array(e, dtype=np.complex128) for e in self.elements)
        if not elems:
            raise InvalidStateError("POVM needs at least one element")
        total = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for i, e in enumerate(elems):
            if e.shape != (self.dim, self.dim):
                raise InvalidStateError(f"element {i} shape {e.shape} != ({self.dim},{self.dim})")
            herm = np.max(np.abs(e - e.conj().T))
            if herm > POVM_TOL:
                raise InvalidStateError(f"element {i} not hermitian ({herm:.3e})")
            lo = float(np.linalg.eigvalsh(e)[0])
            if lo < -POVM_TOL:
                raise InvalidStateError(f"element {i} not PSD (min eigenvalue {lo:.3e})")
            e.setflags(write=False)
            total += e
        err = np.max(np.abs(total - np.eye(self.dim)))
        if err > POVM_TOL:
            raise InvalidStateError(f"elements do not sum to identity ({err:.3e})")
        object.__setattr__(self, "elements", elems)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """Orthonormal basis {|e_x>}; as a POVM its elements are rank-1 projectors."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(np.array(v, dtype=np.complex128).ravel() for v in self.vectors)
        d = vecs[0].size
        if len(vecs) != d:
            raise InvalidStateError(f"{len(vecs)} vectors cannot span dimension {d}")
        mat = np.column_stack(vecs)
        gram = mat.conj().T @ mat
        err = np.max(np.abs(gram - np.eye(d)))
        if err > POVM_TOL:
            raise InvalidStateError(f"basis not orthonormal (Gram deviation {err:.3e})")
        for v in vecs:
            v.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors[0].size

    @classmethod
    def computational(cls, dim: int) -> "ProjectiveBasis":
        return cls(tuple(np.eye(dim)[:, k] for k in range(dim)))

    @classmethod
    def from_unitary(cls, u: np.ndarray) -> "ProjectiveBasis":
        return cls(tuple(u[:, k] for k in range(u.shape[1])))

    def projectors(self) -> tuple:
        return tuple(np.outer(v, v.conj()) for v in self.vectors)

    def as_povm(self) -> Povm:
        return Povm(self.dim, self.projectors())


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """Outcome probabilities and normalized post-measurement states."""

    probabilities: np.ndarray
    post_states: tuple

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if abs(p.sum() - 1.0) > 1e-10:
            raise InvalidStateError(f"outcome probabilities sum to {p.sum():.12f}")
        object.__setattr__(self, "probabilities", p)


def measure(rho: DensityMatrix, povm: Povm) -> MeasurementOutcome:
    """Probabilities p_x = Tr(M_x rho) and post-states for a full measurement."""
    if povm.dim != rho.side:
        raise ValueError(f"POVM dimension {povm.dim} does not match state side {rho.side}")
    probs, posts = [], []
    for m in povm.elements:
        p = float(np.real(np.trace(m @ rho.data)))
        probs.append(max(p, 0.0))
        if p > 1e-12:
            sq = _psd_sqrt(m)
            post = sq @ rho.data @ sq / p
            posts.append(DensityMatrix(rho.dims, 0.5 * (post + post.conj().T)))
        else:
            posts.append(None)
    return MeasurementOutcome(np.array(probs), tuple(posts))


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def measure_channel(rho: DensityMatrix, povm: Povm) -> DensityMatrix:
    """Measurement as a channel: sum_x Tr(M_x rho) |e_x><e_x| on the outcome register."""
    if povm.dim != rho.side:
        raise ValueError(f"POVM dimension {povm.dim} does not match state side {rho.side}")
    probs = [max(float(np.real(np.trace(m @ rho.data))), 0.0) for m in povm.elements]
    return DensityMatrix((len(probs),), np.diag(np.array(probs, dtype=np.complex128)))


def _embed_projector(proj: np.ndarray, dims: Sequence[int], subsystem: int) -> np.ndarray:
    ops = [np.eye(d, dtype=np.complex128) for d in dims]
    ops[subsystem] = proj
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def dephase(rho: DensityMatrix, basis: ProjectiveBasis, subsystem: int = 0) -> DensityMatrix:
    """Local dephasing: sum_k (Pi_k x I) rho (Pi_k x I) on the named subsystem."""
    if basis.dim != rho.dims[subsystem]:
        raise ValueError(
            f"basis dimension {basis.dim} does not match subsystem {subsystem} "
            f"of dims {rho.dims}"
        )
    out = np.zeros_like(rho.data)
    for proj in basis.projectors():
        full = _embed_projector(proj, rho.dims, subsystem)
        out += full @ rho.data @ full
    return DensityMatrix(rho.dims, 0.5 * (out + out.conj().T))


def local_measure(rho: DensityMatrix, povms: Sequence[Optional[Povm]]) -> DensityMatrix:
    """Local measurement map Phi_1 x ... x Phi_N; ``None`` marks a pass-through side.

    Measured subsystems are replaced by a classical register in the outcome
    basis; unmeasured subsystems keep their quantum state.
    """
    if len(povms) != len(rho.dims):
        raise ValueError(f"need one POVM or None per subsystem ({len(rho.dims)})")
    data = rho.data
    dims = list(rho.dims)
    for idx, povm in enumerate(povms):
        if povm is None:
            continue
        if povm.dim != dims[idx]:
            raise ValueError(
                f"POVM dimension {povm.dim} does not match subsystem {idx} of dims {tuple(dims)}"
            )
        n_out = len(povm)
        left = int(np.prod(dims[:idx])) if idx else 1
        right = int(np.prod(dims[idx + 1 :])) if idx + 1 < len(dims) else 1
        t = data.reshape(left, dims[idx], right, left, dims[idx], right)
        new = np.zeros((left, n_out, right, left, n_out, right), dtype=np.complex128)
        for x, m in enumerate(povm.elements):
            # Tr_subsystem[(I x M_x x I) rho] placed on the diagonal |x><x|
            new[:, x, :, :, x, :] = np.einsum("su,aucbse->acbe", m, t)
        dims[idx] = n_out
        side = int(np.prod(dims))
        data = new.reshape(side, side)
    data = 0.5 * (data + data.conj().T)
    return DensityMatrix(tuple(dims), data)


def naimark_embed(povm: Povm):
    """Embed a rank-1 POVM into a projective measurement on C^n (n outcomes).

    Returns ``(V, basis)`` with ``V`` the n x d isometry padding the input space
    with ``n - d`` zero coordinates, and ``basis`` a projective basis on C^n whose
    first-d-coordinate compressions reproduce the POVM elements:
    Tr(M_x rho) = Tr(Pi_x V rho V^dag).
    """
    d, n = povm.dim, len(povm)
    if n < d:
        raise UnsupportedInputError(f"{n} rank-1 elements cannot resolve identity on C^{d}")
    mus = []
    for i, m in enumerate(povm.elements):
        vals, vecs = np.linalg.eigh(m)
        if n > 1 and np.any(vals[:-1] > 1e-10):
            raise UnsupportedInputError(f"POVM element {i} is not rank-1")
        mus.append(np.sqrt(max(vals[-1], 0.0)) * vecs[:, -1])
    w = np.array([mu.conj() for mu in mus])  # n x d, rows <mu_x|
    gram = w @ w.conj().T
    comp = np.eye(n) - gram  # PSD projection of rank n - d
    vals, vecs = np.linalg.eigh(comp)
    tail_idx = vals > 1e-10
    q = vecs[:, tail_idx] * np.sqrt(vals[tail_idx])  # n x (n - d), Q Q^dag = I - G
    vectors = []
    for x in range(n):
        vec = np.zeros(n, dtype=np.complex128)
        vec[:d] = mus[x]
        vec[d:] = q[x].conj()
        vectors.append(vec)
    isometry = np.zeros((n, d), dtype=np.complex128)
    isometry[:d, :] = np.eye(d)
    return isometry, ProjectiveBasis(tuple(vectors))


# ---------------------------------------------------------------------------
# POVM JSON format: {"dim": 2, "elements": [[[[re, im], ...], ...], ...]}
# ---------------------------------------------------------------------------


def povm_to_json(povm: Povm) -> dict:
    return {
        "dim": povm.dim,
        "elements": [np.stack([e.real, e.imag], axis=-1).tolist() for e in povm.elements],
    }


def povm_from_json(payload: dict) -> Povm:
    if "dim" not in payload or "elements" not in payload:
        raise InvalidStateError("POVM JSON needs 'dim' and 'elements'")
    elems = []
    for nested in payload["elements"]:
        arr = np.asarray(nested, dtype=float)
        if arr.shape[-1] != 2:
            raise InvalidStateError("complex entries must be [re, im] pairs")
        elems.append(arr[..., 0] + 1j * arr[..., 1])
    return Povm(int(payload["dim"]), tuple(elems))


def load_povm(path) -> Povm:
    with open(path) as fh:
        return povm_from_json(json.load(fh))


def save_povm(povm: Povm, path):
    with open(path, "w") as fh:
        json.dump(povm_to_json(povm), fh)
