"""State types and linear algebra over tensor-product Hilbert spaces.

Conventions used throughout the package:

* subsystem ordering is row-major: the leftmost factor is the slowest index,
  matching ``numpy.kron``;
* all states are validated on construction and immutable afterwards;
* eigenvalues in ``[-1e-10, 0)`` are treated as numerical noise and clipped
  to zero, anything more negative is rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
NORM_TOL = 1e-12
PURIFY_RANK_TOL = 1e-12


class InvalidStateError(ValueError):
    """Raised when a matrix or vector violates a state invariant."""


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RandomSource):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


class RandomSource:
    """Seeded random stream with deterministic splitting.

    The same seed always reproduces the same sequence of generated states.
    ``split`` hands out an independent child stream per call; the k-th child
    of a given seed is always the same stream, so per-task splitting is
    schedule-independent.
    """

    def __init__(self, seed: int, _spawn_key: tuple = ()):
        self.seed = int(seed)
        self._spawn_key = tuple(_spawn_key)
        self._counter = 0
        self.generator = np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=self._spawn_key)
        )

    def split(self) -> "RandomSource":
        child = RandomSource(self.seed, self._spawn_key + (self._counter,))
        self._counter += 1
        return child

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, spawn_key={self._spawn_key})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix with a subsystem signature."""

    dims: tuple
    data: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise InvalidStateError(f"invalid subsystem dimensions {dims!r}")
        n = int(np.prod(dims))
        data = np.array(self.data, dtype=np.complex128)
        if data.shape != (n, n):
            raise InvalidStateError(
                f"matrix shape {data.shape} does not match dims {dims} (side {n})"
            )
        herm = np.max(np.abs(data - data.conj().T))
        if herm > HERMITICITY_TOL:
            raise InvalidStateError(f"not hermitian: max |rho_ij - conj(rho_ji)| = {herm:.3e}")
        tr = abs(data.trace() - 1.0)
        if tr > TRACE_TOL:
            raise InvalidStateError(f"trace not one: |Tr(rho) - 1| = {tr:.3e}")
        lo = float(np.linalg.eigvalsh(data)[0])
        if lo < -PSD_TOL:
            raise InvalidStateError(f"not positive semidefinite: min eigenvalue = {lo:.3e}")
        data.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", data)

    @property
    def side(self) -> int:
        return self.data.shape[0]

    def eigvals(self) -> np.ndarray:
        """Ascending eigenvalues with sub-tolerance negatives clipped to zero."""
        return clipped_eigvals(self.data)

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm complex vector with a subsystem signature."""

    dims: tuple
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise InvalidStateError(f"invalid subsystem dimensions {dims!r}")
        n = int(np.prod(dims))
        amps = np.array(self.amps, dtype=np.complex128).ravel()
        if amps.shape != (n,):
            raise InvalidStateError(
                f"vector length {amps.shape[0]} does not match dims {dims} (length {n})"
            )
        nrm = abs(np.linalg.norm(amps) - 1.0)
        if nrm > NORM_TOL:
            raise InvalidStateError(f"not normalized: | ||psi|| - 1 | = {nrm:.3e}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.dims, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Bipartite Schmidt data: nonincreasing coefficients and orthonormal vector lists."""

    coefficients: np.ndarray
    left_vectors: np.ndarray  # columns
    right_vectors: np.ndarray  # columns

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if abs(np.sum(c**2) - 1.0) > 1e-10:
            raise InvalidStateError(f"Schmidt weights sum to {np.sum(c**2):.12f}, not 1")
        if np.any(np.diff(c) > 1e-12):
            raise InvalidStateError("Schmidt coefficients not sorted nonincreasing")
        for side, v in (("left", self.left_vectors), ("right", self.right_vectors)):
            gram = v.conj().T @ v
            err = np.max(np.abs(gram - np.eye(gram.shape[0])))
            if err > 1e-10:
                raise InvalidStateError(f"{side} Schmidt vectors not orthonormal ({err:.3e})")


def clipped_eigvals(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, with noise in [-1e-10, 0) clipped to zero.

    Values below -1e-10 indicate a genuinely invalid operand and raise.
    """
    vals = np.linalg.eigvalsh(matrix)
    if vals[0] < -PSD_TOL:
        raise InvalidStateError(f"eigenvalue {vals[0]:.3e} below clipping threshold")
    return np.clip(vals, 0.0, None)


def tensor(a, b):
    """Kronecker composition of two states of the same kind."""
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.dims + b.dims, np.kron(a.data, b.data))
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(a.dims + b.dims, np.kron(a.amps, b.amps))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def _check_keep(dims: Sequence[int], keep: Iterable[int]) -> tuple:
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must be a nonempty set of subsystem indices")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate subsystem indices in {keep}")
    for k in keep:
        if not (0 <= k < len(dims)):
            raise ValueError(f"subsystem index {k} out of range for dims {tuple(dims)}")
    return tuple(sorted(keep))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep`` (original order preserved)."""
    keep = _check_keep(rho.dims, keep)
    reduced = partial_trace_data(rho.data, rho.dims, keep)
    new_dims = tuple(rho.dims[k] for k in keep)
    return DensityMatrix(new_dims, reduced)


def partial_trace_data(data: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace on a raw matrix; no invariant checks on the result."""
    dims = tuple(dims)
    n = len(dims)
    t = data.reshape(dims + dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out = [i for i in keep] + [i + n for i in keep]
    reduced = np.einsum(t, row + col, out)
    side = int(np.prod([dims[k] for k in keep]))
    return reduced.reshape(side, side)


def permute_subsystems(state, order: Sequence[int]):
    """Reorder subsystems of a state; ``order[i]`` is the old index placed at slot ``i``."""
    order = tuple(order)
    dims = state.dims
    if sorted(order) != list(range(len(dims))):
        raise ValueError(f"{order} is not a permutation of {tuple(range(len(dims)))}")
    new_dims = tuple(dims[o] for o in order)
    if isinstance(state, PureState):
        amps = state.amps.reshape(dims).transpose(order).ravel()
        return PureState(new_dims, amps)
    n = len(dims)
    t = state.data.reshape(dims + dims)
    perm = list(order) + [o + n for o in order]
    side = state.side
    return DensityMatrix(new_dims, t.transpose(perm).reshape(side, side))


def purify(rho: DensityMatrix) -> PureState:
    """Purification on ``dims + (rank,)``: sum_k sqrt(l_k) |k> |k_E>.

    Eigenbranches below 1e-12 are dropped, so the environment dimension equals
    the numerical rank. Tracing the environment back out recovers ``rho``.
    """
    vals, vecs = np.linalg.eigh(rho.data)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    mask = vals > PURIFY_RANK_TOL
    vals, vecs = vals[mask], vecs[:, mask]
    rank = vals.size
    amps = (vecs * np.sqrt(vals)).ravel()  # amps[i * rank + k] = sqrt(l_k) v_k[i]
    amps = amps / np.linalg.norm(amps)
    return PureState(rho.dims + (rank,), amps)


def schmidt(psi: PureState, cut: Iterable[int]) -> SchmidtDecomposition:
    """Schmidt decomposition across the bipartition (``cut`` | rest)."""
    cut = _check_keep(psi.dims, cut)
    rest = tuple(i for i in range(len(psi.dims)) if i not in cut)
    if not rest:
        raise ValueError("cut must leave at least one subsystem on each side")
    perm = cut + rest
    d_left = int(np.prod([psi.dims[i] for i in cut]))
    d_right = int(np.prod([psi.dims[i] for i in rest]))
    mat = psi.amps.reshape(psi.dims).transpose(perm).reshape(d_left, d_right)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    # right vectors are the rows of vh, so sum_n c_n |n_L>|n_R> rebuilds psi
    return SchmidtDecomposition(s, u, vh.T)


def random_pure(dims: Sequence[int], rng) -> PureState:
    """Haar-random pure state: normalized standard complex Gaussian vector."""
    g = _as_generator(rng)
    n = int(np.prod(dims))
    v = g.standard_normal(n) + 1j * g.standard_normal(n)
    return PureState(tuple(dims), v / np.linalg.norm(v))


def random_density(dims: Sequence[int], rank: int, rng) -> DensityMatrix:
    """Induced-measure random density: environment trace of a Haar pure state."""
    n = int(np.prod(dims))
    if not (1 <= rank <= n):
        raise ValueError(f"rank must be in 1..{n}, got {rank}")
    psi = random_pure(tuple(dims) + (rank,), rng)
    return partial_trace(psi.density(), range(len(dims)))


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix with phase fixing."""
    g = _as_generator(rng)
    z = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


# ---------------------------------------------------------------------------
# JSON state format
#
#   density matrix: {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
#   pure state:     {"dims": [2, 2], "vector": [[re, im], ...]}
# ---------------------------------------------------------------------------


def _complex_out(arr: np.ndarray):
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def _complex_in(nested) -> np.ndarray:
    arr = np.asarray(nested, dtype=float)
    if arr.shape[-1] != 2:
        raise InvalidStateError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(state) -> dict:
    if isinstance(state, DensityMatrix):
        return {"dims": list(state.dims), "matrix": _complex_out(state.data)}
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "vector": _complex_out(state.amps)}
    raise TypeError(f"cannot serialize {type(state).__name__}")


def state_from_json(payload: dict):
    """Parse the JSON state format, rejecting invariant violations with a diagnostic."""
    if "dims" not in payload:
        raise InvalidStateError("state JSON missing 'dims'")
    dims = payload["dims"]
    if "matrix" in payload:
        return DensityMatrix(dims, _complex_in(payload["matrix"]))
    if "vector" in payload:
        return PureState(dims, _complex_in(payload["vector"]))
    raise InvalidStateError("state JSON needs either 'matrix' or 'vector'")


def load_state(path):
    with open(path) as fh:
        return state_from_json(json.load(fh))


def save_state(state, path):
    with open(path, "w") as fh:
        json.dump(state_to_json(state), fh)
