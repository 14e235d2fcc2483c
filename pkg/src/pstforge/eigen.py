"""Floating eigensolver for zero-diagonal tridiagonal operators, plus dynamics.

Eigenvalues come from bisection on Sturm sign counts, eigenvectors from
inverse iteration, with Gram-Schmidt re-orthogonalization inside clusters
of nearly equal eigenvalues.  This is deliberately self-contained: the
clustered spectra produced by the random generators are handled without
any external linear-algebra dependency, and the output is deterministic
for identical input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceFailure, InvalidParam

RESIDUAL_REL_TOL = 1e-11
CLUSTER_REL_GAP = 1e-8
STEPS_PER_VALUE = 100


@dataclass(frozen=True)
class EigenSystem:
    """All eigenpairs of one operator: values ascending, vectors as columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def n_sites(self) -> int:
        return int(self.values.size)


def _tridiag_matvec(b: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    if v.ndim == 1:
        out[:-1] += b * v[1:]
        out[1:] += b * v[:-1]
    else:
        out[:-1] += b[:, None] * v[1:]
        out[1:] += b[:, None] * v[:-1]
    return out


def _start_vector(n: int, attempt: int, k: int) -> np.ndarray:
    if attempt == 0:
        return np.full(n, 1.0 / np.sqrt(n))
    v = np.zeros(n)
    v[(k + attempt - 1) % n] = 1.0
    return v


def eig_sym_tridiag(offdiag, n: int, max_steps_per_value: int | None = None) -> EigenSystem:
    """All eigenpairs of the N-site zero-diagonal chain with couplings ``offdiag``.

    Residual guarantee: ||H v_k - lambda_k v_k|| <= 1e-11 * ||H|| for every
    pair, else ConvergenceFailure.  Output is deterministic for identical
    input (fixed start vectors, fixed sign convention).
    """
    if n < 2:
        raise InvalidParam(f"need n >= 2, got {n}")
    b = np.asarray(offdiag, dtype=np.float64)
    if b.shape != (n - 1,):
        raise InvalidParam(f"expected {n - 1} couplings, got shape {b.shape}")
    if not np.all(np.isfinite(b)) or not np.all(b > 0):
        raise InvalidParam("couplings must be finite and positive")

    budget = max_steps_per_value if max_steps_per_value is not None else STEPS_PER_VALUE * n
    try:
        values = _kernels.bisect_eigenvalues(b, budget)
    except RuntimeError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    norm_h = max(abs(float(values[0])), abs(float(values[-1])), np.finfo(np.float64).tiny)

    vectors = np.empty((n, n))
    cluster_start = 0
    for k in range(n):
        v = _kernels.inverse_iteration(b, float(values[k]), _start_vector(n, 0, k), 3)
        if k > 0 and values[k] - values[k - 1] < CLUSTER_REL_GAP * norm_h:
            # same cluster as k-1: orthogonalize against the cluster so far
            v = _orthogonalize_in_cluster(b, values, vectors, cluster_start, k, v)
        else:
            cluster_start = k
        vectors[:, k] = v

    _polish_orthonormality(vectors)
    _fix_signs(vectors)

    residuals = _residual_norms(b, values, vectors)
    bad = np.nonzero(residuals > RESIDUAL_REL_TOL * norm_h)[0]
    for k in bad:
        for attempt in range(1, 4):
            v = _kernels.inverse_iteration(
                b, float(values[k]), _start_vector(n, attempt, int(k)), 6
            )
            r = np.linalg.norm(_tridiag_matvec(b, v) - values[k] * v)
            if r <= RESIDUAL_REL_TOL * norm_h:
                vectors[:, k] = v
                break
    if bad.size:
        _polish_orthonormality(vectors)
        _fix_signs(vectors)
        residuals = _residual_norms(b, values, vectors)
        if np.any(residuals > RESIDUAL_REL_TOL * norm_h):
            raise ConvergenceFailure(
                f"eigenvector residuals above {RESIDUAL_REL_TOL:g}*||H||"
            )
    return EigenSystem(values=values, vectors=vectors)


def _orthogonalize_in_cluster(b, values, vectors, start, k, v):
    for sweep in range(2):
        for j in range(start, k):
            v = v - vectors[:, j] * float(vectors[:, j] @ v)
        norm = float(np.linalg.norm(v))
        if norm > 1e-3:
            return v / norm
        # direction exhausted: re-run iteration from a fresh deterministic start
        v = _kernels.inverse_iteration(b, float(values[k]), _start_vector(len(v), sweep + 1, k), 4)
    norm = float(np.linalg.norm(v))
    return v / norm


def _polish_orthonormality(vectors: np.ndarray) -> None:
    # one modified Gram-Schmidt pass; overlaps are already tiny, this just
    # pins the mutual orthogonality to machine precision for unitarity
    n = vectors.shape[1]
    for k in range(n):
        v = vectors[:, k]
        if k:
            v = v - vectors[:, :k] @ (vectors[:, :k].T @ v)
        vectors[:, k] = v / np.linalg.norm(v)


def _fix_signs(vectors: np.ndarray) -> None:
    idx = np.argmax(np.abs(vectors), axis=0)
    flip = vectors[idx, np.arange(vectors.shape[1])] < 0
    vectors[:, flip] *= -1.0


def _residual_norms(b, values, vectors) -> np.ndarray:
    r = _tridiag_matvec(b, vectors) - vectors * values[None, :]
    return np.linalg.norm(r, axis=0)


def evolve_excitation(eig: EigenSystem, source_site: int, t: float) -> np.ndarray:
    """Amplitudes a_m(t) = sum_k exp(-i lambda_k t) v_k(m) v_k(source).

    The returned complex vector has unit 2-norm (free evolution is unitary).
    """
    n = eig.n_sites
    if not 1 <= source_site <= n:
        raise InvalidParam(f"source site must be in 1..{n}, got {source_site}")
    phases = np.exp(-1j * eig.values * t)
    return eig.vectors @ (phases * eig.vectors[source_site - 1, :])


def propagator(eig: EigenSystem, t: float) -> np.ndarray:
    """Full evolution matrix exp(-iHt) in the site basis."""
    phases = np.exp(-1j * eig.values * t)
    return (eig.vectors * phases) @ eig.vectors.T
