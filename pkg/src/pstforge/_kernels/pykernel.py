"""Pure-Python kernels for the zero-diagonal tridiagonal eigensolver.

Drop-in fallback for the compiled extension module; identical signatures.
Bisection is vectorized with numpy across eigenvalue indices, the
triangular solves of inverse iteration run as plain scalar loops.
"""

from __future__ import annotations

import math

import numpy as np

EPS = float(np.finfo(np.float64).eps)
SAFMIN = float(np.finfo(np.float64).tiny)

# growth control for the nearly singular solves of inverse iteration
BIG = 1e250
SCALE_DOWN = 1e-100


def _pivmin(bsq_max: float) -> float:
    # smallest pivot magnitude we allow before clamping, LAPACK-style
    return SAFMIN * max(1.0, bsq_max)


def sturm_count(b, x: float) -> int:
    """Number of eigenvalues below x (boundary hits count as below).

    Counts negative pivots of the shifted LDL^T recurrence
    d_1 = -x, d_i = -x - b_{i-1}^2 / d_{i-1}.
    """
    b = np.asarray(b, dtype=np.float64)
    bsq = b * b
    pivmin = _pivmin(float(bsq.max()) if bsq.size else 1.0)
    d = -x
    if abs(d) < pivmin:
        d = -pivmin
    count = 1 if d < 0 else 0
    for i in range(bsq.size):
        d = -x - bsq[i] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def _counts_at(bsq: np.ndarray, xs: np.ndarray, pivmin: float) -> np.ndarray:
    d = -xs.copy()
    np.copyto(d, -pivmin, where=np.abs(d) < pivmin)
    counts = (d < 0).astype(np.int64)
    for i in range(bsq.size):
        d = -xs - bsq[i] / d
        np.copyto(d, -pivmin, where=np.abs(d) < pivmin)
        counts += d < 0
    return counts


def bisect_eigenvalues(b, max_steps: int) -> np.ndarray:
    """All eigenvalues, ascending, by Sturm-count bisection.

    ``max_steps`` bounds the number of bisection sweeps (one sweep refines
    every still-active eigenvalue interval once).  Raises RuntimeError if
    any interval is still wider than its floating-point resolution limit
    when the budget runs out.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.size + 1
    bsq = b * b
    pivmin = _pivmin(float(bsq.max()) if bsq.size else 1.0)
    babs = np.abs(b)
    radius = np.zeros(n)
    radius[:-1] += babs
    radius[1:] += babs
    bound = float(radius.max()) * (1.0 + 4.0 * EPS) + pivmin
    # eigenvalues of a symmetric operator carry absolute error eps*||H||,
    # so the interval-width target is floored at that scale
    atol = 2.0 * EPS * bound
    lo = np.full(n, -bound)
    hi = np.full(n, bound)
    k = np.arange(n)
    for _ in range(max_steps):
        tol = 2.0 * EPS * np.maximum(np.abs(lo), np.abs(hi)) + atol
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        counts = _counts_at(bsq, mid, pivmin)
        go_left = counts > k
        hi = np.where(go_left, mid, hi)
        lo = np.where(go_left, lo, mid)
    else:
        tol = 2.0 * EPS * np.maximum(np.abs(lo), np.abs(hi)) + atol
        if np.any(hi - lo > tol):
            raise RuntimeError("eigenvalue bisection exhausted its step budget")
    return 0.5 * (lo + hi)


def _factor_shifted(b: list, lam: float, pivmin: float):
    """LU factorization with partial pivoting of (H - lam*I), H tridiagonal."""
    n = len(b) + 1
    d = [-lam] * n
    cu = list(b)
    c2 = [0.0] * max(n - 2, 0)
    mult = [0.0] * (n - 1)
    swap = [False] * (n - 1)
    for i in range(n - 1):
        sub = b[i]
        if abs(d[i]) >= abs(sub):
            if abs(d[i]) < pivmin:
                d[i] = -pivmin if d[i] < 0 else pivmin
            m = sub / d[i]
            d[i + 1] -= m * cu[i]
            mult[i] = m
        else:
            m = d[i] / sub
            d[i] = sub
            tmp = d[i + 1]
            d[i + 1] = cu[i] - m * tmp
            if i < n - 2:
                c2[i] = cu[i + 1]
                cu[i + 1] = -m * cu[i + 1]
            cu[i] = tmp
            mult[i] = m
            swap[i] = True
    if abs(d[n - 1]) < pivmin:
        d[n - 1] = -pivmin if d[n - 1] < 0 else pivmin
    return d, cu, c2, mult, swap


def _solve_factored(factors, rhs: list) -> list:
    # back substitution rescales whenever an entry passes BIG; the solve is
    # only used up to scale, so uniform rescaling of the computed suffix
    # and the pending right-hand side preserves the direction exactly
    d, cu, c2, mult, swap = factors
    n = len(d)
    v = list(rhs)
    for i in range(n - 1):
        if swap[i]:
            v[i], v[i + 1] = v[i + 1], v[i] - mult[i] * v[i + 1]
        else:
            v[i + 1] -= mult[i] * v[i]
    x = [0.0] * n

    def rescale(i: int) -> None:
        for j in range(i, n):
            x[j] *= SCALE_DOWN
        for j in range(i):
            v[j] *= SCALE_DOWN

    x[n - 1] = v[n - 1] / d[n - 1]
    if abs(x[n - 1]) > BIG:
        rescale(n - 1)
    if n >= 2:
        x[n - 2] = (v[n - 2] - cu[n - 2] * x[n - 1]) / d[n - 2]
        if abs(x[n - 2]) > BIG:
            rescale(n - 2)
    for i in range(n - 3, -1, -1):
        x[i] = (v[i] - cu[i] * x[i + 1] - c2[i] * x[i + 2]) / d[i]
        if abs(x[i]) > BIG:
            rescale(i)
    return x


def inverse_iteration(b, lam: float, v0, sweeps: int) -> np.ndarray:
    """Eigenvector estimate by repeated shifted solves from a start vector."""
    b = [float(x) for x in b]
    n = len(b) + 1
    bsq_max = max((x * x for x in b), default=1.0)
    factors = _factor_shifted(b, lam, _pivmin(bsq_max))
    v = [float(x) for x in v0]
    for _ in range(max(sweeps, 1)):
        w = _solve_factored(factors, v)
        peak = max(abs(x) for x in w)
        if peak == 0.0 or not math.isfinite(peak):
            # collapse: restart from a unit vector
            w = [0.0] * n
            w[0] = 1.0
            peak = 1.0
        w = [x / peak for x in w]
        norm = math.sqrt(math.fsum(x * x for x in w))
        v = [x / norm for x in w]
    return np.asarray(v, dtype=np.float64)
