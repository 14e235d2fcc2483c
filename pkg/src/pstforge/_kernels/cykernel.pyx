# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the zero-diagonal tridiagonal eigensolver.

Same contracts as pykernel; scalar loops over C doubles.
"""

from libc.math cimport fabs, sqrt, isfinite
from libc.stdlib cimport malloc, free

import numpy as np

cdef double EPS = 2.220446049250313e-16
cdef double SAFMIN = 2.2250738585072014e-308
# growth control for the nearly singular solves of inverse iteration
cdef double BIG = 1e250
cdef double SCALE_DOWN = 1e-100


cdef inline double _pivmin(double bsq_max) nogil:
    return SAFMIN * (bsq_max if bsq_max > 1.0 else 1.0)


cdef inline int _count(const double* bsq, int m, double x, double pivmin) nogil:
    # negative pivots of d_1 = -x, d_i = -x - bsq[i-1]/d_{i-1}
    cdef double d = -x
    cdef int count = 0
    cdef int i
    if fabs(d) < pivmin:
        d = -pivmin
    if d < 0:
        count += 1
    for i in range(m):
        d = -x - bsq[i] / d
        if fabs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def sturm_count(b, double x):
    """Number of eigenvalues below x (boundary hits count as below)."""
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef int m = bv.shape[0]
    cdef double bsq_max = 1.0
    cdef double* bsq = <double*> malloc(m * sizeof(double))
    cdef int i
    cdef int result
    if bsq == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            bsq[i] = bv[i] * bv[i]
            if bsq[i] > bsq_max:
                bsq_max = bsq[i]
        result = _count(bsq, m, x, _pivmin(bsq_max))
    finally:
        free(bsq)
    return result


def bisect_eigenvalues(b, int max_steps):
    """All eigenvalues, ascending, by Sturm-count bisection."""
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef int m = bv.shape[0]
    cdef int n = m + 1
    vals = np.empty(n, dtype=np.float64)
    cdef double[::1] out = vals
    cdef double* bsq = <double*> malloc(m * sizeof(double))
    if bsq == NULL:
        raise MemoryError()
    cdef double bsq_max = 1.0, bound = 0.0, row
    cdef double pivmin, atol, lo, hi, mid, tol, alo, ahi
    cdef int i, k, step
    cdef bint converged
    cdef bint failed = False
    try:
        with nogil:
            for i in range(m):
                bsq[i] = bv[i] * bv[i]
                if bsq[i] > bsq_max:
                    bsq_max = bsq[i]
            for i in range(n):
                row = 0.0
                if i > 0:
                    row += fabs(bv[i - 1])
                if i < m:
                    row += fabs(bv[i])
                if row > bound:
                    bound = row
            pivmin = _pivmin(bsq_max)
            bound = bound * (1.0 + 4.0 * EPS) + pivmin
            # width target floored at the absolute eps*||H|| scale
            atol = 2.0 * EPS * bound
            for k in range(n):
                lo = -bound
                hi = bound
                converged = False
                for step in range(max_steps):
                    alo = fabs(lo)
                    ahi = fabs(hi)
                    tol = 2.0 * EPS * (alo if alo > ahi else ahi) + atol
                    if hi - lo <= tol:
                        converged = True
                        break
                    mid = 0.5 * (lo + hi)
                    if _count(bsq, m, mid, pivmin) > k:
                        hi = mid
                    else:
                        lo = mid
                if not converged:
                    alo = fabs(lo)
                    ahi = fabs(hi)
                    tol = 2.0 * EPS * (alo if alo > ahi else ahi) + atol
                    if hi - lo > tol:
                        failed = True
                        break
                out[k] = 0.5 * (lo + hi)
    finally:
        free(bsq)
    if failed:
        raise RuntimeError("eigenvalue bisection exhausted its step budget")
    return vals


def inverse_iteration(b, double lam, v0, int sweeps):
    """Eigenvector estimate by repeated shifted solves from a start vector."""
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[::1] v0v = np.ascontiguousarray(v0, dtype=np.float64)
    cdef int m = bv.shape[0]
    cdef int n = m + 1
    result = np.array(v0v, dtype=np.float64, copy=True)
    cdef double[::1] v = result
    # factorization workspace: diag, first/second superdiag, multipliers
    cdef double* d = <double*> malloc(n * sizeof(double))
    cdef double* cu = <double*> malloc(n * sizeof(double))
    cdef double* c2 = <double*> malloc(n * sizeof(double))
    cdef double* mult = <double*> malloc(n * sizeof(double))
    cdef char* swap = <char*> malloc(n * sizeof(char))
    cdef double* w = <double*> malloc(n * sizeof(double))
    if d == NULL or cu == NULL or c2 == NULL or mult == NULL or swap == NULL or w == NULL:
        free(d); free(cu); free(c2); free(mult); free(swap); free(w)
        raise MemoryError()
    cdef double bsq_max = 1.0, pivmin, mm, tmp, norm
    cdef int i, j, s
    try:
        with nogil:
            for i in range(m):
                tmp = bv[i] * bv[i]
                if tmp > bsq_max:
                    bsq_max = tmp
            pivmin = _pivmin(bsq_max)
            for i in range(n):
                d[i] = -lam
                c2[i] = 0.0
                mult[i] = 0.0
                swap[i] = 0
            for i in range(m):
                cu[i] = bv[i]
            for i in range(m):
                if fabs(d[i]) >= fabs(bv[i]):
                    if fabs(d[i]) < pivmin:
                        d[i] = -pivmin if d[i] < 0 else pivmin
                    mm = bv[i] / d[i]
                    d[i + 1] -= mm * cu[i]
                    mult[i] = mm
                else:
                    mm = d[i] / bv[i]
                    d[i] = bv[i]
                    tmp = d[i + 1]
                    d[i + 1] = cu[i] - mm * tmp
                    if i < n - 2:
                        c2[i] = cu[i + 1]
                        cu[i + 1] = -mm * cu[i + 1]
                    cu[i] = tmp
                    mult[i] = mm
                    swap[i] = 1
            if fabs(d[n - 1]) < pivmin:
                d[n - 1] = -pivmin if d[n - 1] < 0 else pivmin
            for s in range(sweeps if sweeps > 1 else 1):
                for i in range(n):
                    w[i] = v[i]
                for i in range(n - 1):
                    if swap[i]:
                        tmp = w[i]
                        w[i] = w[i + 1]
                        w[i + 1] = tmp - mult[i] * w[i + 1]
                    else:
                        w[i + 1] -= mult[i] * w[i]
                # back substitution with growth control: rescaling the
                # computed suffix and the pending rhs preserves direction
                w[n - 1] = w[n - 1] / d[n - 1]
                if fabs(w[n - 1]) > BIG:
                    for i in range(n):
                        w[i] *= SCALE_DOWN
                if n >= 2:
                    w[n - 2] = (w[n - 2] - cu[n - 2] * w[n - 1]) / d[n - 2]
                    if fabs(w[n - 2]) > BIG:
                        for i in range(n):
                            w[i] *= SCALE_DOWN
                for i in range(n - 3, -1, -1):
                    w[i] = (w[i] - cu[i] * w[i + 1] - c2[i] * w[i + 2]) / d[i]
                    if fabs(w[i]) > BIG:
                        for j in range(n):
                            w[j] *= SCALE_DOWN
                norm = 0.0
                for i in range(n):
                    if fabs(w[i]) > norm:
                        norm = fabs(w[i])
                if norm == 0.0 or not isfinite(norm):
                    for i in range(n):
                        w[i] = 0.0
                    w[0] = 1.0
                    norm = 1.0
                for i in range(n):
                    w[i] = w[i] / norm
                norm = 0.0
                for i in range(n):
                    norm += w[i] * w[i]
                norm = sqrt(norm)
                for i in range(n):
                    v[i] = w[i] / norm
    finally:
        free(d); free(cu); free(c2); free(mult); free(swap); free(w)
    return result
