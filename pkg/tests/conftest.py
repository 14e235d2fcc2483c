"""Shared test oracles, deliberately independent of the library internals.

The exact characteristic-polynomial oracle evaluates det(x*I - H) by
Gaussian elimination on Fraction matrices at N+1 integer points and
recovers the coefficients by Lagrange interpolation; no three-term
recurrence is involved, so it cross-checks the library's recurrence.
"""

from fractions import Fraction

import numpy as np
import pytest


def dense_shifted(jsq, lam: Fraction):
    """(lam*I - H) as a dense list-of-lists Fraction matrix."""
    n = len(jsq) + 1
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = lam
    for i, c in enumerate(jsq):
        # the symmetric matrix has irrational entries sqrt(J^2); a diagonal
        # similarity moves each pair product J^2 onto one side, and a
        # tridiagonal determinant only sees those pair products
        m[i][i + 1] = -c
        m[i + 1][i] = Fraction(-1)
    return m


def gauss_det(matrix) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination with pivoting."""
    m = [row[:] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / pivot
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def lagrange_coefficients(xs, ys):
    """Exact polynomial coefficients (ascending) through the given points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            # basis *= (x - xs[j])
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] -= xs[j] * c
                nxt[d + 1] += c
            basis = nxt
            denom *= xs[i] - xs[j]
        scale = ys[i] / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    return coeffs


def charpoly_oracle(jsq):
    """det(x*I - H) coefficients (ascending, including the leading 1)."""
    n = len(jsq) + 1
    xs = [Fraction(k) for k in range(n + 1)]
    ys = [gauss_det(dense_shifted(jsq, x)) for x in xs]
    return lagrange_coefficients(xs, ys)


def dense_operator(offdiag) -> np.ndarray:
    b = np.asarray(offdiag, dtype=np.float64)
    return np.diag(b, 1) + np.diag(b, -1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
