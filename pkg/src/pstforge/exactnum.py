"""Exact rational arithmetic and characteristic-polynomial machinery.

Couplings and energy levels are ``fractions.Fraction`` values throughout,
so every polynomial identity checked in this package holds with zero
rounding error.  Working with exact rationals matters here: constructed
coupling values routinely grow numerators and denominators of thousands
of bits, far beyond anything a float can represent faithfully.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidParam

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, strings like "3/4", and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidParam(f"not a rational number: {value!r}") from exc


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (decimal strings also accepted, they are exact)."""
    return as_rational(text.strip())


def format_rational(q: Fraction) -> str:
    """Serialize exactly: "p/q", or just "p" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def bit_size(q: Fraction) -> int:
    """Bits of the larger of |numerator| and denominator."""
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial with exact coefficients.

    ``coefficients`` holds the non-leading coefficients in ascending degree
    order; the leading coefficient is implicitly 1, so the degree equals
    ``len(coefficients)``.
    """

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def coefficient(self, k: int):
        """Coefficient of degree k, including the implicit leading 1."""
        if k == self.degree:
            return Fraction(1)
        return self.coefficients[k]

    def all_coefficients(self) -> tuple:
        """Ascending coefficients including the leading 1."""
        return self.coefficients + (Fraction(1),)

    def evaluate(self, x):
        value = x * 0 + 1
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __str__(self) -> str:
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coefficient(d)
            if c == 0:
                continue
            mono = "1" if d == 0 else ("x" if d == 1 else f"x^{d}")
            terms.append(f"{format_rational(Fraction(c))}*{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class ChainOperator:
    """Zero-diagonal mirror-symmetric tridiagonal operator.

    Stores the squared couplings J_i^2 (i = 1..N-1) exactly.  The diagonal
    is identically zero, which forces the spectrum to be symmetric about
    zero; mirror symmetry J_i = J_{N-i} is required of every instance.
    """

    n_sites: int
    couplings_squared: tuple

    def __post_init__(self):
        n = self.n_sites
        cs = self.couplings_squared
        if n < 2:
            raise InvalidParam(f"chain needs at least 2 sites, got {n}")
        if len(cs) != n - 1:
            raise InvalidParam(
                f"expected {n - 1} squared couplings for {n} sites, got {len(cs)}"
            )
        for i, c in enumerate(cs):
            if not c > 0:
                raise InvalidParam(f"squared coupling {i + 1} is not positive: {c}")
        for i in range(len(cs) // 2):
            if cs[i] != cs[n - 2 - i]:
                raise InvalidParam(
                    f"couplings are not mirror symmetric at positions {i + 1} and {n - 1 - i}"
                )

    def offdiag_floats(self) -> list[float]:
        """Couplings J_i as floats, for the numerical eigensolver."""
        return [math.sqrt(float(c)) for c in self.couplings_squared]


def charpoly_tridiag(op: ChainOperator) -> MonicPolynomial:
    """Characteristic polynomial det(lambda*I - H), monic, exact.

    Uses the three-term recurrence for leading principal minors,
    P_k = lambda*P_{k-1} - J_{k-1}^2 * P_{k-2} with P_0 = 1, P_1 = lambda,
    carried symbolically in the coefficient lists.  Because the diagonal is
    zero, P_N contains only terms whose degree has the parity of N.
    """
    zero = Fraction(0)
    one = Fraction(1)
    prev = [one]
    cur = [zero, one]
    for b2 in op.couplings_squared:
        nxt = [zero] + cur
        for d, coef in enumerate(prev):
            if coef:
                nxt[d] = nxt[d] - b2 * coef
        prev, cur = cur, nxt
    return MonicPolynomial(tuple(cur[:-1]))


def det_eval(op: ChainOperator, lam) -> Fraction:
    """det(H - lambda*I), evaluated exactly at a single point.

    Same minor recurrence as charpoly_tridiag, specialized at lambda:
    D_k = -lambda*D_{k-1} - J_{k-1}^2 * D_{k-2}, D_0 = 1, D_1 = -lambda.
    Zero exactly when lambda is an eigenvalue.  Note the sign convention
    differs from charpoly_tridiag by (-1)^N.
    """
    lam = as_rational(lam)
    d_prev = Fraction(1)
    d_cur = -lam
    for b2 in op.couplings_squared:
        d_prev, d_cur = d_cur, -lam * d_cur - b2 * d_prev
    return d_cur


def poly_from_symmetric_levels(
    levels: Iterable, include_zero: bool = False
) -> MonicPolynomial:
    """Monic polynomial with roots {+/-L for L in levels} (and 0 if asked).

    This is the target form prod(lambda^2 - L^2), optionally times lambda,
    that a correctly constructed chain's characteristic polynomial must
    reproduce coefficient by coefficient.
    """
    zero = Fraction(0)
    poly = [Fraction(1)]
    for lam in levels:
        lam = as_rational(lam)
        l2 = lam * lam
        nxt = [zero, zero] + poly
        for d, coef in enumerate(poly):
            if coef:
                nxt[d] = nxt[d] - l2 * coef
        poly = nxt
    if include_zero:
        poly = [zero] + poly
    return MonicPolynomial(tuple(poly[:-1]))


def max_bit_size(values: Sequence) -> int:
    """Largest numerator/denominator bit length across a batch of rationals."""
    return max((bit_size(as_rational(v)) for v in values), default=0)
