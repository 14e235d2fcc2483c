"""Spectrum construction, transfer-validity checking, and level generators.

A spectrum stores only its strictly positive half: the operator's full
spectrum is the symmetric closure {+/-L_i} (plus 0 for odd chains).
Energies are in units where the transfer time is exactly pi, so perfect
transfer requires every adjacent gap of the full spectrum to be an odd
integer: within each half-spectrum the gaps must be odd, and across zero
the gap is 2*L_min (even chains) or L_min itself, twice (odd chains).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptySpectrum, InvalidParam
from .exactnum import as_rational, format_rational


class Parity(enum.Enum):
    """Chain-length parity; decides how the positive half closes to a full spectrum."""

    EVEN = "even"
    ODD = "odd"

    @classmethod
    def from_label(cls, label: str) -> "Parity":
        try:
            return cls(label.lower())
        except ValueError:
            raise InvalidParam(f"parity must be 'even' or 'odd', got {label!r}") from None

    @classmethod
    def of_n_sites(cls, n_sites: int) -> "Parity":
        return cls.EVEN if n_sites % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class Spectrum:
    """Strictly positive half-spectrum, stored in descending order.

    Distinctness and positivity are hard invariants (a chain with all
    couplings nonzero cannot have degenerate eigenvalues).  Any ordering
    may be passed to :meth:`from_levels`; storage is canonical descending.
    """

    positive_levels: tuple
    parity: Parity

    def __post_init__(self):
        levels = self.positive_levels
        if not levels:
            raise EmptySpectrum("a spectrum needs at least one positive level")
        for lam in levels:
            if not isinstance(lam, Fraction):
                raise InvalidParam(f"levels must be Fractions, got {lam!r}")
            if not lam > 0:
                raise InvalidParam(f"levels must be strictly positive, got {lam}")
        for a, b in zip(levels, levels[1:]):
            if not a > b:
                raise InvalidParam("levels must be strictly descending and distinct")

    @classmethod
    def from_levels(cls, levels: Iterable, parity: Parity) -> "Spectrum":
        canon = tuple(sorted((as_rational(x) for x in levels), reverse=True))
        return cls(canon, parity)

    @property
    def n_levels(self) -> int:
        return len(self.positive_levels)

    @property
    def n_sites(self) -> int:
        n = self.n_levels
        return 2 * n if self.parity is Parity.EVEN else 2 * n + 1

    def full_spectrum(self) -> tuple:
        """All eigenvalues, descending: positives, 0 for odd chains, negatives."""
        desc = self.positive_levels
        middle = (Fraction(0),) if self.parity is Parity.ODD else ()
        return desc + middle + tuple(-x for x in reversed(desc))

    def scaled(self, factor) -> "Spectrum":
        """Same spectrum with every level multiplied by an exact factor."""
        factor = as_rational(factor)
        if not factor > 0:
            raise InvalidParam(f"scale factor must be positive, got {factor}")
        return Spectrum(tuple(x * factor for x in self.positive_levels), self.parity)

    def __str__(self) -> str:
        return format_levels(self.positive_levels)


@dataclass(frozen=True)
class PstValidityReport:
    """Outcome of the odd-gap test on a full spectrum."""

    is_valid: bool
    gap_violations: tuple
    sorted_full_spectrum: tuple


def _is_odd_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator % 2 == 1


def validate_pst(spec: Spectrum) -> PstValidityReport:
    """Check the odd-gap condition on the full (symmetrically closed) spectrum.

    Valid even chains necessarily have half-odd-integer levels (the
    cross-zero gap 2*L_min must be odd); valid odd chains have integer
    levels with L_min odd.  Neither is checked directly, both follow from
    the adjacent gaps.
    """
    full = spec.full_spectrum()
    violations = []
    for i in range(len(full) - 1):
        gap = full[i] - full[i + 1]
        if not _is_odd_integer(gap):
            violations.append(((i, i + 1), gap))
    return PstValidityReport(
        is_valid=not violations,
        gap_violations=tuple(violations),
        sorted_full_spectrum=full,
    )


def gen_linear(n_sites: int) -> Spectrum:
    """Uniformly spaced unit-gap spectrum (the classic Christandl-type ladder).

    Even N: levels (2i-1)/2 for i = 1..N/2, i.e. {1/2, 3/2, ...};
    odd N: integer levels 1..(N-1)/2.  Always transfer-valid.
    """
    if n_sites < 2:
        raise InvalidParam(f"n_sites must be >= 2, got {n_sites}")
    if n_sites % 2 == 0:
        levels = [Fraction(2 * i - 1, 2) for i in range(1, n_sites // 2 + 1)]
        return Spectrum.from_levels(levels, Parity.EVEN)
    levels = [Fraction(i) for i in range(1, (n_sites - 1) // 2 + 1)]
    return Spectrum.from_levels(levels, Parity.ODD)


def gen_ts(n_sites: int, T: int, S: int) -> Spectrum:
    """Two-parameter even-chain family: levels T + 1/2 + i*(2S+1), i = 1..N/2.

    Gaps within each half are 2S+1 and the cross-zero gap is 2T + 4S + 3,
    all odd, so the output is always transfer-valid.  This family has
    closed-form couplings, see :func:`ts_closed_form_couplings`.
    """
    if n_sites < 2 or n_sites % 2 != 0:
        raise InvalidParam(f"n_sites must be even and >= 2, got {n_sites}")
    if T < 0 or S < 0:
        raise InvalidParam("T and S must be non-negative integers")
    base = Fraction(2 * T + 1, 2)
    step = 2 * S + 1
    levels = [base + i * step for i in range(1, n_sites // 2 + 1)]
    return Spectrum.from_levels(levels, Parity.EVEN)


def ts_closed_form_couplings(n_sites: int, T: int, S: int) -> tuple:
    """Known closed-form squared couplings for the gen_ts spectrum.

    J_i^2 = i(N-i)(1+2S)^2/4 for even i, and
    ((1+2T)+(1+i)(1+2S)) * ((1+2T)+(N+1-i)(1+2S))/4 for odd i.
    Used as an independent regression oracle against the solver.
    """
    if n_sites < 2 or n_sites % 2 != 0:
        raise InvalidParam(f"n_sites must be even and >= 2, got {n_sites}")
    if T < 0 or S < 0:
        raise InvalidParam("T and S must be non-negative integers")
    a = 1 + 2 * T
    b = 1 + 2 * S
    out = []
    for i in range(1, n_sites):
        if i % 2 == 0:
            out.append(Fraction(i * (n_sites - i) * b * b, 4))
        else:
            out.append(Fraction((a + (1 + i) * b) * (a + (n_sites + 1 - i) * b), 4))
    return tuple(out)


def gen_random_odd_gaps(
    n_levels: int, parity: Parity, gap_max: int, seed: int
) -> Spectrum:
    """Random transfer-valid spectrum with odd gaps drawn from [1, gap_max].

    Deterministic for a fixed seed: draws come from ``random.Random(seed)``
    (Mersenne Twister) via ``randrange``, one draw per gap, lowest level
    first.  Even chains draw 2*L_min as the first odd number, odd chains
    draw L_min itself.
    """
    if n_levels < 1:
        raise InvalidParam(f"n_levels must be >= 1, got {n_levels}")
    if gap_max < 1 or gap_max % 2 == 0:
        raise InvalidParam(f"gap_max must be a positive odd integer, got {gap_max}")
    rng = random.Random(seed)
    n_choices = (gap_max + 1) // 2

    def odd_draw() -> int:
        return 2 * rng.randrange(n_choices) + 1

    if parity is Parity.EVEN:
        levels = [Fraction(odd_draw(), 2)]
    else:
        levels = [Fraction(odd_draw())]
    for _ in range(n_levels - 1):
        levels.append(levels[-1] + odd_draw())
    return Spectrum.from_levels(levels, parity)


def parse_levels(text: str) -> tuple:
    """Parse a comma-separated list of exact rationals like "9/2,7/2,3/2"."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidParam("empty level list")
    return tuple(as_rational(p) for p in parts)


def format_levels(levels: Iterable) -> str:
    return ",".join(format_rational(x) for x in levels)
