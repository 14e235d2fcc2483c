"""Recursive construction of chain couplings from a preselected spectrum.

The construction grows the chain two sites at a time.  Starting from the
exactly solvable 2-site (even) or 3-site (odd) chain, each step adds one
level +/-L to the spectrum and rewrites the working variables so that the
longer chain reproduces every old eigenvalue plus the new pair.  Working
variables are the squared couplings of the symmetric half, except at the
chain middle where the parity of N dictates a different bookkeeping:

* even N, half-length n: the middle entry is the unsquared coupling J_n
  (a square root appears when the middle bond of an even chain is split);
* odd N: the middle entry is 2*J_n^2 (the two bonds flanking the central
  site act in parallel).

Each new entry is a difference of two ratio products over the previous
and current working variables.  Both products are maintained as running
accumulators updated in O(1) per entry, so one extension step costs O(n)
arithmetic operations and a full solve costs O(n^2).

Everything here is scalar-generic: exact Fractions give the exact solver,
plain floats give the floating re-solve used by the round-trip verifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidParam, NonPositiveCoupling
from .exactnum import ChainOperator, as_rational
from .spectra import Parity, Spectrum


@dataclass(frozen=True)
class RecursionState:
    """Working variables j_1..j_n for one half of a solved chain.

    ``j[i-1]`` is J_i^2 for i < n; the last entry follows the middle-entry
    convention described in the module docstring.  ``levels`` records the
    positive levels consumed so far, in consumption order (descending for
    even chains, ascending for odd ones).
    """

    n_sites: int
    parity: Parity
    j: tuple
    levels: tuple

    @property
    def half_length(self) -> int:
        return len(self.j)


@dataclass(frozen=True)
class AccumulatorPair:
    """The two ratio products entering one recursion entry."""

    gamma: object
    delta: object


@dataclass(frozen=True)
class CouplingScheme:
    """Full mirror-expanded squared couplings for an N-site chain."""

    n_sites: int
    couplings_squared: tuple
    couplings_float: tuple
    source_spectrum: Spectrum

    def as_operator(self) -> ChainOperator:
        return ChainOperator(self.n_sites, self.couplings_squared)


def base_state(parity: Parity, lambda_1) -> RecursionState:
    """Smallest solvable chain for one positive level.

    A 2-site chain has eigenvalues +/-J_1, so j_1 = L_1 directly.  A 3-site
    chain has characteristic polynomial x^3 - 2*J_1^2*x, so the doubled
    middle square 2*J_1^2 equals L_1^2.
    """
    if not lambda_1 > 0:
        raise InvalidParam(f"level must be positive, got {lambda_1}")
    if parity is Parity.EVEN:
        return RecursionState(2, parity, (lambda_1,), (lambda_1,))
    return RecursionState(3, parity, (lambda_1 * lambda_1,), (lambda_1,))


def _extend_j(prev_j: Sequence, lam, odd_chain: bool) -> list:
    """One extension step on raw working variables, no validity checks.

    Entries are produced for i = n down to 1; the two accumulators are
    updated in O(1) after each entry.  Raises ZeroDivisionError when an
    intermediate entry vanishes (degenerate input spectrum).
    """
    n = len(prev_j) + 1
    zero = lam * 0
    one = zero + 1
    out = [zero] * n
    gamma = prev_j[n - 2]
    delta_cur = one
    delta_next = prev_j[n - 2]
    lam_sq = lam * lam
    for i in range(n, 0, -1):
        if odd_chain:
            if (n - i) % 2 == 0:
                entry = lam_sq * delta_cur - gamma
            else:
                entry = delta_cur - gamma
        else:
            if i % 2 == 0:
                entry = gamma - lam * delta_cur
            else:
                entry = gamma + lam * delta_cur
        out[i - 1] = entry
        if i >= 2:
            # the i-2 previous entry feeds both accumulators; index 0 is
            # the conventional j_0 = 0 that kills the last gamma
            prev_entry = prev_j[i - 3] if i >= 3 else zero
            gamma = gamma * prev_entry / entry
            new_delta = delta_cur * prev_entry / entry
            delta_cur, delta_next = delta_next, new_delta
    return out


def accumulators(prev: RecursionState, partial: Sequence, k: int) -> AccumulatorPair:
    """Direct evaluation of the two ratio products for entry k.

    ``partial`` must hold the already-computed current-chain entries with
    indices k+1..n, ascending.  This closed-form evaluation exists so the
    O(1) running-product updates inside the extension step can be checked
    against it; the solver itself never calls it.

    gamma_k multiplies previous entries with indices n-1 down to k-1 (the
    conventional j_0 = 0 makes gamma_1 vanish) over current entries n down
    to k+1.  delta_k multiplies every second previous entry starting at k
    (indices <= n-1) over every second current entry starting at k+2
    (indices <= n); its boundary values are delta_{n-1} = previous j_{n-1}
    and delta_n = 1.
    """
    n = k + len(partial)
    if len(prev.j) != n - 1:
        raise InvalidParam(
            f"previous state has {len(prev.j)} entries, expected {n - 1}"
        )
    if not 1 <= k <= n:
        raise InvalidParam(f"k must be in 1..{n}, got {k}")
    p = prev.j
    zero = p[0] * 0
    one = zero + 1

    def prev_entry(idx: int):
        return zero if idx == 0 else p[idx - 1]

    def cur_entry(idx: int):
        return partial[idx - (k + 1)]

    gamma = one
    for m in range(k - 1, n):
        gamma = gamma * prev_entry(m)
    for m in range(k + 1, n + 1):
        gamma = gamma / cur_entry(m)

    delta = one
    m = k
    while m <= n - 1:
        delta = delta * prev_entry(m)
        m += 2
    m = k + 2
    while m <= n:
        delta = delta / cur_entry(m)
        m += 2
    return AccumulatorPair(gamma, delta)


def _check_positive(j_values: Sequence, context: str) -> None:
    for i, v in enumerate(j_values):
        if not v > 0:
            raise NonPositiveCoupling(
                f"{context}: working variable {i + 1} is {v}; "
                "the level ordering precondition was violated"
            )


def extend_even(prev: RecursionState, lambda_new) -> RecursionState:
    """Extend an even chain by two sites, adding +/-lambda_new to its spectrum.

    The new level must sit strictly below every level already consumed;
    descending consumption is what keeps every working variable positive.
    """
    if prev.parity is not Parity.EVEN:
        raise InvalidParam("extend_even needs an even-chain state")
    if not lambda_new > 0:
        raise InvalidParam(f"new level must be positive, got {lambda_new}")
    if not lambda_new < prev.levels[-1]:
        raise InvalidParam(
            f"new level {lambda_new} must lie strictly below the current "
            f"minimum {prev.levels[-1]}"
        )
    j = _extend_j(prev.j, lambda_new, odd_chain=False)
    _check_positive(j, f"extending to {prev.n_sites + 2} sites")
    return RecursionState(
        prev.n_sites + 2, Parity.EVEN, tuple(j), prev.levels + (lambda_new,)
    )


def extend_odd(prev: RecursionState, lambda_new) -> RecursionState:
    """Extend an odd chain by two sites, adding +/-lambda_new to its spectrum.

    Mirror image of the even case: the new level must sit strictly above
    every level already consumed (ascending consumption).
    """
    if prev.parity is not Parity.ODD:
        raise InvalidParam("extend_odd needs an odd-chain state")
    if not lambda_new > 0:
        raise InvalidParam(f"new level must be positive, got {lambda_new}")
    if not lambda_new > prev.levels[-1]:
        raise InvalidParam(
            f"new level {lambda_new} must lie strictly above the current "
            f"maximum {prev.levels[-1]}"
        )
    j = _extend_j(prev.j, lambda_new, odd_chain=True)
    _check_positive(j, f"extending to {prev.n_sites + 2} sites")
    return RecursionState(
        prev.n_sites + 2, Parity.ODD, tuple(j), prev.levels + (lambda_new,)
    )


def solve_state(spec: Spectrum) -> RecursionState:
    """Run the recursion over a whole spectrum; returns the final half-state."""
    desc = spec.positive_levels
    if spec.parity is Parity.EVEN:
        state = base_state(Parity.EVEN, desc[0])
        for lam in desc[1:]:
            state = extend_even(state, lam)
        return state
    asc = tuple(reversed(desc))
    state = base_state(Parity.ODD, asc[0])
    for lam in asc[1:]:
        state = extend_odd(state, lam)
    return state


def expand_couplings(state: RecursionState) -> tuple:
    """Mirror-expand a half-state into the full J_i^2 sequence of length N-1."""
    j = state.j
    side = j[:-1]
    if state.parity is Parity.EVEN:
        middle = (j[-1] * j[-1],)
    else:
        half_sq = j[-1] / 2
        middle = (half_sq, half_sq)
    return side + middle + tuple(reversed(side))


def solve(spec: Spectrum) -> CouplingScheme:
    """Construct the unique positive coupling scheme realizing a spectrum.

    Works for any strictly positive distinct levels, transfer-valid or not;
    validity is the verifier's concern.  The result is mirror-symmetric
    with every squared coupling strictly positive.
    """
    state = solve_state(spec)
    squared = expand_couplings(state)
    floats = tuple(math.sqrt(float(c)) for c in squared)
    return CouplingScheme(
        n_sites=spec.n_sites,
        couplings_squared=squared,
        couplings_float=floats,
        source_spectrum=spec,
    )


def solve_float_levels(levels_desc: Sequence[float], parity: Parity) -> list[float]:
    """Float-scalar re-solve: same recursion, plain float arithmetic.

    ``levels_desc`` must be strictly descending positive floats.  Returns
    the full mirror-expanded J_i^2 sequence.  Raises the same errors as the
    exact path when the float spectrum violates the ordering preconditions.
    """
    levels = [float(x) for x in levels_desc]
    if not levels:
        raise InvalidParam("empty level list")
    for a, b in zip(levels, levels[1:]):
        if not a > b:
            raise InvalidParam("levels must be strictly descending")
    if not levels[-1] > 0:
        raise InvalidParam("levels must be strictly positive")
    if parity is Parity.EVEN:
        j = [levels[0]]
        for lam in levels[1:]:
            j = _extend_j(j, lam, odd_chain=False)
            _check_positive(j, "float re-solve")
        middle = (j[-1] * j[-1],)
    else:
        asc = list(reversed(levels))
        j = [asc[0] * asc[0]]
        for lam in asc[1:]:
            j = _extend_j(j, lam, odd_chain=True)
            _check_positive(j, "float re-solve")
        middle = (j[-1] / 2, j[-1] / 2)
    side = tuple(j[:-1])
    return list(side + middle + tuple(reversed(side)))


def permutation_invariance_eval(
    signed_levels: Sequence, parity: Parity
) -> RecursionState:
    """Feed the raw recursion a signed, unordered level sequence.

    No sorting, no sign normalization, no positivity enforcement: the
    formulas are applied verbatim in the order given.  The point is that
    certain signed permutations of a spectrum must reproduce identical
    working variables, which is the algebraic fact making the recursion
    consistent.  Entries of the result may be negative for non-canonical
    inputs.  Raises ZeroDivisionError if an intermediate entry vanishes.
    """
    levels = tuple(as_rational(x) for x in signed_levels)
    if not levels:
        raise InvalidParam("empty level list")
    if len(set(levels)) != len(levels):
        raise InvalidParam("signed levels must be distinct")
    if any(x == 0 for x in levels):
        raise InvalidParam("signed levels must be nonzero")
    odd_chain = parity is Parity.ODD
    if odd_chain:
        j = [levels[0] * levels[0]]
        n_sites = 3
    else:
        j = [levels[0]]
        n_sites = 2
    for lam in levels[1:]:
        j = _extend_j(j, lam, odd_chain=odd_chain)
        n_sites += 2
    return RecursionState(n_sites, parity, tuple(j), levels)


def middle_coupling(state: RecursionState):
    """Exact middle coupling J_n of an even chain (the unsquared entry)."""
    if state.parity is not Parity.EVEN:
        raise InvalidParam("middle_coupling is defined for even chains")
    return state.j[-1]
