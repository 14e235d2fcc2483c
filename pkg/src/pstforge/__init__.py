"""Exact coupling schemes for perfect state transfer in mirror-symmetric XY chains.

Given a symmetric target spectrum, the solver constructs the unique
positive nearest-neighbor coupling scheme of the zero-diagonal chain
realizing it, in exact rational arithmetic, and the verifier checks the
result both algebraically (characteristic polynomial identity) and
dynamically (transfer fidelity and mirror inversion at t = pi).
"""

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    EmptySpectrum,
    InvalidParam,
    NonPositiveCoupling,
    OrderingBreakdown,
    PstForgeError,
)
from .exactnum import ChainOperator, MonicPolynomial, charpoly_tridiag, det_eval
from .eigen import EigenSystem, eig_sym_tridiag, evolve_excitation, propagator
from .solver import (
    AccumulatorPair,
    CouplingScheme,
    RecursionState,
    accumulators,
    base_state,
    extend_even,
    extend_odd,
    middle_coupling,
    permutation_invariance_eval,
    solve,
    solve_float_levels,
    solve_state,
)
from .spectra import (
    Parity,
    PstValidityReport,
    Spectrum,
    gen_linear,
    gen_random_odd_gaps,
    gen_ts,
    ts_closed_form_couplings,
    validate_pst,
)
from .verifier import (
    VerificationReport,
    fidelity_check,
    full_report,
    mirror_inversion_check,
    roundtrip_float,
    verify_exact,
)

__version__ = "0.1.0"
