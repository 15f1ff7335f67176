"""Wigner d-matrix elements and their uniform low-angle Bessel approximation.

Quick start::

    from uniform_wigner import make_index, d_exact, d_approx

    idx = make_index(4000, 0, 0)          # j = 2000, m1 = m2 = 0
    d_exact(idx, 1e-3), d_approx(idx, 1e-3)
"""

from .angular_core import (
    AngularIndex,
    ApproxParams,
    DerivationConstants,
    approx_params,
    canonicalize,
    check_angle,
    delta,
    derivation_constants,
    make_index,
    prefactor_d,
)
from .bessel import bessel_j
from .errors import (
    AngleOutOfRange,
    ArgumentOutOfRange,
    DivisionByNearZero,
    DomainError,
    MOutOfRange,
    NegativeArgument,
    NegativeJ,
    ParityMismatch,
    PrecisionExhausted,
    QuadratureNotConverged,
)
from .partial_wave import (
    RadialPoint,
    WavepacketParams,
    integral_approx,
    integral_bessel_form,
    integral_exact,
    integral_exact_table,
    integral_rel_error,
    transform_wavefunction,
    wavefunction_table,
)
from .wigner_exact import (
    d_exact,
    d_exact_j_range,
    d_exact_many,
    d_matrix_row,
    d_series_highprec,
    legendre_p,
    legendre_p_1mu,
)
from .wigner_uniform import d_approx, kinematic_factor, small_angle_leading

__version__ = "0.1.0"
