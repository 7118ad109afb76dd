"""Exact solutions, Green-function hierarchy and lattice oracles for the massless quartic scalar field."""
from .elliptic import EllipticValue, K_i, QSeriesSpec, complete_elliptic_K, jacobi_i, sn_fourier, sn_i
from .errors import *  # noqa: F401,F403
from .hierarchy import GreenSet, KernelGrid, c2_convolution, c3_convolution, green_set, hierarchy_residual, taylor_response
from .lattice import (
    Lattice1p1,
    SolveReport,
    SourceField,
    bump_source,
    functional_derivative,
    solve_linearized,
    solve_nonlinear,
)
from .scalar import (
    FourVector,
    PoleSeries,
    WaveBackground,
    c1_frequency,
    coefficient_A,
    make_background,
    mass_spectrum,
    phi0,
    phi_h,
    propagator_momentum,
)
from .cumulants import CumulantSet, MomentSet, classical_mapping_check, ds_residual, gaussian_closure_check
from .yangmills import ColorGaugeField, casimir_contraction_audit, smilga_ansatz, tensor_propagator, ym_residual
from .suites import RunConfig, run_suite

__version__ = "0.1.0"
