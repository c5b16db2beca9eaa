"""Spectral theory of conformal-quantum-mechanics symmetry generators.

Generator classification, closed-form radial propagators for the elliptic,
parabolic, and hyperbolic classes, discrete and continuum eigensystems,
Fourier inversion of continuous-spectrum kernels, Green's functions, and
independent brute-force oracles for every closed form.
"""

__version__ = "0.1.0"

from .errors import (
    CausticError,
    ClassMismatchError,
    ConfigError,
    ContourError,
    ConvergenceError,
    CqmspecError,
    DegenerateWronskianError,
    DomainError,
    NonConvergence,
    NotApplicableError,
    PoleError,
    SingularTimeError,
    SolveError,
    StrongCouplingError,
    ZeroTimeError,
)
from .params import (
    AnalogOscillator,
    ClassTag,
    GeneratorClass,
    GeneratorSpec,
    PhysicalParams,
    TimeMap,
    canonical_transform,
    classify,
    conformal_index,
    dimensional_params,
    effective_time,
    reduce_to_analog,
    time_map,
)
from .propagators import (
    PropagatorQuery,
    Schedule,
    partial_wave_sum,
    propagator_elliptic,
    propagator_hyperbolic,
    propagator_parabolic,
    radial_propagator,
)
from .spectra import (
    EigenData,
    GreenKind,
    GreenValue,
    elliptic_eigenfunction,
    elliptic_levels,
    green_elliptic,
    green_hyperbolic,
    green_parabolic,
    hyperbolic_eigenfunction,
    parabolic_eigenfunction,
    spectral_series_elliptic,
)
from .transforms import (
    CheckReport,
    IDENTITY_IDS,
    QuadratureSpec,
    fourier_invert,
    half_line_transform,
    run_identity_suite,
    verify_identity,
)
from .oracle import (
    RadialGrid,
    commutator_check,
    fd_green,
    fd_spectrum,
    numerov_regular,
    timesliced_propagator,
    wronskian_green,
)
