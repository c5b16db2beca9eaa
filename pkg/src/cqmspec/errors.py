"""Exception types shared across the package."""


class CqmspecError(Exception):
    """Base class for all package errors."""


class StrongCouplingError(CqmspecError):
    """Coupling puts g + (l+nu)^2 below zero; outside the supported regime."""


class SingularTimeError(CqmspecError):
    """The requested time interval contains a zero of f_G."""


class NotApplicableError(CqmspecError):
    """Operation undefined for this generator (u = 0 or degenerate discriminant)."""


class ClassMismatchError(CqmspecError):
    """Operation requires a different generator class."""


class CausticError(CqmspecError):
    """Real-time elliptic kernel evaluated at a caustic (sin(omega T) ~ 0)."""


class ZeroTimeError(CqmspecError):
    """Propagator requested at T = 0."""


class PoleError(CqmspecError):
    """Special function evaluated at a pole of its parameter domain."""


class NonConvergence(CqmspecError):
    """Series, asymptotic expansion, or extrapolation failed to reach tolerance."""


class ContourError(CqmspecError):
    """Contour offset outside the validity strip."""


class DomainError(CqmspecError):
    """Argument outside the validity domain of an operation or identity."""


class DegenerateWronskianError(CqmspecError):
    """Wronskian numerically zero (energy sits on a discrete eigenvalue)."""


class SolveError(CqmspecError):
    """Linear system for the resolvent column is singular."""


class ConvergenceError(CqmspecError):
    """Eigensolver failed to converge."""


class ConfigError(CqmspecError):
    """Run configuration failed validation."""
