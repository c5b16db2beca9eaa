"""Physical parameters and the generator algebra.

A generalized symmetry generator is the combination G = u*H + v*D + w*K.
Its discriminant Delta = v^2 - 4*u*w fixes the operator class (elliptic,
parabolic, hyperbolic), and the quadratic f_G(t) = u + v*t + w*t^2 drives
the effective-time map and the canonical transform to the analog
oscillator-plus-inverse-square Hamiltonian.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotApplicableError,
    SingularTimeError,
    StrongCouplingError,
)

__all__ = [
    "ClassTag",
    "PhysicalParams",
    "GeneratorSpec",
    "GeneratorClass",
    "TimeMap",
    "AnalogOscillator",
    "classify",
    "conformal_index",
    "effective_time",
    "time_map",
    "canonical_transform",
    "dimensional_params",
    "reduce_to_analog",
]


class ClassTag(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, action scale, dimensionless coupling, dimension, angular momentum."""

    mass: float = 1.0
    hbar: float = 1.0
    coupling: float = 0.0
    dim: int = 1
    ell: int = 0

    def __post_init__(self):
        if self.mass <= 0 or self.hbar <= 0:
            raise ValueError("mass and hbar must be positive")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError("ell must be a nonnegative integer")
        if self.coupling + (self.ell + self.nu()) ** 2 < 0:
            raise StrongCouplingError(
                f"g + (l+nu)^2 = {self.coupling + (self.ell + self.nu())**2} < 0"
            )

    def nu(self) -> float:
        # d/2 - 1 is exact in binary floating point
        return self.dim / 2.0 - 1.0

    def mu(self) -> float:
        return conformal_index(self)


def conformal_index(p: PhysicalParams) -> float:
    """Index mu = sqrt(g + (l+nu)^2) carrying the coupling into Bessel orders."""
    s = p.coupling + (p.ell + p.nu()) ** 2
    if s < 0:
        raise StrongCouplingError(f"g + (l+nu)^2 = {s} < 0")
    return math.sqrt(s)


@dataclass(frozen=True)
class GeneratorSpec:
    """Coefficients of G = u*H + v*D + w*K."""

    u: float
    v: float
    w: float

    def __post_init__(self):
        if self.u == 0.0 and self.v == 0.0 and self.w == 0.0:
            raise ValueError("generator coefficients must not all vanish")

    def discriminant(self) -> float:
        return self.v * self.v - 4.0 * self.u * self.w

    def f(self, t: float) -> float:
        """f_G(t) = u + v t + w t^2."""
        return self.u + self.v * t + self.w * t * t

    def fdot(self, t: float) -> float:
        return self.v + 2.0 * self.w * t

    def roots(self) -> list[float]:
        """Real roots of f_G, ascending."""
        if self.w == 0.0:
            if self.v == 0.0:
                return []
            return [-self.u / self.v]
        disc = self.discriminant()
        if disc < 0.0:
            return []
        if disc == 0.0:
            return [-self.v / (2.0 * self.w)]
        sq = math.sqrt(disc)
        r1 = (-self.v - sq) / (2.0 * self.w)
        r2 = (-self.v + sq) / (2.0 * self.w)
        return sorted([r1, r2])


@dataclass(frozen=True)
class GeneratorClass:
    """Classification record: discriminant, class tag, |omega|, orientation sign."""

    discriminant: float
    class_tag: ClassTag
    omega_mag: float
    sigma: int

    @property
    def sigma_degenerate(self) -> bool:
        """True when f_G vanished at the reference time (sigma undefined)."""
        return self.sigma == 0


@dataclass(frozen=True)
class TimeMap:
    """Roots of f_G and the root-free branch containing the reference time."""

    class_tag: ClassTag
    roots: tuple[float, ...]
    branch_domain: tuple[float, float]


def classify(spec: GeneratorSpec, t_ref: float = 0.0) -> GeneratorClass:
    """Classify G by the sign of its discriminant; sigma = sgn f_G(t_ref)."""
    disc = spec.discriminant()
    if disc < 0.0:
        tag = ClassTag.ELLIPTIC
    elif disc == 0.0:
        tag = ClassTag.PARABOLIC
    else:
        tag = ClassTag.HYPERBOLIC
    omega = math.sqrt(abs(disc)) / 2.0
    f_ref = spec.f(t_ref)
    sigma = 0 if f_ref == 0.0 else (1 if f_ref > 0.0 else -1)
    return GeneratorClass(discriminant=disc, class_tag=tag, omega_mag=omega, sigma=sigma)


def time_map(spec: GeneratorSpec, t_ref: float = 0.0) -> TimeMap:
    """Branch of the effective-time map containing t_ref."""
    roots = spec.roots()
    if any(r == t_ref for r in roots):
        raise SingularTimeError(f"f_G vanishes at the reference time t = {t_ref}")
    lo, hi = -math.inf, math.inf
    for r in roots:
        if r < t_ref:
            lo = max(lo, r)
        else:
            hi = min(hi, r)
    tag = classify(spec, t_ref).class_tag
    return TimeMap(class_tag=tag, roots=tuple(roots), branch_domain=(lo, hi))


def effective_time(spec: GeneratorSpec, t: float) -> float:
    """tau(t) = integral_0^t ds / f_G(s), in closed form on a root-free branch."""
    u, v, w = spec.u, spec.v, spec.w
    lo, hi = min(0.0, t), max(0.0, t)
    for r in spec.roots():
        if lo <= r <= hi:
            raise SingularTimeError(f"f_G has a root at t = {r} inside [0, {t}]")
    if spec.f(0.0) == 0.0:
        raise SingularTimeError("f_G vanishes at t = 0")
    if w == 0.0:
        if v == 0.0:
            return t / u
        return math.log(spec.f(t) / u) / v
    disc = spec.discriminant()
    if disc < 0.0:
        s = math.sqrt(-disc)
        return 2.0 / s * (math.atan((2.0 * w * t + v) / s) - math.atan(v / s))
    if disc == 0.0:
        t0 = -v / (2.0 * w)
        return 1.0 / (w * (t0 - t)) - 1.0 / (w * t0)
    # two real roots t1 < t2; partial fractions, signs constant on the branch
    t1, t2 = spec.roots()
    c = 1.0 / (w * (t2 - t1))
    return c * (
        math.log(abs((t - t2) / (t - t1))) - math.log(abs(t2 / t1))
    )


def canonical_transform(
    spec: GeneratorSpec,
    Q: np.ndarray,
    P: np.ndarray,
    t: float,
    p: PhysicalParams,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Map (Q, P, t) to the analog-oscillator variables (q, p, tau).

    q = Q/|f_G|^{1/2},  p = sigma |f_G|^{1/2} (P - (fdot/2f) M Q),  tau = tau(t).
    """
    f = spec.f(t)
    if f == 0.0:
        raise SingularTimeError(f"f_G vanishes at t = {t}")
    sigma = 1.0 if f > 0.0 else -1.0
    fd = spec.fdot(t)
    Q = np.asarray(Q, dtype=float)
    P = np.asarray(P, dtype=float)
    root = math.sqrt(abs(f))
    q = Q / root
    mom = sigma * root * (P - (fd / (2.0 * f)) * p.mass * Q)
    return q, mom, effective_time(spec, t)


def dimensional_params(spec: GeneratorSpec) -> tuple[float, float]:
    """Time scale a = 2|u|/sqrt(|Delta|) and reduced frequency magnitude 1/a."""
    disc = spec.discriminant()
    if spec.u == 0.0 or disc == 0.0:
        raise NotApplicableError("requires u != 0 and a nonzero discriminant")
    a = 2.0 * abs(spec.u) / math.sqrt(abs(disc))
    return a, 1.0 / a


@dataclass(frozen=True)
class AnalogOscillator:
    """Parameters of the analog Hamiltonian p^2/2M + (hbar^2 g / 2M) r^-2 + M w^2 r^2 / 2.

    ``scale`` relates the generator eigenvalues to the normalized-class ladder:
    G ~ sigma * scale * R (elliptic) or sigma * scale * S' (hyperbolic).
    """

    mass: float
    hbar: float
    coupling: float
    mu: float
    omega_mag: float
    class_tag: ClassTag
    sigma: int
    scale: float

    @classmethod
    def from_frequency(
        cls,
        omega: float,
        p: PhysicalParams,
        class_tag: ClassTag = ClassTag.ELLIPTIC,
        sigma: int = 1,
    ) -> "AnalogOscillator":
        """Analog oscillator at a given |omega| (scale = 2|omega| for nonparabolic)."""
        if class_tag is ClassTag.PARABOLIC:
            if omega != 0.0:
                raise ValueError("parabolic class requires omega = 0")
            scale = 1.0
        else:
            if omega <= 0.0:
                raise ValueError("elliptic/hyperbolic class requires omega > 0")
            scale = 2.0 * omega
        return cls(
            mass=p.mass,
            hbar=p.hbar,
            coupling=p.coupling,
            mu=p.mu(),
            omega_mag=omega,
            class_tag=class_tag,
            sigma=sigma,
            scale=scale,
        )


def reduce_to_analog(
    spec: GeneratorSpec, p: PhysicalParams, t_ref: float = 0.0
) -> AnalogOscillator:
    """Analog-oscillator parameters of G, with |omega| = sqrt(|Delta|)/2.

    For a degenerate reference time (f_G(t_ref) = 0, sigma = 0) the record is
    returned with sigma = 0; downstream spectral calls should rely on the
    class equivalences K ~ H and D ~ S' instead of the orientation sign.
    """
    cls = classify(spec, t_ref)
    scale = 1.0 if cls.class_tag is ClassTag.PARABOLIC else math.sqrt(abs(cls.discriminant))
    return AnalogOscillator(
        mass=p.mass,
        hbar=p.hbar,
        coupling=p.coupling,
        mu=p.mu(),
        omega_mag=cls.omega_mag,
        class_tag=cls.class_tag,
        sigma=cls.sigma,
        scale=scale,
    )
