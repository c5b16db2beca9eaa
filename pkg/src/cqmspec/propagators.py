"""Closed-form radial propagators for the three generator classes.

The elliptic kernel is the radial-harmonic-oscillator propagator with the
inverse-square coupling absorbed into the Bessel order mu; the parabolic and
hyperbolic kernels follow by the zero-frequency limit and the imaginary
frequency continuation.  Gaussian prefactors are always paired with the
scaled Bessel function so that nothing overflows at large M w r^2 / hbar.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import CausticError, ClassMismatchError, DomainError, ZeroTimeError
from .params import AnalogOscillator, ClassTag, PhysicalParams

__all__ = [
    "Schedule",
    "PropagatorQuery",
    "propagator_elliptic",
    "propagator_parabolic",
    "propagator_hyperbolic",
    "radial_propagator",
    "partial_wave_sum",
]

CAUSTIC_TOL = 1e-8


class Schedule(enum.Enum):
    REAL_TIME = "realtime"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class PropagatorQuery:
    r_in: float
    r_out: float
    time: float
    params: PhysicalParams
    analog: AnalogOscillator
    schedule: Schedule = Schedule.EUCLIDEAN

    def __post_init__(self):
        if self.r_in <= 0 or self.r_out <= 0:
            raise DomainError("radial endpoints must be positive")


def _exp_bessel(exp_arg: complex, xi: complex, mu: float) -> complex:
    # e^{exp_arg} I_mu(xi) without overflow: ive(mu, xi) = e^{-|Re xi|} I_mu(xi)
    return complex(np.exp(exp_arg + abs(np.real(xi))) * specfun.bessel_i_scaled(mu, xi))


def propagator_elliptic(q: PropagatorQuery) -> complex:
    """Oscillator-class kernel; real-time form rejects caustics sin(wT) ~ 0."""
    a = q.analog
    if a.class_tag is not ClassTag.ELLIPTIC or a.omega_mag <= 0:
        raise ClassMismatchError("propagator_elliptic requires an elliptic analog")
    M, hbar, w, mu = a.mass, a.hbar, a.omega_mag, a.mu
    rp, rpp, T = q.r_in, q.r_out, q.time
    if q.schedule is Schedule.EUCLIDEAN:
        if T <= 0:
            raise ZeroTimeError("Euclidean kernel needs T > 0")
        sh = math.sinh(w * T)
        pref = M * w / (hbar * sh) * math.sqrt(rp * rpp)
        exp_arg = -M * w / (2 * hbar) * (rp * rp + rpp * rpp) / math.tanh(w * T)
        xi = M * w * rp * rpp / (hbar * sh)
        return pref * _exp_bessel(exp_arg, xi, mu)
    s = math.sin(w * T)
    if abs(s) < CAUSTIC_TOL:
        raise CausticError(f"sin(wT) = {s:.2e}; caustic phases are out of scope")
    pref = M * w / (1j * hbar * s) * math.sqrt(rp * rpp)
    exp_arg = 1j * M * w / (2 * hbar) * (rp * rp + rpp * rpp) / math.tan(w * T)
    xi = M * w * rp * rpp / (1j * hbar * s)
    return pref * _exp_bessel(exp_arg, xi, mu)


def propagator_parabolic(q: PropagatorQuery) -> complex:
    """Free-Hamiltonian-class kernel (w = 0 limit of the elliptic one)."""
    a = q.analog
    M, hbar, mu = a.mass, a.hbar, a.mu
    rp, rpp, T = q.r_in, q.r_out, q.time
    if T == 0:
        raise ZeroTimeError("propagator undefined at T = 0")
    if q.schedule is Schedule.EUCLIDEAN:
        if T < 0:
            raise ZeroTimeError("Euclidean kernel needs T > 0")
        pref = M / (hbar * T) * math.sqrt(rp * rpp)
        exp_arg = -M * (rp * rp + rpp * rpp) / (2 * hbar * T)
        xi = M * rp * rpp / (hbar * T)
        return pref * _exp_bessel(exp_arg, xi, mu)
    pref = M / (1j * hbar * T) * math.sqrt(rp * rpp)
    exp_arg = 1j * M * (rp * rp + rpp * rpp) / (2 * hbar * T)
    xi = M * rp * rpp / (1j * hbar * T)
    return pref * _exp_bessel(exp_arg, xi, mu)


def propagator_hyperbolic(q: PropagatorQuery) -> complex:
    """Inverted-oscillator-class kernel (continuation w -> -i w of the elliptic)."""
    a = q.analog
    if a.class_tag is not ClassTag.HYPERBOLIC or a.omega_mag <= 0:
        raise ClassMismatchError("propagator_hyperbolic requires a hyperbolic analog")
    M, hbar, w, mu = a.mass, a.hbar, a.omega_mag, a.mu
    rp, rpp, T = q.r_in, q.r_out, q.time
    if T == 0:
        raise ZeroTimeError("propagator undefined at T = 0")
    if q.schedule is Schedule.EUCLIDEAN:
        # T -> -iT turns sinh/coth into the trigonometric kernel
        if T < 0:
            raise ZeroTimeError("Euclidean kernel needs T > 0")
        s = math.sin(w * T)
        if abs(s) < CAUSTIC_TOL:
            raise CausticError(f"sin(wT) = {s:.2e} in the Euclidean hyperbolic kernel")
        pref = M * w / (hbar * s) * math.sqrt(rp * rpp)
        exp_arg = -M * w / (2 * hbar) * (rp * rp + rpp * rpp) / math.tan(w * T)
        xi = M * w * rp * rpp / (hbar * s)
        return pref * _exp_bessel(exp_arg, xi, mu)
    sh = math.sinh(w * T)
    pref = M * w / (1j * hbar * sh) * math.sqrt(rp * rpp)
    exp_arg = 1j * M * w / (2 * hbar) * (rp * rp + rpp * rpp) / math.tanh(w * T)
    xi = M * w * rp * rpp / (1j * hbar * sh)
    return pref * _exp_bessel(exp_arg, xi, mu)


def radial_propagator(q: PropagatorQuery) -> complex:
    """Dispatch on the analog's class tag."""
    tag = q.analog.class_tag
    if tag is ClassTag.ELLIPTIC:
        return propagator_elliptic(q)
    if tag is ClassTag.PARABOLIC:
        return propagator_parabolic(q)
    return propagator_hyperbolic(q)


def _angular_weight(d: int, l: int, cos_psi: float) -> float:
    nu = d / 2.0 - 1.0
    if d == 2:
        # nu -> 0 limit of Gamma(nu) (l+nu) C_l^{(nu)}: 1 for l = 0, 2 cos(l psi) above
        if l == 0:
            return 1.0
        return 2.0 * math.cos(l * math.acos(max(-1.0, min(1.0, cos_psi))))
    return (
        math.gamma(nu)
        * (l + nu)
        * float(specfun.gegenbauer(l, nu, cos_psi))
    )


def partial_wave_sum(
    x_in: np.ndarray,
    x_out: np.ndarray,
    r_in: float,
    r_out: float,
    time: float,
    params: PhysicalParams,
    analog: AnalogOscillator,
    l_max: int,
    schedule: Schedule = Schedule.EUCLIDEAN,
) -> tuple[complex, float]:
    """Truncated hyperspherical assembly of the full propagator.

    Returns the partial sum and the magnitude of the last retained term as a
    truncation diagnostic.
    """
    d = params.dim
    if d < 2:
        raise DomainError("partial_wave_sum requires dim >= 2")
    if l_max < 0:
        raise DomainError("l_max must be nonnegative")
    x_in = np.asarray(x_in, dtype=float)
    x_out = np.asarray(x_out, dtype=float)
    for v in (x_in, x_out):
        if abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise DomainError("direction vectors must be unit length")
    cos_psi = float(np.dot(x_in, x_out))
    pref = (r_in * r_out) ** (-(d - 1) / 2.0) / (2.0 * math.pi ** (d / 2.0))
    nu = params.nu()
    total = 0.0 + 0.0j
    last = 0.0
    for l in range(l_max + 1):
        mu_l = math.sqrt(params.coupling + (l + nu) ** 2)
        analog_l = AnalogOscillator(
            mass=analog.mass,
            hbar=analog.hbar,
            coupling=analog.coupling,
            mu=mu_l,
            omega_mag=analog.omega_mag,
            class_tag=analog.class_tag,
            sigma=analog.sigma,
            scale=analog.scale,
        )
        q = PropagatorQuery(
            r_in=r_in, r_out=r_out, time=time, params=params, analog=analog_l,
            schedule=schedule,
        )
        term = pref * _angular_weight(d, l, cos_psi) * radial_propagator(q)
        total += term
        last = abs(term)
    return total, last
