"""Closed-form spectral data: discrete elliptic ladder, continuum
eigenfunctions for the parabolic and hyperbolic classes, and the
retarded/advanced Green's functions of all three classes.

Energy arguments refer to the analog Hamiltonian (E-tilde); the generator
eigenvalue is sigma * E-tilde and both are reported on EigenData records.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import ClassMismatchError, DegenerateWronskianError, DomainError
from .params import AnalogOscillator, ClassTag, PhysicalParams

__all__ = [
    "GreenKind",
    "EigenData",
    "GreenValue",
    "elliptic_levels",
    "elliptic_eigenfunction",
    "parabolic_eigenfunction",
    "hyperbolic_eigenfunction",
    "green_parabolic",
    "green_hyperbolic",
    "green_elliptic",
    "spectral_series_elliptic",
]


class GreenKind(enum.Enum):
    RETARDED = "retarded"
    ADVANCED = "advanced"


@dataclass(frozen=True)
class EigenData:
    """One spectral point: discrete level or continuum label."""

    class_tag: ClassTag
    n: int | None
    energy_tilde: float  # analog-Hamiltonian eigenvalue
    energy: float        # generator eigenvalue E_G = sigma * E-tilde
    g_eigen: float       # E_G / hbar
    kappa: float | None = None  # hyperbolic Whittaker index


@dataclass(frozen=True)
class GreenValue:
    kind: GreenKind
    value: complex


def elliptic_levels(analog: AnalogOscillator, n_max: int) -> list[EigenData]:
    """Discrete ladder E-tilde_n = hbar w (1 + mu + 2n), n = 0..n_max."""
    if analog.class_tag is not ClassTag.ELLIPTIC:
        raise ClassMismatchError("elliptic_levels requires an elliptic analog")
    sigma = analog.sigma if analog.sigma != 0 else 1
    out = []
    for n in range(n_max + 1):
        e_tilde = analog.hbar * analog.omega_mag * (1.0 + analog.mu + 2 * n)
        e_gen = sigma * e_tilde
        out.append(
            EigenData(
                class_tag=ClassTag.ELLIPTIC,
                n=n,
                energy_tilde=e_tilde,
                energy=e_gen,
                g_eigen=e_gen / analog.hbar,
            )
        )
    return out


def elliptic_eigenfunction(analog: AnalogOscillator, n: int, r):
    """Normalized reduced radial eigenfunction U_n(r) of the elliptic analog."""
    if analog.class_tag is not ClassTag.ELLIPTIC:
        raise ClassMismatchError("elliptic_eigenfunction requires an elliptic analog")
    if n < 0:
        raise DomainError("n must be nonnegative")
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    beta = M * w / hbar
    x = beta * r * r
    lognorm = 0.5 * (math.log(2.0) + math.lgamma(n + 1) - math.lgamma(1.0 + mu + n))
    val = (
        np.exp(lognorm)
        * r ** (-0.5)
        * (np.sqrt(beta) * r) ** (mu + 1.0)
        * np.exp(-0.5 * x)
        * specfun.laguerre(n, mu, x)
    )
    return val if np.ndim(val) else float(val)


def parabolic_eigenfunction(params: PhysicalParams, energy: float, r):
    """Dirac-normalized continuum eigenfunction sqrt(M/hbar^2) sqrt(r) J_mu(k r)."""
    if energy < 0:
        raise DomainError("parabolic continuum requires E >= 0")
    M, hbar, mu = params.mass, params.hbar, params.mu()
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    k = math.sqrt(2.0 * M * energy) / hbar
    val = math.sqrt(M) / hbar * np.sqrt(r) * specfun.bessel_j(mu, k * r)
    return val if np.ndim(val) else float(val)


def hyperbolic_eigenfunction(analog: AnalogOscillator, energy: float, r):
    """Continuum eigenfunction of the inverted-oscillator analog (phase chi = 0).

    ``energy`` is the analog eigenvalue E-tilde; kappa = E-tilde/(2 hbar w).
    """
    if analog.class_tag is not ClassTag.HYPERBOLIC:
        raise ClassMismatchError("hyperbolic_eigenfunction requires a hyperbolic analog")
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    kappa = energy / (2.0 * hbar * w)
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r <= 0):
        raise DomainError("r must be positive")
    x = M * w * r * r / hbar
    pref = (
        math.exp(math.pi * kappa / 2.0)
        / math.sqrt(2.0 * math.pi * hbar * w)
        * specfun.gamma((1.0 + mu) / 2.0 + 1j * kappa)
        * specfun.rgamma(1.0 + mu)
    )
    vals = np.array(
        [specfun.whittaker_m(1j * kappa, mu / 2.0, -1j * xi) for xi in x],
        dtype=complex,
    )
    out = pref * vals / np.sqrt(r)
    return complex(out[0]) if scalar else out


def _kind_sign(kind: GreenKind) -> int:
    return 1 if kind is GreenKind.RETARDED else -1


def green_parabolic(
    params: PhysicalParams,
    energy: float | complex,
    r_in: float,
    r_out: float,
    kind: GreenKind = GreenKind.RETARDED,
) -> GreenValue:
    """G^(+-) = -+ pi i (M/hbar^2) sqrt(r' r'') J_mu(k r_<) H^(1,2)_mu(k r_>).

    ``energy`` may carry an imaginary part (the resolvent is analytic off the
    real axis); ``kind`` selects the branch approached for real energy.
    """
    if complex(energy).imag == 0.0 and complex(energy).real <= 0:
        raise DomainError("green_parabolic requires E > 0 on the real axis")
    if r_in <= 0 or r_out <= 0:
        raise DomainError("radial points must be positive")
    M, hbar, mu = params.mass, params.hbar, params.mu()
    s = _kind_sign(kind)
    k = np.sqrt(complex(2.0 * M * energy)) / hbar
    r_less, r_gtr = min(r_in, r_out), max(r_in, r_out)
    val = (
        -s * 1j * math.pi * (M / hbar**2)
        * math.sqrt(r_in * r_out)
        * specfun.bessel_j(mu, k * r_less)
        * specfun.hankel(1 if s > 0 else 2, mu, k * r_gtr)
    )
    return GreenValue(kind=kind, value=complex(val))


def green_hyperbolic(
    analog: AnalogOscillator,
    energy: float | complex,
    r_in: float,
    r_out: float,
    kind: GreenKind = GreenKind.RETARDED,
) -> GreenValue:
    """Whittaker-product resolvent of the inverted-oscillator analog.

    ``energy`` may carry an imaginary part; ``kind`` selects the branch
    approached for real energy.
    """
    if analog.class_tag is not ClassTag.HYPERBOLIC:
        raise ClassMismatchError("green_hyperbolic requires a hyperbolic analog")
    if r_in <= 0 or r_out <= 0:
        raise DomainError("radial points must be positive")
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    s = _kind_sign(kind)
    kappa = complex(energy) / (2.0 * hbar * w)
    if kappa.imag == 0.0:
        kappa = kappa.real
    x = M * w / hbar * np.array([min(r_in, r_out), max(r_in, r_out)]) ** 2
    x_less, x_gtr = x
    val = (
        -s * 1j / (hbar * w)
        * specfun.gamma((1.0 + mu) / 2.0 - s * 1j * kappa)
        * specfun.rgamma(1.0 + mu)
        / math.sqrt(r_in * r_out)
        * specfun.whittaker_w(s * 1j * kappa, mu / 2.0, -s * 1j * x_gtr)
        * specfun.whittaker_m(s * 1j * kappa, mu / 2.0, -s * 1j * x_less)
    )
    return GreenValue(kind=kind, value=complex(val))


def green_elliptic(
    analog: AnalogOscillator,
    energy: float | complex,
    r_in: float,
    r_out: float,
    kind: GreenKind = GreenKind.RETARDED,
) -> GreenValue:
    """Oscillator resolvent via the continuation i kappa -> lambda of the
    hyperbolic form; real for real energies off the discrete ladder."""
    if analog.class_tag is not ClassTag.ELLIPTIC:
        raise ClassMismatchError("green_elliptic requires an elliptic analog")
    if r_in <= 0 or r_out <= 0:
        raise DomainError("radial points must be positive")
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    lam = complex(energy) / (2.0 * hbar * w)
    if lam.imag == 0.0:
        lam = lam.real
        rounded = round((1.0 + mu) / 2.0 - lam)
        if abs((1.0 + mu) / 2.0 - lam - rounded) < 1e-10 and rounded <= 0:
            raise DegenerateWronskianError(f"E = {energy} lies on the discrete ladder")
    pole_arg = (1.0 + mu) / 2.0 - lam
    x = M * w / hbar * np.array([min(r_in, r_out), max(r_in, r_out)]) ** 2
    x_less, x_gtr = x
    val = (
        -1.0 / (hbar * w)
        * specfun.gamma(pole_arg)
        * specfun.rgamma(1.0 + mu)
        / math.sqrt(r_in * r_out)
        * specfun.whittaker_w(lam, mu / 2.0, complex(x_gtr))
        * specfun.whittaker_m(lam, mu / 2.0, complex(x_less))
    )
    return GreenValue(kind=kind, value=complex(val))


def spectral_series_elliptic(
    analog: AnalogOscillator,
    r_in: float,
    r_out: float,
    t_euclid: float,
    n_terms: int,
) -> tuple[float, float]:
    """Partial eigensum of the Euclidean elliptic kernel; returns (sum, |last term|)."""
    if t_euclid <= 0:
        raise DomainError("t_euclid must be positive")
    if n_terms < 1:
        raise DomainError("n_terms must be positive")
    hbar, w = analog.hbar, analog.omega_mag
    total = 0.0
    last = 0.0
    for n in range(n_terms):
        e_tilde = hbar * w * (1.0 + analog.mu + 2 * n)
        term = (
            math.exp(-e_tilde * t_euclid / hbar)
            * elliptic_eigenfunction(analog, n, r_out)
            * elliptic_eigenfunction(analog, n, r_in)
        )
        total += term
        last = abs(term)
    return total, last
