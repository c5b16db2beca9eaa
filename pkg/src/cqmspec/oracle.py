"""Brute-force validators independent of the closed forms.

Finite-difference spectra and resolvents of the reduced radial operator,
commutator checks of the symmetry algebra, Numerov integration of the radial
equation, Sturm-Liouville Green's functions built from numerically
differentiated solution pairs, and the time-sliced Besselian kernel
composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sps

from . import specfun
from .errors import (
    ClassMismatchError,
    ConvergenceError,
    DegenerateWronskianError,
    DomainError,
    SolveError,
)
from .params import AnalogOscillator, ClassTag, PhysicalParams
from .spectra import GreenKind

__all__ = [
    "RadialGrid",
    "fd_spectrum",
    "fd_green",
    "commutator_check",
    "numerov_regular",
    "wronskian_green",
    "timesliced_propagator",
]


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if self.r_min <= 0:
            raise DomainError("r_min must be positive (operator singular at 0)")
        if self.r_max <= self.r_min:
            raise DomainError("r_max must exceed r_min")
        if self.n_points < 200:
            raise DomainError("n_points must be at least 200")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)


def _omega_sq(analog: AnalogOscillator) -> float:
    """Signed squared frequency: negative for the inverted (hyperbolic) analog."""
    if analog.class_tag is ClassTag.HYPERBOLIC:
        return -analog.omega_mag**2
    return analog.omega_mag**2


def _fd_diag(analog: AnalogOscillator, r: np.ndarray, h: float):
    M, hbar, mu = analog.mass, analog.hbar, analog.mu
    kin = hbar**2 / (2.0 * M)
    pot = kin * (mu**2 - 0.25) / r**2 + 0.5 * M * _omega_sq(analog) * r**2
    diag = 2.0 * kin / h**2 + pot
    off = -kin / h**2 * np.ones(len(r) - 1)
    return diag, off


def fd_spectrum(analog: AnalogOscillator, grid: RadialGrid, n_eigen: int) -> np.ndarray:
    """Lowest analog eigenvalues from the Dirichlet tridiagonal discretization."""
    if analog.class_tag is not ClassTag.ELLIPTIC:
        raise ClassMismatchError("fd_spectrum compares against a discrete spectrum")
    r = grid.points
    diag, off = _fd_diag(analog, r, grid.h)
    try:
        vals = sla.eigh_tridiagonal(
            diag, off, select="i", select_range=(0, n_eigen - 1), eigvals_only=True
        )
    except Exception as exc:  # pragma: no cover - LAPACK failure path
        raise ConvergenceError(str(exc)) from exc
    return np.asarray(vals)


def fd_green(
    analog: AnalogOscillator,
    energy: float,
    epsilon: float,
    grid: RadialGrid,
    r_source: float,
    kind: GreenKind = GreenKind.RETARDED,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Resolvent column: solves (E +- i eps - H_FD) x = delta_j / h.

    Returns (grid points, column, source index).
    """
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    r = grid.points
    h = grid.h
    diag, off = _fd_diag(analog, r, h)
    s = 1.0 if kind is GreenKind.RETARDED else -1.0
    j = int(np.argmin(np.abs(r - r_source)))
    rhs = np.zeros(len(r), dtype=complex)
    rhs[j] = 1.0 / h
    ab = np.zeros((3, len(r)), dtype=complex)
    ab[0, 1:] = -off
    ab[1, :] = energy + s * 1j * epsilon - diag
    ab[2, :-1] = -off
    try:
        col = sla.solve_banded((1, 1), ab, rhs)
    except Exception as exc:
        raise SolveError(str(exc)) from exc
    return r, col, j


def commutator_check(
    params: PhysicalParams,
    grid: RadialGrid,
    n_bumps: int = 5,
) -> dict[str, float]:
    """Relative residuals of [D0,H]+ihH, [D0,K0]-ihK0, [H,K0]-2ihD0 on test bumps.

    Operators are the reduced radial forms: H with the inverse-square term
    (including the coupling), D0 = -(r p + p r)/4, K0 = M r^2 / 2.
    """
    M, hbar, mu = params.mass, params.hbar, params.mu()
    r = grid.points
    h = grid.h
    n = len(r)
    kin = hbar**2 / (2.0 * M)

    d1 = sps.diags([-np.ones(n - 1), np.ones(n - 1)], [-1, 1], format="csr") / (2.0 * h)
    d2 = sps.diags(
        [np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)], [-1, 0, 1], format="csr"
    ) / h**2
    rdiag = sps.diags(r, format="csr")
    H = -kin * d2 + sps.diags(kin * (mu**2 - 0.25) / r**2, format="csr")
    P = -1j * hbar * d1
    D0 = -0.25 * (rdiag @ P + P @ rdiag)
    K0 = 0.5 * M * sps.diags(r**2, format="csr")

    lo, hi = r[0], r[-1]
    span = hi - lo
    # keep the bumps >= 7 sigma away from the Dirichlet rows: the truncated
    # stencils amplify boundary tails by 1/h^2
    centers = lo + span * np.linspace(0.38, 0.62, n_bumps)
    width = span / 20.0

    def resid(A, B, target_op, coeff):
        worst = 0.0
        for c in centers:
            phi = np.exp(-((r - c) ** 2) / (2.0 * width**2)).astype(complex)
            comm = A @ (B @ phi) - B @ (A @ phi)
            target = coeff * (target_op @ phi)
            denom = np.linalg.norm(target)
            if denom == 0:
                raise DomainError("degenerate test function")
            worst = max(worst, np.linalg.norm(comm - target) / denom)
        return worst

    return {
        "[D0,H]+ihH": resid(D0, H, H, -1j * hbar),
        "[D0,K0]-ihK0": resid(D0, K0, K0, 1j * hbar),
        "[H,K0]-2ihD0": resid(H, K0, D0, 2j * hbar),
    }


def numerov_regular(
    analog: AnalogOscillator,
    energy: float,
    grid: RadialGrid,
    r_match: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Outward Numerov integration seeded with the regular power r^{mu+1/2}.

    Returns (grid points, samples) normalized to 1 at the match radius
    (grid midpoint by default).  Renormalizes every 100 steps to avoid
    overflow in the hyperbolic (inverted) potential.
    """
    M, hbar, mu = analog.mass, analog.hbar, analog.mu
    r = grid.points
    h = grid.h
    kin = hbar**2 / (2.0 * M)
    # U'' = f U with f = (V_eff - E)/kin; Numerov weight 1 - h^2 f / 12
    f = (mu**2 - 0.25) / r**2 + (0.5 * M * _omega_sq(analog) * r**2 - energy) / kin
    w = 1.0 - h * h * f / 12.0
    u = np.empty_like(r)
    # regular Frobenius seed r^{mu+1/2} (1 + c r^2); the r^2 correction keeps
    # the seed defect below the Numerov truncation error
    c2 = (-energy / kin) / (4.0 * (mu + 1.0))
    u[0] = r[0] ** (mu + 0.5) * (1.0 + c2 * r[0] ** 2)
    u[1] = r[1] ** (mu + 0.5) * (1.0 + c2 * r[1] ** 2)
    for i in range(1, len(r) - 1):
        u[i + 1] = ((12.0 - 10.0 * w[i]) * u[i] - w[i - 1] * u[i - 1]) / w[i + 1]
        if i % 100 == 0:
            m = abs(u[i + 1])
            if m > 1e100:
                u[: i + 2] /= m
    if r_match is None:
        r_match = 0.5 * (r[0] + r[-1])
    j = int(np.argmin(np.abs(r - r_match)))
    if u[j] == 0:
        raise DegenerateWronskianError("match-point value vanished")
    return r, u / u[j]


def _fd_derivative(fn, z: complex, h: float) -> complex:
    return (8.0 * (fn(z + h) - fn(z - h)) - (fn(z + 2 * h) - fn(z - 2 * h))) / (12.0 * h)


def wronskian_green(
    analog: AnalogOscillator,
    energy: float,
    r_in: float,
    r_out: float,
    kind: GreenKind = GreenKind.RETARDED,
) -> complex:
    """Sturm-Liouville resolvent from the regular/asymptotic solution pair.

    Whittaker pair for the oscillator classes, Bessel/Hankel pair for the
    parabolic class.  The Wronskian is computed by finite differences of the
    two solutions, so this route stays independent of the closed-form
    gamma-factor and Hankel-prefactor expressions.
    """
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    s = 1.0 if kind is GreenKind.RETARDED else -1.0
    if analog.class_tag is ClassTag.PARABOLIC:
        if energy <= 0:
            raise DomainError("parabolic resolvent requires E > 0")
        k = math.sqrt(2.0 * M * energy) / hbar

        def u_reg(r):
            return math.sqrt(r) * specfun.bessel_j(mu, k * r)

        def u_asym(r):
            # outgoing (retarded) / incoming (advanced) wave at infinity
            return np.sqrt(r) * specfun.hankel(1 if s > 0 else 2, mu, k * r)

    elif analog.class_tag is ClassTag.HYPERBOLIC:
        if w <= 0:
            raise ClassMismatchError("hyperbolic analog requires omega > 0")
        lam = s * 1j * energy / (2.0 * hbar * w)
        zfac = -s * 1j * M * w / hbar

        def u_reg(r):
            return specfun.whittaker_m(lam, mu / 2.0, zfac * r * r) / np.sqrt(complex(r))

        def u_asym(r):
            return specfun.whittaker_w(lam, mu / 2.0, zfac * r * r) / np.sqrt(complex(r))

    elif analog.class_tag is ClassTag.ELLIPTIC:
        if w <= 0:
            raise ClassMismatchError("elliptic analog requires omega > 0")
        lam = energy / (2.0 * hbar * w)
        zfac = M * w / hbar

        def u_reg(r):
            return specfun.whittaker_m(lam, mu / 2.0, complex(zfac * r * r)) / np.sqrt(complex(r))

        def u_asym(r):
            return specfun.whittaker_w(lam, mu / 2.0, complex(zfac * r * r)) / np.sqrt(complex(r))

    else:  # pragma: no cover
        raise ClassMismatchError(f"unsupported class {analog.class_tag}")

    r_less, r_gtr = min(r_in, r_out), max(r_in, r_out)
    rw = 0.5 * (r_less + r_gtr)
    step = 3e-3 * rw
    wr = u_reg(rw) * _fd_derivative(u_asym, rw, step) - _fd_derivative(u_reg, rw, step) * u_asym(rw)
    if abs(wr) < 1e-12:
        raise DegenerateWronskianError(f"|W| = {abs(wr):.2e} at E = {energy}")
    return (2.0 * M / hbar**2) * u_reg(r_less) * u_asym(r_gtr) / wr


def timesliced_propagator(
    analog: AnalogOscillator,
    r_in: float,
    r_out: float,
    t_euclid: float,
    n_slices: int,
    grid: RadialGrid,
) -> float:
    """Euclidean kernel composed from one-slice Besselian kernels by quadrature.

    One slice: K1(b, a; eps) = alpha sqrt(ab) exp(-alpha(a^2+b^2)/2 - eps V(a)/hbar)
    I_mu(alpha a b), alpha = M/(hbar eps), with the harmonic potential at the
    earlier node; the inverse-square part lives in the Bessel order mu.
    """
    if n_slices < 1:
        raise DomainError("n_slices must be positive")
    if t_euclid <= 0:
        raise DomainError("t_euclid must be positive")
    M, hbar, mu = analog.mass, analog.hbar, analog.mu
    eps = t_euclid / n_slices
    alpha = M / (hbar * eps)
    wsq = _omega_sq(analog)

    def potential(r):
        return 0.5 * M * wsq * r * r

    def one_slice(rb, ra):
        # scaled pairing: exp(-alpha (rb - ra)^2 / 2) absorbs the Bessel growth
        rb = np.asarray(rb, dtype=float)
        ra = np.asarray(ra, dtype=float)
        xi = alpha * ra * rb
        return (
            alpha
            * np.sqrt(ra * rb)
            * np.exp(-0.5 * alpha * (rb - ra) ** 2 - eps * potential(ra) / hbar)
            * specfun.bessel_i_scaled(mu, xi)
        )

    if n_slices == 1:
        return float(np.real(one_slice(r_out, r_in)))
    r = grid.points
    h = grid.h
    wq = np.full(len(r), h)
    wq[0] = wq[-1] = h / 2.0  # trapezoid closure
    vec = np.real(one_slice(r, r_in))
    if n_slices > 2:
        kmat = np.real(one_slice(r[:, None], r[None, :]))
        for _ in range(n_slices - 2):
            vec = kmat @ (wq * vec)
    return float(np.sum(wq * np.real(one_slice(r_out, r)) * vec))
