"""Fourier inversion of continuous-spectrum propagators and the identity catalog.

The whole-line transform of a continuous-class kernel returns the Dirac
normalized wave-function product F(E; r'', r'); the half-line transforms give
the retarded/advanced resolvents.  Oscillatory time integrals are evaluated on
fixed Gauss-Legendre panels.  The essential singularity of the kernels at
T -> 0 is handled by descending into the complex plane, where the integrand
decays, and the damped large-T tails are extrapolated to zero damping over a
geometric epsilon ladder.  Hyperbolic whole-line transforms always run on a
line Im(zeta) = c inside the strip (-pi/2, 0), where the integrand falls off
exponentially.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from ._quadrature import geometric_edges, gl_segments, uniform_edges
from .errors import ContourError, DomainError, NonConvergence
from .params import AnalogOscillator, ClassTag, PhysicalParams
from .spectra import GreenKind

__all__ = [
    "QuadratureSpec",
    "CheckReport",
    "fourier_invert",
    "half_line_transform",
    "verify_identity",
    "run_identity_suite",
    "IDENTITY_IDS",
    "IDENTITY_TOLERANCES",
    "DEFAULT_SAMPLES",
]

_REL_FLOOR = 1e-300


@dataclass(frozen=True)
class QuadratureSpec:
    """Deterministic quadrature controls.

    t_max: truncation of the damped time integral in units of hbar/epsilon
        (parabolic class) or of |Re zeta| (hyperbolic class).
    n_panels: lower bound on the panel count of the principal oscillatory
        section; the per-query resolution rule may raise it.
    damping_eps: geometric epsilon ladder, in units of the natural energy
        scale, extrapolated to zero by Lagrange interpolation.
    contour_offset: Im(zeta) for hyperbolic whole-line transforms.
    """

    t_max: float = 40.0
    n_panels: int = 16
    damping_eps: tuple[float, ...] = (0.2, 0.1, 0.05, 0.025)
    contour_offset: float = -math.pi / 4

    def __post_init__(self):
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.n_panels < 1:
            raise ValueError("n_panels must be a positive integer")
        if not self.damping_eps or any(e <= 0 for e in self.damping_eps):
            raise ValueError("damping_eps must be a nonempty list of positive values")
        if not -math.pi / 2 < self.contour_offset < 0:
            raise ContourError(
                f"contour_offset {self.contour_offset} outside (-pi/2, 0)"
            )


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class CheckReport:
    identity_id: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool
    detail: str = ""

    @staticmethod
    def build(identity_id, lhs, rhs, tolerance, detail="", absolute=False):
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(abs(lhs), abs(rhs), _REL_FLOOR)
        err = abs_err if absolute else rel_err
        return CheckReport(
            identity_id=identity_id,
            lhs=lhs,
            rhs=rhs,
            abs_err=abs_err,
            rel_err=rel_err,
            tolerance=tolerance,
            passed=bool(err <= tolerance),
            detail=detail,
        )


def _extrapolate_to_zero(eps_values, results):
    """Lagrange interpolation of results(eps) at eps = 0."""
    eps_values = [float(e) for e in eps_values]
    total = 0.0 + 0.0j
    for i, (ei, ri) in enumerate(zip(eps_values, results)):
        wgt = 1.0
        for j, ej in enumerate(eps_values):
            if j != i:
                wgt *= (0.0 - ej) / (ei - ej)
        total += wgt * ri
    return total


# ---------------------------------------------------------------------------
# class kernels as vectorized functions of complex time
# ---------------------------------------------------------------------------

_BESSEL_ASYM_SWITCH = 1e6


def _exp_bessel_vec(exp_arg, xi, mu):
    """e^{exp_arg} I_mu(xi) elementwise, stable deep into the descent contours.

    AMOS handles |xi| up to ~1e8; beyond the switch the two Bessel exponentials
    are combined with exp_arg analytically, which keeps the dominant phase
    cancellation exact on the T -> 0 rays.
    """
    exp_arg = np.asarray(exp_arg, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    exp_arg, xi = np.broadcast_arrays(exp_arg, xi)
    out = np.empty(xi.shape, dtype=complex)
    small = np.abs(xi) <= _BESSEL_ASYM_SWITCH
    if np.any(small):
        xs = xi[small]
        out[small] = np.exp(exp_arg[small] + np.abs(xs.real)) * specfun.bessel_i_scaled(mu, xs)
    if np.any(~small):
        xb = xi[~small]
        eb = exp_arg[~small]
        inv = 1.0 / xb
        pp = np.ones_like(xb)
        pm = np.ones_like(xb)
        term_p = np.ones_like(xb)
        term_m = np.ones_like(xb)
        for k in range(1, 6):
            c = (4.0 * mu * mu - (2 * k - 1) ** 2) / (8.0 * k)
            term_p = term_p * (-c) * inv
            term_m = term_m * c * inv
            pp += term_p
            pm += term_m
        s = np.where(np.angle(xb) > -math.pi / 2, 1.0, -1.0)
        front = 1.0 / np.sqrt(2.0 * math.pi * xb)
        out[~small] = front * (
            np.exp(eb + xb) * pp
            + np.exp(eb - xb + 1j * s * (mu + 0.5) * math.pi) * pm
        )
    return out


def _kernel_parabolic(analog: AnalogOscillator, r_in, r_out, T):
    M, hbar, mu = analog.mass, analog.hbar, analog.mu
    T = np.asarray(T, dtype=complex)
    pref = M / (1j * hbar * T) * math.sqrt(r_in * r_out)
    exp_arg = 1j * M * (r_in**2 + r_out**2) / (2 * hbar * T)
    xi = M * r_in * r_out / (1j * hbar * T)
    return pref * _exp_bessel_vec(exp_arg, xi, mu)


def _kernel_hyperbolic_zeta(analog: AnalogOscillator, r_in, r_out, zeta):
    """Hyperbolic kernel expressed in zeta = omega T, times dT/dzeta = 1/omega."""
    M, hbar, w, mu = analog.mass, analog.hbar, analog.omega_mag, analog.mu
    zeta = np.asarray(zeta, dtype=complex)
    sh = np.sinh(zeta)
    pref = M / (1j * hbar * sh) * math.sqrt(r_in * r_out)
    exp_arg = 1j * M * w * (r_in**2 + r_out**2) / (2 * hbar) / np.tanh(zeta)
    xi = M * w * r_in * r_out / (1j * hbar * sh)
    return pref * _exp_bessel_vec(exp_arg, xi, mu)


# ---------------------------------------------------------------------------
# parabolic class: damped half-line integrals with a complex descent at T -> 0
# ---------------------------------------------------------------------------


def _parabolic_halfline(analog, params, energy, r_in, r_out, eps, q, forward=True):
    """integral_0^inf e^{(iE - eps)T/hbar} K(+-T) dT on a descent-plus-axis path."""
    hbar = analog.hbar
    scale = max(abs(energy), 1.0)
    t0 = hbar / scale
    t_end = q.t_max * hbar / eps
    # sign bookkeeping: the backward (advanced) integral uses K(-T) and kernel
    # analyticity requires the descent to flip into the other half plane
    descent = t0 * (1.0 - 1.0j) / math.sqrt(2.0) if forward else t0 * (1.0 + 1.0j) / math.sqrt(2.0)
    phase = (1j * energy - eps) / hbar if forward else (-1j * energy - eps) / hbar

    def integrand(T):
        karg = T if forward else -T
        return np.exp(phase * T) * _kernel_parabolic(analog, r_in, r_out, karg)

    total = 0.0 + 0.0j
    # 1. descent ray, geometric panels towards the essential singularity
    tiny = 1e-10
    edges = geometric_edges(tiny, 1.0, ratio=1.9).astype(complex) * descent
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    # 2. vertical return to the real axis
    edges = descent + (t0 - descent) * np.linspace(0.0, 1.0, 9).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    # 3. damped oscillatory tail on the real axis
    width = math.pi * hbar / scale
    n_panels = max(q.n_panels, int(math.ceil((t_end - t0) / width)))
    edges = uniform_edges(t0, t_end, n_panels).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    return total


# ---------------------------------------------------------------------------
# hyperbolic class: shifted-line whole transforms, descent-path half transforms
# ---------------------------------------------------------------------------


def _hyperbolic_line_integral(analog, energy, r_in, r_out, q):
    """integral over Im(zeta) = c of e^{2 i kappa zeta} K dzeta / omega."""
    hbar, w, mu = analog.hbar, analog.omega_mag, analog.mu
    kappa = energy / (2.0 * hbar * w)
    c = q.contour_offset
    if not -math.pi / 2 < c < 0:
        raise ContourError(f"contour offset {c} outside (-pi/2, 0)")
    decay = 1.0 + mu
    s_max = min(q.t_max, (45.0 + 2.0 * abs(kappa) * abs(c)) / decay)
    width = math.pi / max(2.0 * abs(kappa), 1.0)
    n_panels = max(q.n_panels, int(math.ceil(2.0 * s_max / width)))
    edges = (uniform_edges(-s_max, s_max, n_panels) + 1j * c).astype(complex)
    nodes, wgts = gl_segments(edges)
    phase = np.exp(2j * kappa * nodes)
    vals = _kernel_hyperbolic_zeta(analog, r_in, r_out, nodes)
    return np.sum(wgts * phase * vals) / w


def _hyperbolic_halfline(analog, energy, r_in, r_out, eps, q, forward=True):
    """integral_0^inf e^{(iE - eps)T/hbar} K(+-T) dT in the zeta variable."""
    hbar, w, mu = analog.hbar, analog.omega_mag, analog.mu
    kappa = energy / (2.0 * hbar * w)
    eps_k = eps / (2.0 * hbar * w)
    zeta0 = 1.0
    depth = 0.45 * math.pi
    descent = zeta0 - 1j * depth if forward else zeta0 + 1j * depth

    def integrand(zeta):
        karg = zeta if forward else -zeta
        phase = (2j * kappa - 2.0 * eps_k) * zeta if forward else (-2j * kappa - 2.0 * eps_k) * zeta
        return np.exp(phase) * _kernel_hyperbolic_zeta(analog, r_in, r_out, karg) / w

    total = 0.0 + 0.0j
    tiny = 1e-10
    edges = geometric_edges(tiny, 1.0, ratio=1.9).astype(complex) * descent
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    edges = descent + (zeta0 - descent) * np.linspace(0.0, 1.0, 9).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    decay = 1.0 + mu + 2.0 * eps_k
    z_end = zeta0 + min(q.t_max, 45.0 / decay)
    width = math.pi / max(2.0 * abs(kappa), 1.0)
    n_panels = max(q.n_panels, int(math.ceil((z_end - zeta0) / width)))
    edges = uniform_edges(zeta0, z_end, n_panels).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * integrand(nodes))
    return total


# ---------------------------------------------------------------------------
# public transforms
# ---------------------------------------------------------------------------


def _natural_scale(energy, analog):
    return max(abs(energy), analog.hbar * analog.omega_mag, 1.0)


def fourier_invert(
    class_tag: ClassTag,
    params: PhysicalParams,
    analog: AnalogOscillator,
    energy: float,
    r_in: float,
    r_out: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> complex:
    """F(E; r'', r') = (1/2 pi hbar) integral dT e^{iET/hbar} K(T).

    Parabolic: folded to the positive half line via K(-T) = conj K(T) and
    damping-extrapolated.  Hyperbolic: evaluated on the shifted zeta line.
    """
    hbar = analog.hbar
    if class_tag is ClassTag.PARABOLIC:
        scale = _natural_scale(energy, analog)
        ladder = [e * scale for e in q.damping_eps]
        vals = [
            _parabolic_halfline(analog, params, energy, r_in, r_out, eps, q)
            for eps in ladder
        ]
        results = [v.real / (math.pi * hbar) for v in vals]
        out = _extrapolate_to_zero(ladder, results).real
        _check_residual(ladder, results, out, q)
        return complex(out)
    if class_tag is ClassTag.HYPERBOLIC:
        val = _hyperbolic_line_integral(analog, energy, r_in, r_out, q)
        return complex(val / (2.0 * math.pi * hbar))
    raise DomainError("fourier_invert supports the continuous classes only")


def _check_residual(ladder, results, out, q):
    if len(ladder) < 3:
        return
    sub = _extrapolate_to_zero(ladder[1:], results[1:])
    resid = abs(out - sub)
    magnitude = max(abs(out), abs(results[-1]), 1e-12)
    if resid > 0.05 * magnitude + 1e-5:
        raise NonConvergence(
            f"damping extrapolation residual {resid:.3g} vs magnitude {magnitude:.3g}"
        )


def half_line_transform(
    class_tag: ClassTag,
    params: PhysicalParams,
    analog: AnalogOscillator,
    energy: float,
    r_in: float,
    r_out: float,
    kind: GreenKind = GreenKind.RETARDED,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> complex:
    """G^(+-) = +- (1/i hbar) integral theta(+-T) e^{iET/hbar} K(T) dT, eps -> 0."""
    hbar = analog.hbar
    forward = kind is GreenKind.RETARDED
    scale = _natural_scale(energy, analog)
    ladder = [e * scale for e in q.damping_eps]
    if class_tag is ClassTag.PARABOLIC:
        vals = [
            _parabolic_halfline(analog, params, energy, r_in, r_out, eps, q, forward=forward)
            for eps in ladder
        ]
    elif class_tag is ClassTag.HYPERBOLIC:
        vals = [
            _hyperbolic_halfline(analog, energy, r_in, r_out, eps, q, forward=forward)
            for eps in ladder
        ]
    else:
        raise DomainError("half_line_transform supports the continuous classes only")
    sign = 1.0 if forward else -1.0
    results = [sign * v / (1j * hbar) for v in vals]
    out = _extrapolate_to_zero(ladder, results)
    _check_residual(ladder, results, out, q)
    return complex(out)


# ---------------------------------------------------------------------------
# identity catalog
# ---------------------------------------------------------------------------

IDENTITY_IDS = (
    "HILLE_HARDY",
    "MEHLER_HEINE",
    "WEBER",
    "BESSEL_PRODUCT_LINE",
    "BESSEL_HANKEL_HALFLINE",
    "WHITTAKER_DOUBLE",
    "WHITTAKER_REAL_LINE",
    "WHITTAKER_CONTOUR",
    "WHITTAKER_HALFLINE",
    "SEMICIRCUITAL",
    "CONNECTION",
    "WRONSKIAN",
    "HANKEL_SUM",
)

IDENTITY_TOLERANCES = {
    "HILLE_HARDY": 1e-10,
    "MEHLER_HEINE": 5e-4,  # absolute, O(1/n) limit formula at n = 1e4
    "WEBER": 1e-9,
    "BESSEL_PRODUCT_LINE": 1e-8,
    "BESSEL_HANKEL_HALFLINE": 1e-8,
    "WHITTAKER_DOUBLE": 1e-8,
    "WHITTAKER_REAL_LINE": 1e-9,
    "WHITTAKER_CONTOUR": 1e-6,
    "WHITTAKER_HALFLINE": 1e-8,
    "SEMICIRCUITAL": 1e-12,
    "CONNECTION": 1e-8,
    "WRONSKIAN": 1e-6,
    "HANKEL_SUM": 1e-10,
}

_ABSOLUTE_IDS = {"MEHLER_HEINE"}

DEFAULT_SAMPLES = {
    "HILLE_HARDY": {"x": 1.0, "y": 1.0, "z": 0.5, "mu": 0.5, "n_terms": 200},
    "MEHLER_HEINE": {"n": 10_000, "x": 2.0, "mu": 0.5},
    "WEBER": {"a": 1.2, "b": 0.8, "c": 1.0, "mu": 0.5},
    "BESSEL_PRODUCT_LINE": {"z1": 0.9, "z2": 1.7, "mu": 0.5, "c": 1.0},
    "BESSEL_HANKEL_HALFLINE": {"z1": 0.9, "z2": 1.7, "mu": 0.5, "c": 1.0, "kind": 1},
    "WHITTAKER_DOUBLE": {"kappa": 0.4, "mu": 0.5, "x1": 0.9, "x2": 1.7},
    "WHITTAKER_REAL_LINE": {"kappa": 0.4, "mu": 0.5, "x1": 0.9, "x2": 1.7},
    "WHITTAKER_CONTOUR": {"kappa": 0.4, "mu": 0.5, "x1": 0.9, "x2": 1.7, "c": -math.pi / 4},
    "WHITTAKER_HALFLINE": {"kappa": 0.4, "mu": 0.5, "x1": 0.9, "x2": 1.7},
    "SEMICIRCUITAL": {"lam": 0.4j, "mu": 0.7, "z": 1.3},
    "CONNECTION": {"lam": 0.25j, "mu": 0.5, "z": 2.0 - 0.1j},
    "WRONSKIAN": {"n_points": 20, "seed": 2024},
    "HANKEL_SUM": {"n_points": 20, "seed": 2024},
}


def _gammas(kappa, mu):
    gp = specfun.gamma((1.0 + mu) / 2.0 + 1j * kappa)
    gm = specfun.gamma((1.0 + mu) / 2.0 - 1j * kappa)
    return gp, gm


def _mreg(lam, mu, z):
    return specfun.whittaker_m_reg(lam, mu / 2.0, z)


def _check_hille_hardy(s, q):
    x, y, z, mu = s["x"], s["y"], s["z"], s["mu"]
    n_terms = int(s.get("n_terms", 200))
    if abs(z) >= 1:
        raise DomainError("HILLE_HARDY requires |z| < 1")
    acc = 0.0
    for n in range(n_terms):
        acc += (
            math.exp(math.lgamma(n + 1) - math.lgamma(n + mu + 1))
            * specfun.laguerre(n, mu, x)
            * specfun.laguerre(n, mu, y)
            * z**n
        )
    closed = (
        (x * y * z) ** (-mu / 2.0)
        / (1.0 - z)
        * math.exp(-z * (x + y) / (1.0 - z))
        * specfun.bessel_i(mu, 2.0 * math.sqrt(x * y * z) / (1.0 - z))
    )
    return acc, closed, f"series n_terms={n_terms}"


def _check_mehler_heine(s, q):
    n, x, mu = int(s["n"]), s["x"], s["mu"]
    lhs = n ** (-mu) * specfun.laguerre(n, mu, x / n)
    rhs = x ** (-mu / 2.0) * specfun.bessel_j(mu, 2.0 * math.sqrt(x))
    return lhs, rhs, f"n={n}"


def _check_weber(s, q):
    from scipy.integrate import quad

    a, b, c, mu = s["a"], s["b"], s["c"], s["mu"]
    if mu <= -1:
        raise DomainError("WEBER requires Re mu > -1")
    if abs(cmath.phase(complex(c))) >= math.pi / 4:
        raise DomainError("WEBER requires |arg c| < pi/4")

    def f(x):
        return math.exp(-(c**2) * x * x) * specfun.bessel_j(mu, a * x) * specfun.bessel_j(mu, b * x) * x

    val, _ = quad(f, 0.0, 50.0, limit=400, epsabs=1e-14, epsrel=1e-13)
    closed = (
        1.0 / (2.0 * c**2)
        * math.exp(-(a**2 + b**2) / (4.0 * c**2))
        * specfun.bessel_i(mu, a * b / (2.0 * c**2))
    )
    return val, closed, "adaptive quadrature on [0, 50]"


def _bromwich_path(c, y0=10.0, y_far=110.0, slope=1.0):
    """Vertical Bromwich segment with arms bent into Re s < 0 for decay."""
    up = [c + 1j * y0, c - slope * (y_far - y0) + 1j * y_far]
    down = [c - slope * (y_far - y0) - 1j * y_far, c - 1j * y0]
    mid = [c - 1j * y0, c + 1j * y0]
    return down, mid, up


def _bessel_product_integrand(mu, z1, z2, s):
    return (
        np.exp(s / 2.0 - (z1**2 + z2**2) / (2.0 * s) + np.abs((z1 * z2 / s).real))
        * specfun.bessel_i_scaled(mu, z1 * z2 / s)
        / s
    )


def _check_bessel_product_line(s, q):
    z1, z2, mu, c = s["z1"], s["z2"], s["mu"], s["c"]
    if mu <= -1:
        raise DomainError("BESSEL_PRODUCT_LINE requires Re mu > -1")
    if c <= 0:
        raise DomainError("BESSEL_PRODUCT_LINE requires c > 0")
    total = 0.0 + 0.0j
    down, mid, up = _bromwich_path(c)
    for seg, n_panels in ((down, 40), (mid, 40), (up, 40)):
        edges = seg[0] + (seg[1] - seg[0]) * np.linspace(0, 1, n_panels + 1)
        nodes, wgts = gl_segments(edges.astype(complex))
        total += np.sum(wgts * _bessel_product_integrand(mu, z1, z2, nodes))
    lhs = total / (2j * math.pi)
    rhs = specfun.bessel_j(mu, z1) * specfun.bessel_j(mu, z2)
    return lhs, rhs, "bromwich contour, bent arms"


def _check_bessel_hankel_halfline(s, q):
    z1, z2, mu, c, kind = s["z1"], s["z2"], s["mu"], s["c"], int(s.get("kind", 1))
    if mu <= -1:
        raise DomainError("requires Re mu > -1")
    z_less, z_gtr = min(z1, z2), max(z1, z2)
    sign = 1.0 if kind == 1 else -1.0
    # path 0 -> c on the real axis (essential zero at s = 0), then bent arm
    total = 0.0 + 0.0j
    a_half = (z1**2 + z2**2) / 2.0
    tiny = a_half / 90.0
    edges = geometric_edges(tiny, c, ratio=1.7).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * _bessel_product_integrand(mu, z1, z2, nodes))
    y0, y_far, slope = 10.0, 110.0, 1.0
    seg = [complex(c), c + sign * 1j * y0]
    edges = seg[0] + (seg[1] - seg[0]) * np.linspace(0, 1, 41)
    nodes, wgts = gl_segments(edges.astype(complex))
    total += np.sum(wgts * _bessel_product_integrand(mu, z1, z2, nodes))
    seg = [c + sign * 1j * y0, c - slope * (y_far - y0) + sign * 1j * y_far]
    edges = seg[0] + (seg[1] - seg[0]) * np.linspace(0, 1, 41)
    nodes, wgts = gl_segments(edges.astype(complex))
    total += np.sum(wgts * _bessel_product_integrand(mu, z1, z2, nodes))
    lhs = sign * total / (1j * math.pi)
    rhs = specfun.hankel(kind, mu, z_gtr) * specfun.bessel_j(mu, z_less)
    return lhs, rhs, f"half contour kind={kind}"


def _check_whittaker_double(s, q):
    # product representation from the squared Bessel-integral form; the
    # second gamma factor carries +lambda_2 (signs pinned by the real-line
    # and contour variants below)
    kappa, mu, x1, x2 = s["kappa"], s["mu"], s["x1"], s["x2"]
    lam1, lam2 = 1j * kappa, -1j * kappa
    z1, z2 = -1j * x1, 1j * x2
    sq1, sq2 = cmath.sqrt(z1), cmath.sqrt(z2)

    t_edges = np.concatenate([geometric_edges(1e-8, 1.0, 1.9), np.linspace(1.0, 6.0, 11)[1:]])
    tn, tw = gl_segments(t_edges.astype(complex))
    f1 = np.exp(-tn * tn) * np.exp(2.0 * lam1 * np.log(tn)) * specfun.bessel_j(mu, 2.0 * tn * sq1)
    f2 = np.exp(-tn * tn) * np.exp(2.0 * lam2 * np.log(tn)) * specfun.bessel_j(mu, 2.0 * tn * sq2)
    i1 = np.sum(tw * f1)
    i2 = np.sum(tw * f2)
    pref = (
        4.0 * sq1 * sq2 * cmath.exp((z1 + z2) / 2.0)
        * specfun.rgamma((1.0 + mu) / 2.0 + lam1)
        * specfun.rgamma((1.0 + mu) / 2.0 + lam2)
    )
    lhs = pref * i1 * i2
    rhs = _mreg(lam1, mu, z1) * _mreg(lam2, mu, z2)
    return lhs, rhs, "separable double integral"


def _whittaker_line_integrand(kappa, mu, x1, x2, zeta):
    sh = np.sinh(np.asarray(zeta, dtype=complex))
    xi = math.sqrt(x1 * x2) / (1j * sh)
    exp_arg = 2j * kappa * zeta + 0.5j * (x1 + x2) / np.tanh(zeta)
    return _exp_bessel_vec(exp_arg, xi, mu) / (1j * sh)


def _check_whittaker_real_line(s, q):
    kappa, mu, x1, x2 = s["kappa"], s["mu"], s["x1"], s["x2"]

    def f(t):
        ch = np.cosh(t)
        return (
            np.exp(2j * kappa * t + 0.5j * (x1 + x2) * np.tanh(t))
            * specfun.bessel_i(mu, math.sqrt(x1 * x2) / ch)
            / ch
        )

    s_max = 45.0 / (1.0 + mu)
    width = math.pi / max(2.0 * abs(kappa), 1.0)
    n_panels = max(q.n_panels, int(math.ceil(2.0 * s_max / width)))
    edges = uniform_edges(-s_max, s_max, n_panels).astype(complex)
    nodes, wgts = gl_segments(edges)
    integral = np.sum(wgts * f(nodes))
    gp, gm = _gammas(kappa, mu)
    lhs = math.sqrt(x1 * x2) / (gp * gm) * integral
    rhs = _mreg(1j * kappa, mu, -1j * x1) * _mreg(-1j * kappa, mu, 1j * x2)
    return lhs, rhs, "real-line integral"


def _check_whittaker_contour(s, q):
    kappa, mu, x1, x2 = s["kappa"], s["mu"], s["x1"], s["x2"]
    c = s.get("c", q.contour_offset)
    if not -math.pi / 2 < c < 0:
        raise ContourError(f"contour offset {c} outside (-pi/2, 0)")
    s_max = (45.0 + 2.0 * abs(kappa) * abs(c)) / (1.0 + mu)
    width = math.pi / max(2.0 * abs(kappa), 1.0)
    n_panels = max(q.n_panels, int(math.ceil(2.0 * s_max / width)))
    edges = (uniform_edges(-s_max, s_max, n_panels) + 1j * c).astype(complex)
    nodes, wgts = gl_segments(edges)
    integral = np.sum(wgts * _whittaker_line_integrand(kappa, mu, x1, x2, nodes))
    gp, gm = _gammas(kappa, mu)
    lhs = math.exp(-math.pi * kappa) * math.sqrt(x1 * x2) / (gp * gm) * integral
    rhs = _mreg(1j * kappa, mu, -1j * x1) * _mreg(-1j * kappa, mu, 1j * x2)
    return lhs, rhs, f"shifted line c={c:.4f}"


def _check_whittaker_halfline(s, q):
    # half-line variant with -i x arguments: the greater/lesser product
    # W_{ik}(-i x_>) Mreg_{ik}(-i x_<); requires x1 != x2
    kappa, mu, x1, x2 = s["kappa"], s["mu"], s["x1"], s["x2"]
    if x1 == x2:
        raise DomainError("WHITTAKER_HALFLINE requires distinct x1, x2")
    x_less, x_gtr = min(x1, x2), max(x1, x2)

    def f(zeta):
        return _whittaker_line_integrand(kappa, mu, x1, x2, zeta)

    total = 0.0 + 0.0j
    descent = 1.0 - 1j * 0.45 * math.pi
    edges = geometric_edges(1e-10, 1.0, 1.9).astype(complex) * descent
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * f(nodes))
    edges = descent + (1.0 - descent) * np.linspace(0, 1, 9).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * f(nodes))
    z_end = 1.0 + 45.0 / (1.0 + mu)
    width = math.pi / max(2.0 * abs(kappa), 1.0)
    n_panels = max(q.n_panels, int(math.ceil((z_end - 1.0) / width)))
    edges = uniform_edges(1.0, z_end, n_panels).astype(complex)
    nodes, wgts = gl_segments(edges)
    total += np.sum(wgts * f(nodes))

    _, gm = _gammas(kappa, mu)
    lhs = math.sqrt(x1 * x2) / gm * total
    rhs = specfun.whittaker_w(1j * kappa, mu / 2.0, -1j * x_gtr) * _mreg(
        1j * kappa, mu, -1j * x_less
    )
    return lhs, rhs, "descent-path half line"


def _check_semicircuital(s, q):
    lam, mu, z = s["lam"], s["mu"], s["z"]
    out = []
    for sign in (+1, -1):
        zz = complex(z) * cmath.exp(sign * 1j * math.pi)
        if sign < 0:
            zz = complex(zz.real, -abs(zz.imag))  # signed zero selects the lower lip
        lhs = _mreg(lam, mu, zz)
        rhs = cmath.exp(sign * (mu + 1.0) * 1j * math.pi / 2.0) * _mreg(-lam, mu, complex(z))
        out.append((lhs, rhs))
    # report the worse sign
    errs = [abs(l - r) / max(abs(l), abs(r), _REL_FLOOR) for l, r in out]
    i = int(np.argmax(errs))
    return out[i][0], out[i][1], f"both continuations, worst sign index {i}"


def _check_connection(s, q):
    lam, mu, z = complex(s["lam"]), s["mu"], complex(s["z"])
    # sign chosen so e^{+- i pi} z stays on the principal branch
    sign = +1 if z.imag <= 0 else -1
    zz = z * cmath.exp(sign * 1j * math.pi)
    gp = specfun.gamma((1.0 + mu) / 2.0 + lam)
    gm = specfun.gamma((1.0 + mu) / 2.0 - lam)
    lhs = _mreg(lam, mu, z)
    rhs = cmath.exp(sign * lam * 1j * math.pi) * (
        cmath.exp(-sign * (mu + 1.0) * 1j * math.pi / 2.0) / gp * specfun.whittaker_w(lam, mu / 2.0, z)
        + specfun.whittaker_w(-lam, mu / 2.0, zz) / gm
    )
    return lhs, rhs, f"sign={sign:+d}"


def _fd_derivative(f, z, h):
    return (8.0 * (f(z + h) - f(z - h)) - (f(z + 2 * h) - f(z - 2 * h))) / (12.0 * h)


def _check_wronskian(s, q):
    n_points = int(s.get("n_points", 20))
    rng = np.random.default_rng(int(s.get("seed", 2024)))
    worst = None
    for _ in range(n_points):
        mu = rng.uniform(0.1, 1.8)
        kappa = rng.uniform(-1.2, 1.2)
        lam = 1j * kappa
        z = complex(rng.uniform(0.4, 5.0), rng.uniform(-2.0, 2.0))
        h = 1e-3 * max(abs(z), 1.0)
        m = lambda t: specfun.whittaker_m_reg(lam, mu / 2.0, t)
        w = lambda t: specfun.whittaker_w(lam, mu / 2.0, t)
        wr = m(z) * _fd_derivative(w, z, h) - _fd_derivative(m, z, h) * w(z)
        closed = -specfun.rgamma((1.0 + mu) / 2.0 - lam)
        rel = abs(wr - closed) / max(abs(closed), _REL_FLOOR)
        if worst is None or rel > worst[0]:
            worst = (rel, wr, closed)
    return worst[1], worst[2], f"worst of {n_points} finite-difference points"


def _check_hankel_sum(s, q):
    n_points = int(s.get("n_points", 20))
    rng = np.random.default_rng(int(s.get("seed", 2024)))
    worst = None
    for _ in range(n_points):
        mu = rng.uniform(0.0, 3.0)
        x = rng.uniform(1e-6, 20.0)
        lhs = specfun.hankel(1, mu, x) + specfun.hankel(2, mu, x)
        rhs = 2.0 * specfun.bessel_j(mu, x)
        rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), _REL_FLOOR)
        if worst is None or rel > worst[0]:
            worst = (rel, lhs, rhs)
    return worst[1], worst[2], f"worst of {n_points} random points"


_CHECKS = {
    "HILLE_HARDY": _check_hille_hardy,
    "MEHLER_HEINE": _check_mehler_heine,
    "WEBER": _check_weber,
    "BESSEL_PRODUCT_LINE": _check_bessel_product_line,
    "BESSEL_HANKEL_HALFLINE": _check_bessel_hankel_halfline,
    "WHITTAKER_DOUBLE": _check_whittaker_double,
    "WHITTAKER_REAL_LINE": _check_whittaker_real_line,
    "WHITTAKER_CONTOUR": _check_whittaker_contour,
    "WHITTAKER_HALFLINE": _check_whittaker_halfline,
    "SEMICIRCUITAL": _check_semicircuital,
    "CONNECTION": _check_connection,
    "WRONSKIAN": _check_wronskian,
    "HANKEL_SUM": _check_hankel_sum,
}


def verify_identity(
    identity_id: str,
    sample: dict | None = None,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> CheckReport:
    """Evaluate one cataloged identity: quadrature/series side vs closed form."""
    if identity_id not in _CHECKS:
        raise DomainError(f"unknown identity {identity_id!r}")
    s = dict(DEFAULT_SAMPLES[identity_id])
    if sample:
        s.update(sample)
    lhs, rhs, detail = _CHECKS[identity_id](s, q)
    return CheckReport.build(
        identity_id,
        lhs,
        rhs,
        IDENTITY_TOLERANCES[identity_id],
        detail=detail,
        absolute=identity_id in _ABSOLUTE_IDS,
    )


def run_identity_suite(
    subset: list[str] | None = None,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[CheckReport]:
    """Run the catalog (or a named subset) in deterministic id order."""
    ids = list(IDENTITY_IDS) if subset is None else list(subset)
    for i in ids:
        if i not in _CHECKS:
            raise DomainError(f"unknown identity {i!r}")
    return [verify_identity(i, None, q) for i in ids]
