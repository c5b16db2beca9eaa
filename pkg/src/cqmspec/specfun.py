"""Complex-parameter special functions used by the closed-form evaluations.

Gamma and Bessel families are delegated to scipy's AMOS/cephes backends;
generalized Laguerre and Gegenbauer polynomials use three-term recurrences
(stable at large degree); the confluent hypergeometric pair M, U and the
Whittaker functions built on them are evaluated here directly via Maclaurin
series, the Kummer transformation, and large-argument asymptotics.

All multivalued functions are taken on the principal branch, phase in
(-pi, pi]; signed zeros of the imaginary part select the side of the cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.special as _sp

from .errors import DomainError, NonConvergence, PoleError

__all__ = [
    "PrecisionPolicy",
    "DEFAULT_POLICY",
    "log_gamma",
    "gamma",
    "rgamma",
    "bessel_j",
    "hankel",
    "bessel_i",
    "bessel_i_scaled",
    "laguerre",
    "gegenbauer",
    "kummer_m",
    "tricomi_u",
    "whittaker_m",
    "whittaker_m_reg",
    "whittaker_w",
]


@dataclass(frozen=True)
class PrecisionPolicy:
    """Stopping rules for the confluent-hypergeometric evaluations."""

    series_tol: float = 1e-16
    max_terms: int = 700
    asymptotic_switch: float = 30.0

    def __post_init__(self):
        if self.series_tol < 1e-17:
            raise ValueError("series_tol must not undercut machine epsilon")
        if self.max_terms < 50:
            raise ValueError("max_terms must be at least 50")
        if self.asymptotic_switch <= 0:
            raise ValueError("asymptotic_switch must be positive")


DEFAULT_POLICY = PrecisionPolicy()


def _is_nonpositive_integer(z: complex, tol: float = 1e-12) -> bool:
    z = complex(z)
    if z.imag != 0.0 and abs(z.imag) > tol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma."""
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z = {z}")
    return complex(_sp.loggamma(complex(z)))


def gamma(z: complex) -> complex:
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z = {z}")
    return complex(_sp.gamma(complex(z)))


def rgamma(z: complex) -> complex:
    """1/Gamma(z); zero at the poles, no exception."""
    return complex(_sp.rgamma(complex(z)))


def bessel_j(mu: float, x):
    """J_mu(x) for mu >= 0, x >= 0 (arrays accepted)."""
    if mu < 0:
        raise DomainError("bessel_j requires mu >= 0")
    x = np.asarray(x)
    if np.any(np.real(x) < 0) and not np.iscomplexobj(x):
        raise DomainError("bessel_j requires x >= 0")
    out = _sp.jv(mu, x)
    return out if out.ndim else out[()]


def hankel(kind: int, mu: float, x):
    """Hankel functions H^(1), H^(2) of order mu at x > 0."""
    if kind not in (1, 2):
        raise DomainError("hankel kind must be 1 or 2")
    x = np.asarray(x)
    if not np.iscomplexobj(x) and np.any(x <= 0):
        raise DomainError("hankel requires x > 0")
    fn = _sp.hankel1 if kind == 1 else _sp.hankel2
    out = fn(mu, np.asarray(x, dtype=complex))
    return out if out.ndim else out[()]


def bessel_i(mu: float, z):
    """Modified Bessel I_mu(z), principal branch; raises on overflow."""
    z = np.asarray(z)
    out = _sp.iv(mu, z if np.iscomplexobj(z) else z.astype(float))
    if np.any(np.isinf(out)) or np.any(np.isnan(out)):
        raise OverflowError("bessel_i overflow; use bessel_i_scaled")
    return out if out.ndim else out[()]


def bessel_i_scaled(mu: float, z):
    """exp(-|Re z|) * I_mu(z); pairs with Gaussian prefactors without overflow."""
    z = np.asarray(z)
    out = _sp.ive(mu, z if np.iscomplexobj(z) else z.astype(float))
    return out if out.ndim else out[()]


def laguerre(n: int, mu: float, x):
    """Generalized Laguerre polynomial L_n^(mu)(x), upward recurrence in n."""
    if n < 0 or int(n) != n:
        raise DomainError("laguerre requires integer n >= 0")
    if mu <= -1:
        raise DomainError("laguerre requires mu > -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else prev[()]
    cur = 1.0 + mu - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + mu - x) * cur - (k + mu) * prev) / (k + 1)
    return cur if cur.ndim else cur[()]


def gegenbauer(l: int, nu: float, x):
    """Gegenbauer polynomial C_l^(nu)(x), |x| <= 1."""
    if l < 0 or int(l) != l:
        raise DomainError("gegenbauer requires integer l >= 0")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-12):
        raise DomainError("gegenbauer requires |x| <= 1")
    prev = np.ones_like(x)
    if l == 0:
        return prev if prev.ndim else prev[()]
    cur = 2.0 * nu * x
    for k in range(2, l + 1):
        prev, cur = cur, (2.0 * (k - 1 + nu) * x * cur - (k - 2 + 2.0 * nu) * prev) / k
    return cur if cur.ndim else cur[()]


def _kummer_series(a: complex, b: complex, z: complex, policy: PrecisionPolicy) -> complex:
    term = 1.0 + 0.0j
    total = term
    small = 0
    for k in range(policy.max_terms):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        if abs(term) <= policy.series_tol * abs(total):
            small += 1
            # terms grow until k ~ |z|; only trust smallness past that
            if small >= 2 and k > abs(z):
                return total
        else:
            small = 0
    raise NonConvergence(
        f"1F1 series did not converge in {policy.max_terms} terms (|z| = {abs(z):.3g})"
    )


_ASYMPTOTIC_FLOOR = 1e-4  # accept truncation at the smallest term up to this level


def _hyp2f0_asymptotic(p: complex, q: complex, w: complex, policy: PrecisionPolicy) -> complex:
    """Divergent 2F0(p, q; w) summed to its smallest term."""
    term = 1.0 + 0.0j
    total = term
    best = abs(term)
    for k in range(policy.max_terms):
        term *= (p + k) * (q + k) * w / (k + 1)
        mag = abs(term)
        if mag < policy.series_tol * abs(total):
            return total + term
        if mag > best and k > 2:
            # smallest term reached; the remainder is of its size
            if best > _ASYMPTOTIC_FLOOR * abs(total):
                raise NonConvergence(
                    f"asymptotic tail stalls at relative {best / abs(total):.3g}"
                )
            return total
        best = min(best, mag)
        total += term
    raise NonConvergence("2F0 asymptotic series exhausted max_terms")


def _power(z: complex, p: complex) -> complex:
    """Principal-branch z**p, honoring the signed zero of Im z on the cut."""
    return cmath.exp(p * cmath.log(z))


def _kummer_asymptotic(a: complex, b: complex, z: complex, policy: PrecisionPolicy) -> complex:
    # M(a,b,z) ~ Gamma(b) [ e^z z^{a-b} S1 / Gamma(a) + e^{s i pi a} z^{-a} S2 / Gamma(b-a) ]
    # with s = +1 for ph z in (0, pi] and s = -1 for ph z in (-pi, 0], so that the
    # companion argument e^{-s i pi} z stays on the principal branch.
    s = 1.0 if cmath.phase(z) > 0 else -1.0
    s1 = _hyp2f0_asymptotic(b - a, 1 - a, 1.0 / z, policy)
    s2 = _hyp2f0_asymptotic(a, a - b + 1, -1.0 / z, policy)
    t1 = cmath.exp(z + (a - b) * cmath.log(z)) * rgamma(a) * s1
    t2 = cmath.exp(1j * s * math.pi * a - a * cmath.log(z)) * rgamma(b - a) * s2
    return gamma(b) * (t1 + t2)


def kummer_m(
    a: complex, b: complex, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY
) -> complex:
    """Confluent hypergeometric M(a, b, z) = 1F1(a; b; z) for complex arguments."""
    if _is_nonpositive_integer(b):
        raise PoleError(f"kummer_m pole: b = {b} is a nonpositive integer")
    a, b, z = complex(a), complex(b), complex(z)
    if z == 0:
        return 1.0 + 0.0j
    if abs(z) > policy.asymptotic_switch:
        return _kummer_asymptotic(a, b, z, policy)
    if z.real < 0.0:
        # Kummer transformation avoids cancellation for Re z < 0
        return cmath.exp(z) * _kummer_series(b - a, b, -z, policy)
    return _kummer_series(a, b, z, policy)


_U_SWITCH = 20.0  # U's single-series asymptotics beat the connection route sooner


def tricomi_u(
    a: complex, b: complex, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY
) -> complex:
    """Confluent hypergeometric U(a, b, z), principal branch in z."""
    a, b, z = complex(a), complex(b), complex(z)
    if z == 0:
        raise DomainError("tricomi_u undefined at z = 0")
    if abs(z) > min(policy.asymptotic_switch, _U_SWITCH):
        s2 = _hyp2f0_asymptotic(a, a - b + 1, -1.0 / z, policy)
        return cmath.exp(-a * cmath.log(z)) * s2
    if abs(b - round(b.real)) < 1e-9 and abs(b.imag) < 1e-9:
        raise PoleError(
            "tricomi_u connection formula degenerates at integer b; "
            "perturb b or evaluate at |z| above the asymptotic switch"
        )
    m1 = kummer_m(a, b, z, policy)
    m2 = kummer_m(a - b + 1.0, 2.0 - b, z, policy)
    return gamma(1.0 - b) * rgamma(a - b + 1.0) * m1 + gamma(b - 1.0) * rgamma(a) * _power(
        z, 1.0 - b
    ) * m2


def _whittaker_prefactor(half_mu: complex, z: complex) -> complex:
    return cmath.exp(-z / 2.0 + (0.5 + half_mu) * cmath.log(z))


def whittaker_m(
    kappa: complex, half_mu: complex, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY
) -> complex:
    """Whittaker M_{kappa, half_mu}(z) = e^{-z/2} z^{1/2+half_mu} M(a, b, z)."""
    a = 0.5 + half_mu - kappa
    b = 1.0 + 2.0 * half_mu
    return _whittaker_prefactor(half_mu, complex(z)) * kummer_m(a, b, z, policy)


def whittaker_m_reg(
    kappa: complex, half_mu: complex, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY
) -> complex:
    """Gamma-regularized M_{kappa, half_mu}(z) / Gamma(1 + 2*half_mu)."""
    a = 0.5 + half_mu - kappa
    b = 1.0 + 2.0 * half_mu
    if _is_nonpositive_integer(b):
        # lift the pole through the limit of the ratio 1F1/Gamma(b): not needed
        # in the weak-coupling regime, where mu >= 0
        raise PoleError("regularized M at nonpositive-integer b is not implemented")
    return rgamma(b) * whittaker_m(kappa, half_mu, z, policy)


def whittaker_w(
    kappa: complex, half_mu: complex, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY
) -> complex:
    """Whittaker W_{kappa, half_mu}(z) = e^{-z/2} z^{1/2+half_mu} U(a, b, z)."""
    a = 0.5 + half_mu - kappa
    b = 1.0 + 2.0 * half_mu
    return _whittaker_prefactor(half_mu, complex(z)) * tricomi_u(a, b, z, policy)
