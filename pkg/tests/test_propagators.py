import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from cqmspec import (
    AnalogOscillator,
    CausticError,
    ClassTag,
    PhysicalParams,
    PropagatorQuery,
    Schedule,
    ZeroTimeError,
    partial_wave_sum,
    propagator_elliptic,
    propagator_hyperbolic,
    propagator_parabolic,
    radial_propagator,
)
from cqmspec import specfun as sf
from cqmspec.spectra import spectral_series_elliptic

P1 = PhysicalParams(dim=1)  # mu = 1/2


def make(tag, omega, p=P1):
    return AnalogOscillator.from_frequency(omega, p, tag)


def query(analog, r_in, r_out, t, schedule=Schedule.EUCLIDEAN, p=P1):
    return PropagatorQuery(
        r_in=r_in, r_out=r_out, time=t, params=p, analog=analog, schedule=schedule
    )


class TestElliptic:
    def test_euclidean_closed_value(self):
        w = 0.5
        a = make(ClassTag.ELLIPTIC, w)
        val = propagator_elliptic(query(a, 1.0, 1.0, 1.0))
        expected = (
            w / math.sinh(w)
            * math.exp(-w / math.tanh(w))
            * sf.bessel_i(0.5, w / math.sinh(w))
        )
        assert val.real == pytest.approx(expected, rel=1e-13)
        assert val.imag == 0.0

    def test_endpoint_symmetry(self):
        a = make(ClassTag.ELLIPTIC, 0.5)
        rng = np.random.default_rng(7)
        for _ in range(20):
            r1, r2 = rng.uniform(0.2, 3.0, size=2)
            t = rng.uniform(0.1, 2.0)
            sched = Schedule.EUCLIDEAN if rng.random() < 0.5 else Schedule.REAL_TIME
            k12 = radial_propagator(query(a, r1, r2, t, sched))
            k21 = radial_propagator(query(a, r2, r1, t, sched))
            assert k12 == pytest.approx(k21, rel=1e-13)

    def test_matches_eigenseries(self):
        a = make(ClassTag.ELLIPTIC, 0.5)
        closed = propagator_elliptic(query(a, 1.0, 1.0, 1.0)).real
        series, _ = spectral_series_elliptic(a, 1.0, 1.0, 1.0, 200)
        assert abs(series - closed) / abs(closed) < 1e-8

    def test_caustic_rejected(self):
        a = make(ClassTag.ELLIPTIC, 0.5)
        with pytest.raises(CausticError):
            propagator_elliptic(query(a, 1.0, 1.0, 2.0 * math.pi, Schedule.REAL_TIME))


class TestParabolic:
    def test_euclidean_closed_value(self):
        a = make(ClassTag.PARABOLIC, 0.0)
        val = propagator_parabolic(query(a, 1.0, 1.0, 1.0))
        expected = math.exp(-1.0) * math.sqrt(2.0 / math.pi) * math.sinh(1.0)
        assert val.real == pytest.approx(expected, rel=1e-13)

    def test_zero_frequency_limit(self):
        small = AnalogOscillator.from_frequency(1e-4, P1, ClassTag.ELLIPTIC)
        par = make(ClassTag.PARABOLIC, 0.0)
        k_rho = propagator_elliptic(query(small, 1.0, 1.0, 1.0))
        k_par = propagator_parabolic(query(par, 1.0, 1.0, 1.0))
        assert abs(k_rho - k_par) / abs(k_par) < 1e-6

    def test_zero_time(self):
        a = make(ClassTag.PARABOLIC, 0.0)
        with pytest.raises(ZeroTimeError):
            propagator_parabolic(query(a, 1.0, 1.0, 0.0, Schedule.REAL_TIME))

    def test_free_particle_image_form(self):
        # mu = 1/2, g = 0, d = 1: difference of two Gaussian kernels
        a = make(ClassTag.PARABOLIC, 0.0)
        for rp, rpp, t in [(0.7, 1.2, 0.9), (1.0, 1.0, 0.4)]:
            val = propagator_parabolic(query(a, rp, rpp, t, Schedule.REAL_TIME))
            pref = cmath.sqrt(1.0 / (2.0 * math.pi * 1j * t))
            image = pref * (
                cmath.exp(1j * (rpp - rp) ** 2 / (2.0 * t))
                - cmath.exp(1j * (rpp + rp) ** 2 / (2.0 * t))
            )
            assert val == pytest.approx(image, rel=1e-12)


class TestHyperbolic:
    def test_continuation_identity(self):
        # the hyperbolic kernel is the elliptic formula at frequency -i w
        a = make(ClassTag.HYPERBOLIC, 0.8)
        rng = np.random.default_rng(3)
        for _ in range(10):
            rp, rpp = rng.uniform(0.3, 2.0, size=2)
            t = rng.uniform(0.1, 1.5)
            val = propagator_hyperbolic(query(a, rp, rpp, t, Schedule.REAL_TIME))
            w = -1j * a.omega_mag
            s = cmath.sin(w * t)
            ref = (
                w / (1j * s) * math.sqrt(rp * rpp)
                * cmath.exp(1j * w / 2.0 * (rp**2 + rpp**2) * cmath.cos(w * t) / s)
                * sf.bessel_i(a.mu, w * rp * rpp / (1j * s))
            )
            assert val == pytest.approx(ref, rel=1e-10)

    def test_endpoint_symmetry(self):
        a = make(ClassTag.HYPERBOLIC, 0.5)
        k12 = propagator_hyperbolic(query(a, 0.7, 1.3, 0.8, Schedule.REAL_TIME))
        k21 = propagator_hyperbolic(query(a, 1.3, 0.7, 0.8, Schedule.REAL_TIME))
        assert k12 == pytest.approx(k21, rel=1e-13)

    def test_short_time_parabolic_agreement(self):
        # the class difference vanishes like w^2 T at short time
        hyp = make(ClassTag.HYPERBOLIC, 1.0)
        par = make(ClassTag.PARABOLIC, 0.0)
        t = 2e-7
        k_h = propagator_hyperbolic(query(hyp, 1.0, 1.0, t))
        k_p = propagator_parabolic(query(par, 1.0, 1.0, t))
        assert abs(k_h - k_p) / abs(k_p) < 1e-6


class TestClassContinuity:
    def test_all_classes_at_small_frequency(self):
        par = make(ClassTag.PARABOLIC, 0.0)
        k_p = propagator_parabolic(query(par, 0.9, 1.2, 0.7))
        ell = AnalogOscillator.from_frequency(1e-4, P1, ClassTag.ELLIPTIC)
        hyp = AnalogOscillator.from_frequency(1e-4, P1, ClassTag.HYPERBOLIC)
        k_e = propagator_elliptic(query(ell, 0.9, 1.2, 0.7))
        k_h = propagator_hyperbolic(query(hyp, 0.9, 1.2, 0.7))
        assert abs(k_e - k_p) / abs(k_p) < 1e-6
        assert abs(k_h - k_p) / abs(k_p) < 1e-6


class TestComposition:
    @pytest.mark.parametrize("mu_coupling", [0.0, 2.0])
    @pytest.mark.parametrize("tag", [ClassTag.ELLIPTIC, ClassTag.PARABOLIC, ClassTag.HYPERBOLIC])
    def test_semigroup(self, tag, mu_coupling):
        # composition over the half line reproduces the direct kernel
        p = PhysicalParams(dim=1, coupling=mu_coupling)  # mu = 0.5 or 1.5
        omega = 0.0 if tag is ClassTag.PARABOLIC else 0.5
        a = AnalogOscillator.from_frequency(omega, p, tag)
        t1, t2 = 0.4, 0.6
        rp, rpp = 0.7, 1.3

        def kern(rb, ra, t):
            return radial_propagator(query(a, ra, rb, t, p=p)).real

        val, err = quad(lambda r: kern(rpp, r, t1) * kern(r, rp, t2), 0.0, 30.0,
                        limit=300, epsabs=1e-12, epsrel=1e-10)
        direct = kern(rpp, rp, t1 + t2)
        assert abs(val - direct) / abs(direct) < 1e-6

    def test_short_time_delta(self):
        a = make(ClassTag.PARABOLIC, 0.0)
        r0, s = 1.1, 0.25

        def phi(r):
            return math.exp(-((r - r0) ** 2) / (2 * s * s))

        errs = []
        for t in (0.02, 0.01, 0.005):
            val, _ = quad(
                lambda r: radial_propagator(query(a, r, r0, t)).real * phi(r),
                0.0, 6.0, limit=200,
            )
            errs.append(abs(val - phi(r0)))
        # error shrinks ~ linearly with T
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.25)
        assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.25)


class TestInterdimensional:
    def test_same_mu_same_kernel(self):
        # (d=3, l=0, g=0) and (d=1, l=1, g=0) share mu = 1/2 and must hit the
        # identical code path bit for bit
        p3 = PhysicalParams(dim=3, ell=0)
        p1 = PhysicalParams(dim=1, ell=1)
        assert p3.mu() == p1.mu() == 0.5
        a3 = AnalogOscillator.from_frequency(0.5, p3, ClassTag.ELLIPTIC)
        a1 = AnalogOscillator.from_frequency(0.5, p1, ClassTag.ELLIPTIC)
        k3 = propagator_elliptic(query(a3, 0.8, 1.2, 0.9, p=p3))
        k1 = propagator_elliptic(query(a1, 0.8, 1.2, 0.9, p=p1))
        assert k3 == k1  # bitwise


class TestPartialWaveSum:
    def test_single_term(self):
        p = PhysicalParams(dim=3)
        a = AnalogOscillator.from_frequency(0.5, p, ClassTag.ELLIPTIC)
        x = np.array([0.0, 0.0, 1.0])
        val, last = partial_wave_sum(x, x, 0.9, 1.1, 0.8, p, a, l_max=0)
        nu = p.nu()
        mu0 = math.sqrt(p.coupling + nu**2)
        a0 = AnalogOscillator(
            mass=a.mass, hbar=a.hbar, coupling=a.coupling, mu=mu0,
            omega_mag=a.omega_mag, class_tag=a.class_tag, sigma=a.sigma,
            scale=a.scale,
        )
        k0 = radial_propagator(query(a0, 0.9, 1.1, 0.8, p=p))
        expected = (
            math.gamma(nu) / (2 * math.pi ** (p.dim / 2))
            * (0.9 * 1.1) ** (-(p.dim - 1) / 2)
            * nu * k0
        )
        assert val == pytest.approx(expected, rel=1e-12)
        assert last == pytest.approx(abs(expected), rel=1e-12)

    def test_convergence_with_l_max(self):
        p = PhysicalParams(dim=3)
        a = AnalogOscillator.from_frequency(0.5, p, ClassTag.ELLIPTIC)
        x = np.array([0.0, 0.0, 1.0])
        tails = []
        sums = []
        for lmax in (2, 6, 10, 16):
            val, last = partial_wave_sum(x, x, 1.0, 1.0, 0.8, p, a, l_max=lmax)
            sums.append(val)
            tails.append(last)
        assert tails[-1] < tails[-2] < tails[-3]
        assert abs(sums[-1] - sums[-2]) < 1e-6 * abs(sums[-1])

    def test_two_dimensional_cosine_weights(self):
        # d = 2 degenerate weights equal the nu -> 0 limit of the generic ones
        p2 = PhysicalParams(dim=2)
        a2 = AnalogOscillator.from_frequency(0.5, p2, ClassTag.ELLIPTIC)
        for psi in (0.3, 1.1, 2.4):
            x1 = np.array([1.0, 0.0])
            x2 = np.array([math.cos(psi), math.sin(psi)])
            val, _ = partial_wave_sum(x1, x2, 0.9, 1.1, 0.8, p2, a2, l_max=8)
            # independent route: numerical nu -> 0 limit of the generic weight
            nu = 1e-7
            total = 0.0
            pref = (0.9 * 1.1) ** (-0.5) / (2 * math.pi)
            for l in range(9):
                w_l = math.gamma(nu) * (l + nu) * sf.gegenbauer(l, nu, math.cos(psi))
                mu_l = math.sqrt(p2.coupling + l**2)
                a_l = AnalogOscillator(
                    mass=a2.mass, hbar=a2.hbar, coupling=a2.coupling, mu=mu_l,
                    omega_mag=a2.omega_mag, class_tag=a2.class_tag,
                    sigma=a2.sigma, scale=a2.scale,
                )
                total += pref * w_l * radial_propagator(query(a_l, 0.9, 1.1, 0.8, p=p2)).real
            assert val.real == pytest.approx(total, rel=1e-5)
