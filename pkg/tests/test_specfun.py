import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqmspec import DomainError, PoleError
from cqmspec import specfun as sf

mp.mp.dps = 30


class TestLogGamma:
    def test_half(self):
        assert sf.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)))

    def test_one(self):
        assert abs(sf.log_gamma(1.0)) < 1e-15

    def test_recurrence_complex(self):
        z = 2.5 + 1.5j
        lhs = cmath.exp(sf.log_gamma(z + 1))
        rhs = z * cmath.exp(sf.log_gamma(z))
        assert abs(lhs - rhs) / abs(rhs) < 1e-12

    def test_pole(self):
        with pytest.raises(PoleError):
            sf.log_gamma(-3.0)


class TestBessel:
    def test_half_integer_j(self):
        x = 1.0
        assert sf.bessel_j(0.5, x) == pytest.approx(
            math.sqrt(2.0 / (math.pi * x)) * math.sin(x), rel=1e-14
        )

    def test_j_at_zero(self):
        assert sf.bessel_j(0.7, 0.0) == 0.0
        assert sf.bessel_j(0.0, 0.0) == 1.0

    def test_hankel_sum(self):
        val = sf.hankel(1, 0.5, 2.0) + sf.hankel(2, 0.5, 2.0)
        assert val == pytest.approx(2.0 * sf.bessel_j(0.5, 2.0), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_j(0.5, -1.0)

    def test_half_integer_i(self):
        z = 1.0
        assert sf.bessel_i(0.5, z) == pytest.approx(
            math.sqrt(2.0 / (math.pi * z)) * math.sinh(z), rel=1e-14
        )

    def test_i_at_zero(self):
        assert sf.bessel_i(0.0, 0.0) == 1.0

    def test_continuation_to_j(self):
        # I_mu(x / i) = e^{-i pi mu / 2} J_mu(x)
        mu, x = 0.5, 1.0
        lhs = sf.bessel_i(mu, x / 1j)
        rhs = cmath.exp(-1j * math.pi * mu / 2.0) * sf.bessel_j(mu, x)
        assert abs(lhs - rhs) < 1e-14

    def test_continuation_phase_real(self):
        for mu, x in [(0.3, 0.7), (1.2, 3.0), (2.5, 9.0)]:
            val = sf.bessel_i(mu, x / 1j) * 1j**mu
            assert abs(val.imag) < 1e-12 * max(abs(val), 1.0)

    def test_scaled_large(self):
        val = sf.bessel_i_scaled(0.0, 700.0)
        assert val == pytest.approx(1.0 / math.sqrt(2 * math.pi * 700.0), rel=1e-3)

    def test_scaled_at_zero(self):
        assert sf.bessel_i_scaled(0.5, 0.0) == sf.bessel_i(0.5, 0.0)

    def test_scaled_bound(self):
        for x in (0.5, 3.0, 40.0, 500.0):
            assert 0.0 < sf.bessel_i_scaled(0.0, x) <= 1.0

    def test_overflow_raises(self):
        with pytest.raises(OverflowError):
            sf.bessel_i(0.0, 800.0)


class TestLaguerre:
    def test_at_zero_is_binomial(self):
        for n, mu in [(0, 0.5), (2, 0.5), (5, 1.5)]:
            expected = math.gamma(n + mu + 1) / (math.gamma(n + 1) * math.gamma(mu + 1))
            assert sf.laguerre(n, mu, 0.0) == pytest.approx(expected, rel=1e-13)

    def test_degree_zero(self):
        assert sf.laguerre(0, 0.7, 3.1) == 1.0

    def test_degree_one(self):
        x = 1.7
        assert sf.laguerre(1, 0.0, x) == pytest.approx(1.0 - x)

    def test_against_mpmath(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(0, 40))
            mu = rng.uniform(-0.5, 2.5)
            x = rng.uniform(0.0, 30.0)
            ref = float(mp.laguerre(n, mu, x))
            assert sf.laguerre(n, mu, x) == pytest.approx(ref, rel=1e-10, abs=1e-12)


class TestGegenbauer:
    def test_low_orders(self):
        assert sf.gegenbauer(0, 0.7, 0.3) == 1.0
        assert sf.gegenbauer(1, 0.7, 0.3) == pytest.approx(2 * 0.7 * 0.3)
        assert sf.gegenbauer(2, 1.0, 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_degenerate_weight_limit(self):
        # Gamma(nu) (l+nu) C_l^{(nu)}(cos psi) -> 2 cos(l psi) as nu -> 0
        psi = 0.9
        for l in (1, 2, 5):
            nu = 1e-7
            val = math.gamma(nu) * (l + nu) * sf.gegenbauer(l, nu, math.cos(psi))
            assert val == pytest.approx(2.0 * math.cos(l * psi), rel=1e-5)


class TestKummer:
    def test_at_zero(self):
        assert sf.kummer_m(0.3 + 0.2j, 1.5, 0.0) == 1.0

    def test_exponential_identity(self):
        z = 0.3 + 0.4j
        assert abs(sf.kummer_m(1.0, 1.0, z) - cmath.exp(z)) < 1e-14

    def test_pole(self):
        with pytest.raises(PoleError):
            sf.kummer_m(0.5, -2.0, 1.0)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(
        are=st.floats(-1.5, 1.5),
        aim=st.floats(-1.5, 1.5),
        bre=st.floats(0.4, 2.5),
        zre=st.floats(-8.0, 8.0),
        zim=st.floats(-8.0, 8.0),
    )
    def test_contiguous_recurrence(self, are, aim, bre, zre, zim):
        # (b-a) M(a-1) + (2a-b+z) M(a) - a M(a+1) = 0
        a, b, z = complex(are, aim), complex(bre), complex(zre, zim)
        m_minus = sf.kummer_m(a - 1, b, z)
        m_0 = sf.kummer_m(a, b, z)
        m_plus = sf.kummer_m(a + 1, b, z)
        lhs = (b - a) * m_minus + (2 * a - b + z) * m_0 - a * m_plus
        scale = max(abs(m_minus), abs(m_0), abs(m_plus), 1.0)
        assert abs(lhs) / scale < 1e-9

    def test_against_mpmath_envelope(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            mu = rng.uniform(0.05, 2.5)
            lam = complex(rng.uniform(-1.5, 1.5), rng.uniform(-2.0, 2.0))
            a, b = (1 + mu) / 2 - lam, 1 + mu
            z = 10 ** rng.uniform(-0.5, 2.2) * np.exp(1j * rng.uniform(-1, 1) * np.pi)
            ref = complex(mp.hyp1f1(mp.mpc(a), mp.mpc(b), mp.mpc(complex(z))))
            val = sf.kummer_m(a, b, complex(z))
            assert abs(val - ref) / max(abs(ref), 1e-300) < 1e-8


class TestTricomi:
    def test_against_mpmath_envelope(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            mu = rng.uniform(0.1, 2.2)
            lam = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.5, 1.5))
            a, b = (1 + mu) / 2 - lam, 1 + mu
            if abs(b - round(b)) < 0.05:
                mu += 0.1
                a, b = (1 + mu) / 2 - lam, 1 + mu
            z = 10 ** rng.uniform(-0.3, 2.0) * np.exp(1j * rng.uniform(-0.98, 1.0) * np.pi)
            ref = complex(mp.hyperu(mp.mpc(a), mp.mpc(b), mp.mpc(complex(z))))
            val = sf.tricomi_u(a, b, complex(z))
            assert abs(val - ref) / max(abs(ref), 1e-300) < 2e-5

    def test_integer_b_raises_below_switch(self):
        with pytest.raises(PoleError):
            sf.tricomi_u(0.3, 2.0, 1.0)

    def test_wronskian_with_m(self):
        # W{M, U}(z) = -Gamma(b) z^{-b} e^{z} / Gamma(a)
        a, b, z = 0.6 - 0.3j, 1.5, 1.3 + 0.4j
        h = 1e-4

        def d(f):
            return (8 * (f(z + h) - f(z - h)) - (f(z + 2 * h) - f(z - 2 * h))) / (12 * h)

        m = lambda t: sf.kummer_m(a, b, t)
        u = lambda t: sf.tricomi_u(a, b, t)
        wr = m(z) * d(u) - d(m) * u(z)
        expected = -sf.gamma(b) * sf.rgamma(a) * cmath.exp(z - b * cmath.log(z))
        assert abs(wr - expected) / abs(expected) < 1e-8


class TestWhittaker:
    def test_small_z_leading_power(self):
        mu, kappa, z = 1.0, 0.3j, 1e-6
        val = sf.whittaker_m(kappa, mu / 2, complex(z))
        lead = z ** ((1 + mu) / 2)
        assert abs(val / lead - 1.0) < 1e-5

    def test_semicircuital_continuation(self):
        lam, mu, z = 0.4j, 0.7, 1.3
        lhs = sf.whittaker_m_reg(lam, mu / 2, complex(-z, 0.0))
        rhs = cmath.exp((mu + 1) * 1j * math.pi / 2) * sf.whittaker_m_reg(-lam, mu / 2, complex(z))
        assert abs(lhs - rhs) / abs(rhs) < 1e-12

    def test_connection_formula(self):
        lam, mu, z = 0.25j, 0.5, 2.0 - 0.1j
        gp = sf.gamma((1 + mu) / 2 + lam)
        gm = sf.gamma((1 + mu) / 2 - lam)
        lhs = sf.whittaker_m_reg(lam, mu / 2, z)
        rhs = cmath.exp(lam * 1j * math.pi) * (
            cmath.exp(-(mu + 1) * 1j * math.pi / 2) / gp * sf.whittaker_w(lam, mu / 2, z)
            + sf.whittaker_w(-lam, mu / 2, z * cmath.exp(1j * math.pi)) / gm
        )
        assert abs(lhs - rhs) / abs(lhs) < 1e-8

    @settings(max_examples=25, deadline=None, derandomize=True)
    @given(
        kappa=st.floats(-1.5, 1.5),
        mu=st.floats(0.1, 1.8),
        x=st.floats(0.05, 12.0),
        y=st.floats(-4.0, 4.0),
    )
    def test_conjugation_symmetry(self, kappa, mu, x, y):
        # M_{-i kappa}(conj z) = conj(M_{i kappa}(z)) for real kappa, mu
        z = complex(x, y)
        lhs = sf.whittaker_m(-1j * kappa, mu / 2, z.conjugate())
        rhs = sf.whittaker_m(1j * kappa, mu / 2, z).conjugate()
        assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1e-30)

    def test_against_mpmath_imaginary_axis(self):
        for x in (0.5, 2.0, 9.0, 25.0, 50.0, 120.0):
            for kappa in (0.4, -0.7):
                mine = sf.whittaker_m(1j * kappa, 0.25, -1j * x)
                z = mp.mpc(0, -x)
                ref = mp.exp(-z / 2) * mp.exp(mp.mpf("0.75") * mp.log(z)) * mp.hyp1f1(
                    mp.mpc(0.75, -kappa), mp.mpf(1.5), z
                )
                assert abs(mine - complex(ref)) / abs(complex(ref)) < 2e-6
