import math

import numpy as np
import pytest

from cqmspec import (
    AnalogOscillator,
    ClassTag,
    ContourError,
    DomainError,
    GreenKind,
    NonConvergence,
    PhysicalParams,
    QuadratureSpec,
    fourier_invert,
    green_hyperbolic,
    green_parabolic,
    half_line_transform,
    hyperbolic_eigenfunction,
    run_identity_suite,
    verify_identity,
)
from cqmspec import specfun as sf
from cqmspec import transforms as tr

P1 = PhysicalParams(dim=1)
PAR = AnalogOscillator.from_frequency(0.0, P1, ClassTag.PARABOLIC)
HYP = AnalogOscillator.from_frequency(1.0, P1, ClassTag.HYPERBOLIC)


class TestFourierParabolic:
    def test_positive_energy_value(self):
        f = fourier_invert(ClassTag.PARABOLIC, P1, PAR, 1.0, 1.0, 1.0)
        target = 2.0 / (math.pi * math.sqrt(2.0)) * math.sin(math.sqrt(2.0)) ** 2
        assert abs(f.real - target) / target < 1e-3

    def test_negative_energy_vanishes(self):
        f = fourier_invert(ClassTag.PARABOLIC, P1, PAR, -0.5, 1.0, 1.0)
        assert abs(f) < 1e-4

    def test_ladder_monotone_beyond_first_rung(self):
        scale = 1.0
        ladder = [e * scale for e in QuadratureSpec().damping_eps]
        q = QuadratureSpec()
        vals = [
            tr._parabolic_halfline(PAR, P1, 1.0, 1.0, 1.0, eps, q).real / math.pi
            for eps in ladder
        ]
        diffs = np.diff(vals)
        assert np.all(diffs[1:] * diffs[:-1] > 0)

    def test_hermiticity_of_kernel(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            t = rng.uniform(0.05, 3.0)
            k_plus = tr._kernel_parabolic(PAR, 0.8, 1.1, complex(t))
            k_minus = tr._kernel_parabolic(PAR, 0.8, 1.1, complex(-t))
            assert k_minus == pytest.approx(np.conj(k_plus), rel=1e-13)


class TestFourierHyperbolic:
    def test_matches_whittaker_product(self):
        # kappa = 0.4, mu = 0.5, x' = 0.9, x'' = 1.7 at c = -pi/4
        kappa, mu = 0.4, 0.5
        x1, x2 = 0.9, 1.7
        r1, r2 = math.sqrt(x1), math.sqrt(x2)
        e = 2.0 * HYP.hbar * HYP.omega_mag * kappa
        q = QuadratureSpec(contour_offset=-math.pi / 4)
        f = fourier_invert(ClassTag.HYPERBOLIC, P1, HYP, e, r1, r2, q)
        gp = sf.gamma((1 + mu) / 2 + 1j * kappa)
        gm = sf.gamma((1 + mu) / 2 - 1j * kappa)
        closed = (
            1.0 / (2 * math.pi * HYP.hbar * HYP.omega_mag)
            * gm * gp * math.exp(math.pi * kappa)
            * sf.whittaker_m_reg(1j * kappa, mu / 2, -1j * x2)
            * sf.whittaker_m_reg(-1j * kappa, mu / 2, 1j * x1)
            / math.sqrt(r1 * r2)
        )
        assert abs(f - closed) / abs(closed) < 1e-4

    def test_contour_independence(self):
        e = 0.8
        vals = [
            fourier_invert(
                ClassTag.HYPERBOLIC, P1, HYP, e, 0.9, 1.3,
                QuadratureSpec(contour_offset=c),
            )
            for c in (-math.pi / 8, -math.pi / 4, -3 * math.pi / 8)
        ]
        spread = max(abs(a - b) for a in vals for b in vals)
        assert spread < 1e-8

    def test_matches_eigenfunction_product(self):
        e = 0.8
        r1, r2 = 0.7, 1.2
        f = fourier_invert(ClassTag.HYPERBOLIC, P1, HYP, e, r1, r2)
        prod = hyperbolic_eigenfunction(HYP, e, r2) * np.conj(
            hyperbolic_eigenfunction(HYP, e, r1)
        )
        assert abs(f - prod) / abs(prod) < 1e-10

    def test_kernel_hermiticity(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            z = rng.uniform(0.05, 2.0)
            k_plus = tr._kernel_hyperbolic_zeta(HYP, 0.8, 1.1, complex(z))
            k_minus = tr._kernel_hyperbolic_zeta(HYP, 0.8, 1.1, complex(-z))
            assert k_minus == pytest.approx(np.conj(k_plus), rel=1e-13)

    def test_bad_contour_rejected(self):
        with pytest.raises(ContourError):
            QuadratureSpec(contour_offset=0.3)
        with pytest.raises(ContourError):
            QuadratureSpec(contour_offset=-2.0)


class TestHalfLine:
    def test_parabolic_retarded(self):
        g_num = half_line_transform(ClassTag.PARABOLIC, P1, PAR, 1.0, 0.8, 1.1, GreenKind.RETARDED)
        g_closed = green_parabolic(P1, 1.0, 0.8, 1.1, GreenKind.RETARDED).value
        assert abs(g_num - g_closed) / abs(g_closed) < 1e-3

    def test_parabolic_advanced(self):
        g_num = half_line_transform(ClassTag.PARABOLIC, P1, PAR, 1.0, 0.8, 1.1, GreenKind.ADVANCED)
        g_closed = green_parabolic(P1, 1.0, 0.8, 1.1, GreenKind.ADVANCED).value
        assert abs(g_num - g_closed) / abs(g_closed) < 1e-3

    def test_hyperbolic_both_kinds(self):
        e = 0.8
        for kind in (GreenKind.RETARDED, GreenKind.ADVANCED):
            g_num = half_line_transform(ClassTag.HYPERBOLIC, P1, HYP, e, 0.7, 1.2, kind)
            g_closed = green_hyperbolic(HYP, e, 0.7, 1.2, kind).value
            assert abs(g_num - g_closed) / abs(g_closed) < 1e-3

    def test_sum_rule(self):
        # -(G+ - G-)/(2 pi i) from the numeric transforms equals fourier_invert
        gp = half_line_transform(ClassTag.PARABOLIC, P1, PAR, 1.0, 0.8, 1.1, GreenKind.RETARDED)
        gm = half_line_transform(ClassTag.PARABOLIC, P1, PAR, 1.0, 0.8, 1.1, GreenKind.ADVANCED)
        disc = -(gp - gm) / (2j * math.pi)
        f = fourier_invert(ClassTag.PARABOLIC, P1, PAR, 1.0, 0.8, 1.1)
        assert abs(disc - f) / abs(f) < 1e-3

    def test_elliptic_rejected(self):
        ell = AnalogOscillator.from_frequency(0.5, P1, ClassTag.ELLIPTIC)
        with pytest.raises(DomainError):
            half_line_transform(ClassTag.ELLIPTIC, P1, ell, 1.0, 0.8, 1.1)

    def test_nonconvergence_on_coarse_ladder(self):
        q = QuadratureSpec(damping_eps=(5.0, 2.5, 1.25))
        with pytest.raises(NonConvergence):
            fourier_invert(ClassTag.PARABOLIC, P1, PAR, 1.0, 1.0, 1.0, q)


class TestIdentitySuite:
    def test_all_pass(self):
        reports = run_identity_suite()
        assert len(reports) == 13
        assert [r.identity_id for r in reports] == list(tr.IDENTITY_IDS)
        for r in reports:
            assert r.passed, f"{r.identity_id}: rel={r.rel_err:.3e} abs={r.abs_err:.3e}"

    def test_hille_hardy_value(self):
        rep = verify_identity("HILLE_HARDY")
        assert rep.rel_err < 1e-10

    def test_hille_hardy_domain(self):
        with pytest.raises(DomainError):
            verify_identity("HILLE_HARDY", {"z": 1.5})

    def test_weber_value(self):
        rep = verify_identity("WEBER")
        assert rep.rel_err < 1e-9

    def test_weber_domain(self):
        with pytest.raises(DomainError):
            verify_identity("WEBER", {"mu": -1.5})

    def test_mehler_heine_value_and_trend(self):
        rep = verify_identity("MEHLER_HEINE")
        assert rep.abs_err < 5e-4
        errs = [verify_identity("MEHLER_HEINE", {"n": n}).abs_err for n in (100, 1000, 10000)]
        order = -np.polyfit(np.log([100, 1000, 10000]), np.log(errs), 1)[0]
        assert order == pytest.approx(1.0, abs=0.2)

    def test_whittaker_contour_independence(self):
        vals = [
            verify_identity("WHITTAKER_CONTOUR", {"c": c}).lhs
            for c in (-math.pi / 8, -math.pi / 4, -3 * math.pi / 8)
        ]
        spread = max(abs(a - b) for a in vals for b in vals)
        assert spread < 1e-8

    def test_whittaker_contour_bad_offset(self):
        with pytest.raises(ContourError):
            verify_identity("WHITTAKER_CONTOUR", {"c": 0.2})

    def test_halfline_requires_distinct_points(self):
        with pytest.raises(DomainError):
            verify_identity("WHITTAKER_HALFLINE", {"x1": 1.0, "x2": 1.0})

    def test_subset(self):
        reports = run_identity_suite(["WEBER", "HILLE_HARDY"])
        assert [r.identity_id for r in reports] == ["WEBER", "HILLE_HARDY"]

    def test_unknown_identity(self):
        with pytest.raises(DomainError):
            verify_identity("NOT_AN_IDENTITY")

    def test_deterministic_reports(self):
        a = verify_identity("WRONSKIAN")
        b = verify_identity("WRONSKIAN")
        assert a == b
        c = verify_identity("WHITTAKER_CONTOUR")
        d = verify_identity("WHITTAKER_CONTOUR")
        assert (c.lhs, c.rhs, c.rel_err) == (d.lhs, d.rhs, d.rel_err)
