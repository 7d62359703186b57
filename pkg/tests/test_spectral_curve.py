import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tau34.param_domain import ABCoords, Params, map_abc
from tau34.spectral_curve import (BranchCutError, OnBranchPoint,
                                  branch_coeffs, build_curve,
                                  check_g_asymptotics, fit_branch_exponent,
                                  g_sheet, g_sheets_all, lam_of_u,
                                  theta_phase, theta_hat, uniformize,
                                  uniformize_all)

pv = np.polynomial.polynomial.polyval


@pytest.fixture(scope="module")
def curve_ref():
    return build_curve(Params(1.0, 0.0, 0.0))


_CURVE_MU = None


def _curve_mu_singleton():
    global _CURVE_MU
    if _CURVE_MU is None:
        _CURVE_MU = build_curve(Params(1.0, 0.1, 0.0))
    return _CURVE_MU


@pytest.fixture(scope="module")
def curve_mu():
    return _curve_mu_singleton()


@pytest.fixture(scope="module")
def curve_gp():
    return build_curve(Params(1.0, 0.0, 125.0 / 108.0), sigma=5.0 / 3.0)


class TestBuild:
    def test_reference_curve(self, curve_ref):
        assert np.allclose(curve_ref.lam_coeffs, [0.0, -15.0 / 4.0, 0.0, 1.0])
        assert curve_ref.alpha == pytest.approx(2.5 * math.sqrt(1.25),
                                                rel=1e-14)
        assert curve_ref.beta == pytest.approx(-curve_ref.alpha, rel=1e-14)

    def test_cube_curve(self):
        cv = build_curve(Params(-0.6, 0.0, 0.0), sigma=0.0)
        assert np.allclose(cv.lam_coeffs, [0.0, 0.0, 0.0, 1.0])
        assert cv.alpha == cv.beta == 0.0

    def test_antiderivative_identity_exact(self):
        # g' = Y lam' coefficientwise in exact rational arithmetic
        eta, mu, nu = Fraction(1), Fraction(1, 10), Fraction(0)
        sigma = Fraction(5, 2)        # representative rational root slot
        den = 5 * eta - 3 * sigma
        c = -3 * mu / den
        lam = [c, -Fraction(3, 2) * sigma, Fraction(0), Fraction(1)]
        Y = [sigma**2 / 2 - Fraction(5, 3) * eta * sigma, Fraction(4, 3) * c,
             Fraction(5, 3) * eta - 2 * sigma, Fraction(0), Fraction(1)]
        dlam = [lam[1], 2 * lam[2], 3 * lam[3]]
        prod = [Fraction(0)] * (len(Y) + len(dlam) - 1)
        for i, yi in enumerate(Y):
            for j, dj in enumerate(dlam):
                prod[i + j] += yi * dj
        g = [Fraction(0)] + [prod[k] / (k + 1) for k in range(len(prod))]
        dg = [(k + 1) * g[k + 1] for k in range(len(g) - 1)]
        assert dg == prod

    def test_float_identity(self, curve_mu):
        dg = np.polynomial.polynomial.polyder(curve_mu.g_coeffs)
        prod = np.polynomial.polynomial.polymul(
            curve_mu.Y_coeffs,
            np.polynomial.polynomial.polyder(curve_mu.lam_coeffs))
        assert np.max(np.abs(dg - prod)) < 1e-12


class TestUniformize:
    def test_exact_cube_root(self):
        cv = build_curve(Params(-0.6, 0.0, 0.0), sigma=0.0)
        assert uniformize(cv, 8.0, 1) == pytest.approx(2.0, abs=1e-13)

    def test_largest_real_root_at_zero(self, curve_ref):
        u = uniformize(curve_ref, 0.0, 1)
        assert u == pytest.approx(math.sqrt(15.0) / 2.0, abs=1e-13)

    def test_on_branch_point(self, curve_ref):
        with pytest.raises(OnBranchPoint):
            uniformize(curve_ref, curve_ref.alpha, 2)

    def test_cut_requires_side(self, curve_ref):
        with pytest.raises(BranchCutError):
            uniformize(curve_ref, curve_ref.alpha + 1.0, 2)
        # sheet 1 is not cut there
        uniformize(curve_ref, curve_ref.alpha + 1.0, 1)

    @given(st.floats(-15, 15), st.floats(-15, 15))
    @settings(max_examples=200, deadline=None)
    def test_residual_property(self, re, im):
        cv = _curve_mu_singleton()
        lam = complex(re, im)
        if min(abs(lam - cv.alpha), abs(lam - cv.beta)) < 1e-6:
            return
        u = uniformize_all(cv, np.array([lam]))[:, 0]
        resid = np.abs(pv(u, cv.lam_coeffs) - lam)
        assert np.max(resid) < 1e-12 * (1.0 + abs(lam))

    def test_bulk_residuals(self, curve_mu, rng):
        lam = rng.normal(size=10000) * 5 + 1j * rng.normal(size=10000) * 5
        u = uniformize_all(curve_mu, lam)
        resid = np.abs(pv(u, curve_mu.lam_coeffs) - lam[None, :])
        assert np.max(resid / (1.0 + np.abs(lam))) < 1e-12

    def test_reflection_symmetry(self, rng):
        # u_1(-lam; eta, -mu, nu) = -u_3(lam; eta, mu, nu) and cyclically
        cp = build_curve(Params(1.0, 0.1, 0.05))
        cm = build_curve(Params(1.0, -0.1, 0.05))
        for _ in range(25):
            lam = complex(rng.normal() * 3, rng.normal() * 3)
            if abs(lam.imag) < 1e-3:
                continue
            u_p = uniformize_all(cp, np.array([lam]))[:, 0]
            u_m = uniformize_all(cm, np.array([-lam]))[:, 0]
            assert abs(u_m[0] + u_p[2]) < 1e-10 * (1 + abs(lam))
            assert abs(u_m[1] + u_p[1]) < 1e-10 * (1 + abs(lam))
            assert abs(u_m[2] + u_p[0]) < 1e-10 * (1 + abs(lam))

    def test_sheet_gluing_conjugacy(self, curve_mu):
        # upper sheet-2 and lower sheet-3 limits coincide on the cut, and
        # the two limits of each glued sheet are complex conjugate
        x = curve_mu.alpha + 2.3
        u2p = uniformize(curve_mu, x, 2, side="+")
        u2m = uniformize(curve_mu, x, 2, side="-")
        u3p = uniformize(curve_mu, x, 3, side="+")
        u3m = uniformize(curve_mu, x, 3, side="-")
        assert u2p == u3m
        assert u3p == u2m
        assert abs(u2p - u3p.conjugate()) < 1e-14
        assert abs(u2p.imag) > 1e-3


class TestGSheet:
    def test_trivial_zero(self):
        cv = build_curve(Params(0.0, 0.0, 0.0), sigma=0.0)
        for sheet in (1, 2, 3):
            assert abs(g_sheet(cv, 1e-3 + 1e-3j, sheet)) < 1e-6

    def test_conjugation(self, curve_mu):
        lam = 1.7 + 0.9j
        assert g_sheet(curve_mu, lam.conjugate(), 1) == pytest.approx(
            g_sheet(curve_mu, lam, 1).conjugate(), rel=1e-13)

    def test_eta_term_exact_on_cube_curve(self):
        # sigma = mu = 0 keeps the uniformization an exact cube root, so the
        # phase match is exact including the eta-term
        cv = build_curve(Params(0.7, 0.0, 0.0), sigma=0.0)
        p = cv.params
        for lam in (3.0 + 1.0j, -2.0 + 0.4j, 9.0 - 2.0j):
            got = g_sheet(cv, lam, 1)
            want = theta_phase(lam, 1, p)
            assert abs(got - want) < 1e-12 * (1 + abs(want))


class TestTheta:
    def test_unit_values(self):
        p0 = Params(0.0, 0.0, 0.0)
        assert theta_phase(1.0, 1, p0) == pytest.approx(3.0 / 7.0, abs=1e-15)
        w = cmath.exp(2j * math.pi / 3)
        assert theta_phase(1.0, 2, p0) == pytest.approx(3.0 / 7.0 * w,
                                                        abs=1e-15)

    def test_large_argument(self):
        got = theta_phase(128.0, 1, Params(1.0, 0.0, 0.0))
        want = 3.0 / 7.0 * 128.0 ** (7.0 / 3.0) + 128.0 ** (5.0 / 3.0)
        assert got == pytest.approx(want, rel=1e-14)

    def test_negative_axis_needs_side(self):
        with pytest.raises(BranchCutError):
            theta_phase(-2.0, 1, Params(1.0, 0.0, 0.0))
        up = theta_phase(-2.0, 1, Params(1.0, 0.0, 0.0), side="+")
        dn = theta_phase(-2.0, 1, Params(1.0, 0.0, 0.0), side="-")
        assert up == pytest.approx(dn.conjugate(), rel=1e-14)

    def test_hat_permutation(self):
        p = Params(1.0, 0.2, 0.1)
        lam = 2.0 + 3.0j
        hat = theta_hat(lam, p)
        ths = [theta_phase(lam, j, p) for j in (1, 2, 3)]
        assert hat == (ths[0], ths[2], ths[1])
        hat_lower = theta_hat(lam.conjugate(), p)
        assert hat_lower == tuple(theta_phase(lam.conjugate(), j, p)
                                  for j in (1, 2, 3))


class TestAsymptotics:
    def test_slopes_reference(self, curve_ref):
        rep = check_g_asymptotics(curve_ref)
        for (sheet, half), (slope, _) in rep.items():
            assert abs(slope + 1.0 / 3.0) < 0.02, (sheet, half, slope)

    def test_slopes_interior(self):
        cv = build_curve(Params(1.0, 0.1, 0.2))
        rep = check_g_asymptotics(cv)
        for key, (slope, _) in rep.items():
            assert abs(slope + 1.0 / 3.0) < 0.02, (key, slope)


class TestBranchCoeffs:
    def test_generic_reference(self, curve_ref):
        bc = branch_coeffs(curve_ref)
        assert bc.case == "generic"
        a = math.sqrt(1.25)
        want = 20.0 * a / (9.0 * math.sqrt(3.0 * a))
        assert bc.rho_alpha == pytest.approx(want, rel=1e-14)
        assert bc.rho_alpha == bc.rho_beta    # mu = 0 symmetric curve
        assert bc.rho_alpha == pytest.approx(1.3566079635, rel=1e-9)

    def test_gamma_plus(self, curve_gp):
        bc = branch_coeffs(curve_gp)
        assert bc.case == "gamma-plus"
        a = math.sqrt(5.0 / 6.0)
        # c -> 0 limit of the mu != 0 boundary amplitude: prefactor 2ab
        want = 8.0 * math.sqrt(3.0) / (135.0 * a**3.5) * 2.0 * a * (5.0 / 3.0)
        assert bc.rho_hat == pytest.approx(want, rel=1e-14)

    def test_gamma_minus(self):
        cv = build_curve(Params(-0.6, 0.0, 0.0), sigma=0.0)
        bc = branch_coeffs(cv)
        assert bc.case == "gamma-minus"
        assert bc.b_coeff == pytest.approx(0.6 * cv.b, rel=1e-14)

    def test_local_fit_generic(self, curve_ref):
        for point in ("alpha", "beta"):
            p, rho = fit_branch_exponent(curve_ref, point)
            assert abs(p - 1.5) < 0.01
            bc = branch_coeffs(curve_ref)
            want = bc.rho_alpha if point == "alpha" else bc.rho_beta
            assert rho == pytest.approx(want, rel=1e-6)

    def test_local_fit_gamma_plus(self, curve_gp):
        bc = branch_coeffs(curve_gp)
        for point in ("alpha", "beta"):
            p, rho = fit_branch_exponent(curve_gp, point)
            assert abs(p - 2.5) < 0.02
            assert rho == pytest.approx(bc.rho_hat, rel=1e-6)

    def test_local_fit_boundary_mu(self):
        pms, sigma = map_abc(ABCoords(1.0, 3.0, 1.5))
        cv = build_curve(pms, sigma=sigma)
        bc = branch_coeffs(cv, case="boundary-mu")
        p, rho = fit_branch_exponent(cv, "beta")
        assert abs(p - 2.5) < 0.02
        assert rho == pytest.approx(bc.rho_hat_beta, rel=1e-6)
        p, rho = fit_branch_exponent(cv, "alpha")
        assert abs(p - 1.5) < 0.01
        assert rho == pytest.approx(bc.rho_alpha, rel=1e-6)


class TestCutAntisymmetry:
    def test_real_part_vanishes_on_cuts(self, curve_mu):
        # Re(g3 - g2) = 0 on (alpha, inf), Re(g2 - g1) = 0 on (-inf, beta)
        for x in np.linspace(curve_mu.alpha + 0.2, curve_mu.alpha + 8.0, 15):
            g3 = g_sheet(curve_mu, x, 3, side="+")
            g2 = g_sheet(curve_mu, x, 2, side="+")
            assert abs((g3 - g2).real) < 1e-10 * (1 + abs(g3))
        for x in np.linspace(curve_mu.beta - 8.0, curve_mu.beta - 0.2, 15):
            g2 = g_sheet(curve_mu, x, 2, side="+")
            g1 = g_sheet(curve_mu, x, 1, side="+")
            assert abs((g2 - g1).real) < 1e-10 * (1 + abs(g2))
