import math

import numpy as np
import pytest

from tau34.lensing import (gamma_C_separation, standard_contours,
                           verify_inequalities)
from tau34.param_domain import ABCoords, Params, map_abc, viete_roots
from tau34.spectral_curve import build_curve


class TestSeparation:
    def test_reference_point(self):
        ok, dist = gamma_C_separation(ABCoords(math.sqrt(1.25), 10.0 / 3.0,
                                               0.0))
        assert ok and dist > 0.1

    def test_figure_point(self):
        ok, dist = gamma_C_separation(ABCoords(0.8, 3.2, 1.2))
        assert ok and dist > 0.1

    def test_touching_limit(self):
        r = viete_roots(3.2, 1.2)
        ok, dist = gamma_C_separation(ABCoords(r.z_plus, 3.2, 1.2))
        assert not ok
        assert dist < 1e-9

    def test_monotone_approach(self):
        r = viete_roots(3.2, 1.2)
        dists = []
        for f in (0.5, 0.9, 0.99, 0.999):
            a = r.z_zero + f * (r.z_plus - r.z_zero)
            dists.append(gamma_C_separation(ABCoords(a, 3.2, 1.2))[1])
        assert all(np.diff(dists) < 0)
        assert dists[-1] < 1e-3

    def test_negative_c_mirror(self):
        ok, dist = gamma_C_separation(ABCoords(-0.8, 3.2, -1.2))
        assert ok and dist > 0.1


class TestInequalities:
    def test_reference_point_all_pass(self):
        cv = build_curve(Params(1.0, 0.0, 0.0))
        reports = verify_inequalities(cv, samples=1000)
        assert len(reports) == 6
        for r in reports:
            assert r.all_pass, (r.contour.kind, r.min_signed_value)
            assert r.min_signed_value > 0.0

    def test_domain_grid(self, d_grid20):
        for p in d_grid20:
            cv = build_curve(p)
            for r in verify_inequalities(cv, samples=400):
                assert r.all_pass, (p, r.contour.kind, r.min_signed_value)

    def test_gamma_plus_boundary(self):
        cv = build_curve(Params(1.0, 0.0, 125.0 / 108.0), sigma=5.0 / 3.0)
        for r in verify_inequalities(cv, samples=1000):
            assert r.all_pass, (r.contour.kind, r.min_signed_value)

    def test_boundary_mu_point(self):
        pms, sigma = map_abc(ABCoords(1.0, 3.0, 1.5))
        cv = build_curve(pms, sigma=sigma)
        for r in verify_inequalities(cv, samples=1000):
            assert r.all_pass, (r.contour.kind, r.min_signed_value)

    def test_contour_geometry_recorded(self):
        cv = build_curve(Params(1.0, 0.0, 0.0))
        specs = standard_contours(cv)
        kinds = {s.kind for s in specs}
        assert kinds == {"rising-alpha", "rising-beta", "lens-upper-alpha",
                         "lens-lower-alpha", "lens-upper-beta",
                         "lens-lower-beta"}
        ra = next(s for s in specs if s.kind == "rising-alpha")
        assert ra.direction == pytest.approx(9.0 * math.pi / 14.0)
        assert ra.anchor == cv.alpha
        rb = next(s for s in specs if s.kind == "rising-beta")
        assert rb.direction == pytest.approx(-5.0 * math.pi / 14.0)
