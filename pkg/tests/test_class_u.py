"""Coefficient map, feasibility region, catalog, and the defect checker."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from coefflab.class_u import (
    CATALOG_NAMES,
    EvaluationFailure,
    SchwarzParams,
    UnknownName,
    UParamPoint,
    c2_limit_abs,
    c3_limit_abs,
    catalog,
    coefficient_quintet,
    membership_max_defect,
    named_evaluator,
    project_feasible,
    schwarz_feasible,
    u_coefficients,
)

SQRT2 = math.sqrt(2.0)
F1_POINT = UParamPoint(2j, SchwarzParams(1, 0, 0))


class TestFeasibility:
    def test_extreme_c1(self):
        chk = schwarz_feasible(SchwarzParams(1, 0, 0))
        assert chk.feasible
        assert chk.margins == pytest.approx((0.0, 0.0, 0.0), abs=1e-15)

    def test_origin(self):
        chk = schwarz_feasible(SchwarzParams(0, 0, 0))
        assert chk.feasible
        assert chk.margins == pytest.approx((1.0, 0.5, 1.0 / 3.0))

    def test_violating_c2(self):
        chk = schwarz_feasible(SchwarzParams(0.5, 0.5, 0))
        assert not chk.feasible
        assert chk.margins[1] == pytest.approx(-0.125)  # 0.375 - 0.5

    def test_phase_invariance(self):
        a = schwarz_feasible(SchwarzParams(0.4j, -0.3, 0.1))
        b = schwarz_feasible(SchwarzParams(0.4, 0.3j, -0.1j))
        assert a.margins == pytest.approx(b.margins)

    def test_limit_helpers(self):
        assert c2_limit_abs(0.0) == pytest.approx(0.5)
        assert c2_limit_abs(1.0) == 0.0
        assert c3_limit_abs(0.0, 0.0) == pytest.approx(1.0 / 3.0)
        # at (1/sqrt2, 1/4) the bound collapses to 1/(6 sqrt2): the slow-growth
        # catalog entry sits exactly on it
        assert c3_limit_abs(1.0 / SQRT2, 0.25) == pytest.approx(
            (1.0 - 0.5 - 0.25 / (1.0 + 1.0 / SQRT2)) / 3.0
        )
        assert c3_limit_abs(1.0 / SQRT2, 0.25) == pytest.approx(1.0 / (6.0 * SQRT2))


class TestProjection:
    def test_feasible_is_fixed_point(self):
        p = SchwarzParams(0.3, 0.2j, 0.05)
        assert project_feasible(p) == p

    def test_scales_c2(self):
        q = project_feasible(SchwarzParams(0.5, 0.5, 0))
        assert q.c1 == 0.5 and q.c2 == pytest.approx(0.375) and q.c3 == 0

    def test_collapses_tail_when_c1_hits_one(self):
        q = project_feasible(SchwarzParams(2, 1, 1))
        assert (q.c1, q.c2, q.c3) == (1 + 0j, 0j, 0j)

    def test_preserves_phase(self):
        q = project_feasible(SchwarzParams(1 + 1j, 0.3 - 0.4j, 0))
        assert cmath.phase(q.c1) == pytest.approx(cmath.phase(1 + 1j))
        assert cmath.phase(q.c2) == pytest.approx(cmath.phase(0.3 - 0.4j))


_small = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(_small, _small, _small)
def test_projection_feasible_and_idempotent(c1, c2, c3):
    q = project_feasible(SchwarzParams(c1, c2, c3))
    assert schwarz_feasible(q).feasible
    assert project_feasible(q) == q


class TestCoefficientMap:
    def test_rotated_koebe_point(self):
        w = u_coefficients(F1_POINT, 5)
        assert w.a == pytest.approx((1, 2j, -3, -4j, 5))

    def test_origin_gives_identity(self):
        w = u_coefficients(UParamPoint(0, SchwarzParams(0, 0, 0)), 5)
        assert w.a == pytest.approx((1, 0, 0, 0, 0))

    def test_zero_a2_slow_growth_prefix(self):
        # a5 = c3 + c1^2 = 0 + 1/2
        pt = UParamPoint(0, SchwarzParams(1 / SQRT2, 0.25, 0))
        w = u_coefficients(pt, 5)
        assert w.a == pytest.approx((1, 0, 0.7071067811865476, 0.25, 0.5))

    def test_series_path_beyond_a5(self):
        # f1/z = 1/(1-iz)^2 has a_n = n i^(n-1)
        w = u_coefficients(F1_POINT, 8)
        assert w.a == pytest.approx((1, 2j, -3, -4j, 5, 6j, -7, -8j))

    def test_quintet_formulas(self):
        a3, a4, a5 = coefficient_quintet(2j, 1, 0, 0)
        assert (a3, a4, a5) == pytest.approx((-3, -4j, 5))

    def test_a2_radius_enforced(self):
        with pytest.raises(ValueError):
            UParamPoint(2.5, SchwarzParams(0, 0, 0))


def test_map_and_series_agree_on_sampled_points():
    from coefflab.search import sample_point

    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(300):
        pt = sample_point(rng, "free")
        w = u_coefficients(pt, 5)
        a3, a4, a5 = coefficient_quintet(pt.a2, pt.schwarz.c1, pt.schwarz.c2, pt.schwarz.c3)
        worst = max(worst, abs(w.a[2] - a3), abs(w.a[3] - a4), abs(w.a[4] - a5))
    assert worst <= 1e-10


class TestCatalog:
    def test_names(self):
        assert CATALOG_NAMES == ("identity", "f1", "f2", "f3", "f4", "koebe")

    def test_windows(self):
        assert catalog("identity").window.a == pytest.approx((1, 0, 0, 0, 0))
        assert catalog("f1").window.a == pytest.approx((1, 2j, -3, -4j, 5))
        assert catalog("f2").window.a == pytest.approx((1, 0, 1, 0, 1))
        assert catalog("f3").window.a == pytest.approx((1, 0, 1j, 0, -1))
        assert catalog("koebe").window.a == pytest.approx((1, 2, 3, 4, 5))

    def test_slow_growth_window(self):
        # a5 follows from its own expansion: c3 + c1^2 = 1/2 - 1/(6 sqrt2)
        w = catalog("f4").window
        assert w.coeff(2) == 0
        assert w.coeff(3) == pytest.approx(1 / SQRT2)
        assert w.coeff(4) == pytest.approx(0.25)
        assert w.coeff(5) == pytest.approx(0.5 - 1 / (6 * SQRT2))

    def test_unknown_name(self):
        with pytest.raises(UnknownName):
            catalog("f9")
        with pytest.raises(UnknownName):
            named_evaluator("nope")

    def test_params_reproduce_windows(self):
        for name in CATALOG_NAMES:
            entry = catalog(name)
            w = u_coefficients(entry.param, 5)
            assert w.a == pytest.approx(entry.window.a), name

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_evaluator_matches_window_by_fft(self, name):
        # Taylor coefficients recovered from 256 equally spaced samples on
        # |z| = 0.25; geometric aliasing error is far below the 1e-9 contract.
        entry = catalog(name)
        k, r = 256, 0.25
        zs = r * np.exp(2j * np.pi * np.arange(k) / k)
        vals = np.array([entry.evaluator(complex(z)) for z in zs])
        hat = np.fft.fft(vals) / k
        for n in range(1, 6):
            an = hat[n] / r**n
            assert abs(an - entry.window.coeff(n)) <= 1e-9, (name, n)


def test_slow_growth_kernel_against_quadrature():
    # omega1(z) = sqrt2 z - log(1 + z/sqrt2) must equal the line integral of
    # (alpha + t)/(1 + alpha t), alpha = 1/sqrt2, from 0 to z.
    alpha = 1 / SQRT2
    omega1 = lambda z: SQRT2 * z - cmath.log(1 + z / SQRT2)
    rng = np.random.default_rng(424242)
    for _ in range(10):
        r = 0.9 * math.sqrt(rng.random())
        th = 2 * math.pi * rng.random()
        z = complex(r * math.cos(th), r * math.sin(th))
        integrand = lambda s: (alpha + s * z) / (1 + alpha * s * z) * z
        re, _ = quad(lambda s: integrand(s).real, 0, 1, epsabs=1e-12)
        im, _ = quad(lambda s: integrand(s).imag, 0, 1, epsabs=1e-12)
        assert abs(complex(re, im) - omega1(z)) <= 1e-8


class TestMembership:
    def test_rotated_koebe_defect_is_r_squared(self):
        rep = membership_max_defect(catalog("f1").evaluator, (0.99,), 256)
        assert rep.max_defect == pytest.approx(0.9801, abs=1e-5)
        assert rep.max_defect < 1

    def test_koebe_defect(self):
        rep = membership_max_defect(catalog("koebe").evaluator, (0.9,), 256)
        assert rep.max_defect == pytest.approx(0.81, abs=1e-5)

    def test_specimen_flagged_with_witness(self):
        rep = membership_max_defect(named_evaluator("z+2z3"), (0.7,), 256)
        assert rep.max_defect > 1
        # z/f vanishes at +-i/sqrt2, so the blow-up sits on the imaginary axis
        assert abs(rep.argmax.real) < 0.05 and abs(abs(rep.argmax.imag) - 0.7) < 0.05

    def test_catalog_members_pass_both_radii(self):
        for name in CATALOG_NAMES:
            rep = membership_max_defect(catalog(name).evaluator, (0.9, 0.99), 64)
            assert rep.max_defect < 1, name

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            membership_max_defect(catalog("f1").evaluator, (), 64)
        with pytest.raises(ValueError):
            membership_max_defect(catalog("f1").evaluator, (1.0,), 64)
        with pytest.raises(ValueError):
            membership_max_defect(catalog("f1").evaluator, (0.5,), 4)

    def test_non_finite_evaluator(self):
        with pytest.raises(EvaluationFailure):
            membership_max_defect(lambda z: complex("nan"), (0.5,), 16)

    def test_pole_inside_grid(self):
        # 1/(z - 0.5) style blow-up: f(0.5) = inf on the r=0.5 circle
        evil = lambda z: z / (z - 0.5)
        with pytest.raises(EvaluationFailure):
            membership_max_defect(evil, (0.5,), 16)
