import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import alphadisc as ad
from alphadisc.errors import (
    AlphaZero,
    InvalidInput,
    MapSingularity,
    MissingParam,
    ParamOutOfRange,
    UnexpectedParam,
)
from alphadisc.transform import (
    AlphaParam,
    ContinuousTransferFunction,
    SampleSpec,
    alpha_substitute,
    disk_within_unit_circle,
    s_to_z_point,
    stability_disk,
    to_alpha,
    z_to_s_point,
)


def ratio(hd, z):
    return ad.poly_eval(hd.num, z) / ad.poly_eval(hd.den, z)


class TestTypes:
    def test_alpha_flags(self):
        assert AlphaParam(0.5).stable_range
        assert not AlphaParam(0.49).stable_range
        assert AlphaParam(-3.0).alpha == -3.0

    def test_alpha_rejects_nonfinite(self):
        with pytest.raises(InvalidInput):
            AlphaParam(math.inf)

    def test_sample(self):
        s = SampleSpec.from_fs(10000.0)
        assert s.T == 1e-4 and s.f_nyquist == 5000.0
        for bad in (0.0, -1.0, math.nan):
            with pytest.raises(InvalidInput):
                SampleSpec(bad)

    def test_properness_flag(self):
        assert ContinuousTransferFunction([1.0], [1.0, 1.0]).is_proper
        assert not ad.make_pi(1.0, 100.0).is_proper or ad.make_pi(1.0, 100.0).is_proper
        assert not ContinuousTransferFunction([0.0, 0.0, 1.0], [1.0, 1.0]).is_proper


class TestPointMaps:
    def test_origin_maps_to_one(self):
        for a in (0.2, 0.5, 1.0):
            assert s_to_z_point(0.0, a, SampleSpec(0.3)) == 1.0

    def test_backward_difference_point(self):
        assert s_to_z_point(-1.0, 1.0, SampleSpec(1.0)) == 0.5

    def test_tustin_on_unit_circle(self):
        z = s_to_z_point(2j * np.pi * 1000, 0.5, SampleSpec(1e-4))
        assert abs(abs(z) - 1.0) <= 1e-12

    def test_z_one_maps_to_origin(self):
        assert z_to_s_point(1.0, 0.7, SampleSpec(1e-3)) == 0.0

    def test_tustin_pole(self):
        with pytest.raises(MapSingularity):
            z_to_s_point(-1.0, 0.5, SampleSpec(2.0))

    def test_s_pole(self):
        with pytest.raises(MapSingularity):
            s_to_z_point(1.0, 1.0, SampleSpec(1.0))

    def test_round_trip_example(self):
        z0 = 0.3 + 0.4j
        s = SampleSpec(1e-3)
        assert abs(s_to_z_point(z_to_s_point(z0, 0.7, s), 0.7, s) - z0) <= 1e-12

    @given(
        st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 1.5), st.floats(1e-5, 1.0)
    )
    def test_moebius_inverse(self, re, im, a, T):
        z = complex(re, im)
        assume(abs(z - (a - 1) / a) > 1e-6 and abs(z) > 1e-6)
        s = SampleSpec(T)
        back = s_to_z_point(z_to_s_point(z, a, s), a, s)
        # near z = 0 the map's numerator cancels; scale by max(1, |z|)
        assert abs(back - z) <= 1e-11 * max(1.0, abs(z))

    @given(st.floats(-1e4, 1e4))
    def test_tustin_maps_axis_to_circle(self, w):
        s = SampleSpec(1e-3)
        assume(abs(w * s.T) < 10)
        assert abs(abs(s_to_z_point(1j * w, 0.5, s)) - 1.0) <= 1e-12

    @given(st.floats(0.51, 1.0), st.floats(1e-3, 1e4))
    def test_axis_inside_for_alpha_above_half(self, a, w):
        s = SampleSpec(1e-3)
        assert abs(s_to_z_point(1j * w, a, s)) < 1.0


class TestSubstitution:
    def test_integrator(self):
        hd = alpha_substitute(ContinuousTransferFunction([1.0], [0.0, 1.0]), 0.7, SampleSpec(0.01))
        assert np.allclose(hd.num.coeffs, [0.01 * 0.3, 0.01 * 0.7], rtol=1e-15)
        assert hd.den.tolist() == [-1.0, 1.0]

    def test_differentiator_tustin(self):
        hd = alpha_substitute(ContinuousTransferFunction([0.0, 1.0], [1.0]), 0.5, SampleSpec(2.0))
        assert hd.num.tolist() == [-1.0, 1.0]
        assert hd.den.tolist() == [1.0, 1.0]

    def test_provenance(self, lpf, fs10k):
        hd = alpha_substitute(lpf, 0.7, fs10k)
        assert hd.alpha_used == AlphaParam(0.7) and hd.sample == fs10k

    def test_lpf_point_equality(self, lpf, fs10k, rng):
        # oracle: evaluate H(s) at the pre-image of each z
        hd = alpha_substitute(lpf, 0.7, fs10k)
        z = rng.uniform(0.2, 2.0, 32) * np.exp(2j * np.pi * rng.random(32))
        for zi in z:
            want = lpf(z_to_s_point(zi, 0.7, fs10k))
            assert abs(ratio(hd, zi) - want) <= 1e-10 * abs(want)

    @pytest.mark.parametrize("kind", ["lpf", "pi", "pr", "notch"])
    @pytest.mark.parametrize("a", [0.3, 0.5, 0.8, 1.0, 1.7])
    def test_master_property_plants(self, kind, a, fs10k, rng):
        h = ad.make_plant(kind)
        hd = alpha_substitute(h, a, fs10k)
        z = rng.uniform(0.3, 1.8, 32) * np.exp(2j * np.pi * rng.random(32))
        for zi in z:
            want = h(z_to_s_point(zi, a, fs10k))
            assert abs(ratio(hd, zi) - want) <= 1e-10 * abs(want)

    coeff = st.one_of(st.just(0.0), st.floats(1e-6, 5), st.floats(-5, -1e-6))

    @given(
        st.lists(coeff, min_size=1, max_size=4),
        st.lists(coeff, min_size=1, max_size=4),
        st.floats(0.1, 1.5),
        st.floats(0.01, 1.0),
        st.floats(0.3, 2.0),
        st.floats(0, 2 * np.pi),
    )
    def test_master_property_random(self, num, den, a, T, r, phi):
        assume(any(num) and any(den))
        h = ContinuousTransferFunction(num, den)
        z = r * np.exp(1j * phi)
        assume(abs(a * z + 1 - a) > 1e-3)
        s = SampleSpec(T)
        sval = z_to_s_point(z, a, s)
        hd = alpha_substitute(h, a, s)
        d = ad.poly_eval(h.den, sval)
        nval = ad.poly_eval(h.num, sval)
        # keep away from poles and zeros where relative error is meaningless
        scale = max(1.0, abs(sval)) ** max(h.num.degree(), h.den.degree())
        assume(abs(d) > 1e-6 * scale * max(abs(h.den.coeffs)))
        assume(abs(nval) > 1e-6 * scale * max(abs(h.num.coeffs)))
        want = nval / d
        assert abs(ratio(hd, z) - want) <= 1e-10 * abs(want)


class TestDisk:
    def test_examples(self):
        d = stability_disk(0.5)
        assert (d.center, d.radius) == (0.0, 1.0)
        d = stability_disk(1.0)
        assert (d.center, d.radius) == (0.5, 0.5)
        d = stability_disk(0.25)
        assert (d.center, d.radius) == (-1.0, 2.0)
        assert not disk_within_unit_circle(d)

    def test_within(self):
        assert disk_within_unit_circle(stability_disk(0.5))
        assert disk_within_unit_circle(stability_disk(0.75))
        assert not disk_within_unit_circle(stability_disk(0.49))

    def test_alpha_zero(self):
        with pytest.raises(AlphaZero):
            stability_disk(0.0)

    def test_negative_alpha_is_exterior(self):
        d = stability_disk(-0.5)
        assert d.exterior and d.radius == 1.0 and not disk_within_unit_circle(d)

    @given(st.floats(1e-6, 1e6))
    def test_right_crossing_exactly_one(self, a):
        d = stability_disk(a)
        assert d.crossings[0] == 1.0
        assert math.isclose(d.crossings[1], 1.0 - 1.0 / a, rel_tol=1e-12, abs_tol=1e-12)

    @given(st.floats(-1e6, -1e-6))
    def test_exterior_crossings(self, a):
        one, other = stability_disk(a).crossings
        assert math.isclose(one, 1.0, rel_tol=1e-15)
        assert math.isclose(other, 1.0 - 1.0 / a, rel_tol=1e-12)

    @given(st.floats(1e-3, 50.0))
    def test_within_iff_alpha_at_least_half(self, a):
        assert disk_within_unit_circle(stability_disk(a)) == (a >= 0.5)

    @given(st.floats(0.05, 3.0), st.floats(-1e4, -1e-3), st.floats(-1e4, 1e4))
    def test_left_half_plane_lands_in_disk(self, a, sigma, w):
        s = complex(sigma, w)
        T = SampleSpec(1e-3)
        assume(abs(1 - s * a * T.T) > 1e-9)
        z = s_to_z_point(s, a, T)
        d = stability_disk(a)
        assert abs(z - d.center) <= d.radius * (1 + 1e-9)


class TestToAlpha:
    def test_table_relations(self):
        assert to_alpha("al_alaoui", 0.5).alpha == 0.75
        assert to_alpha("kim", 0.0).alpha == 1.0
        assert to_alpha("tustin").alpha == 0.5
        assert to_alpha("euler").alpha == 1.0
        assert to_alpha("gbt", -2.5).alpha == -2.5
        assert to_alpha("kim", 1.0).alpha == 0.5

    def test_al_alaoui_interpolates(self):
        assert to_alpha("al_alaoui", 0.0) == to_alpha("tustin")
        assert to_alpha("al_alaoui", 1.0) == to_alpha("euler")

    @pytest.mark.parametrize(
        "method,param,exc",
        [
            ("kim", 1.5, ParamOutOfRange),
            ("al_alaoui", -0.1, ParamOutOfRange),
            ("kim", None, MissingParam),
            ("gbt", None, MissingParam),
            ("gbt", math.inf, ParamOutOfRange),
            ("tustin", 0.3, UnexpectedParam),
            ("zoh", None, InvalidInput),
        ],
    )
    def test_errors(self, method, param, exc):
        with pytest.raises(exc):
            to_alpha(method, param)


def test_coefficients_within_ulps_of_exact():
    # slow cubic numerator at fs = 10 kHz: the expansion must match exact
    # rational arithmetic to a few ulps, whatever the evaluation conditioning
    import sympy as sp

    a, smp = 0.6975869576605535, SampleSpec.from_fs(1e4)
    h = ContinuousTransferFunction([-0.75304769, -3.79708683, -3.36994544, -0.07002131],
                                   [1.78174691, -2.2595889])
    hd = alpha_substitute(h, a, smp)
    z = sp.symbols("z")
    T, A = sp.Rational(smp.T), sp.Rational(a)
    for poly, got in ((h.num, hd.num), (h.den, hd.den)):
        exact = sp.expand(sum(sp.Rational(float(c)) * (z - 1) ** k * (T * (A * z + 1 - A)) ** (3 - k)
                              for k, c in enumerate(poly.coeffs)))
        want = [float(c) for c in reversed(sp.Poly(exact, z).all_coeffs())]
        np.testing.assert_array_max_ulp(got.coeffs, np.array(want), maxulp=16)
