import math

from hypothesis import given
from hypothesis import strategies as st
import numpy as np
from numpy.testing import assert_allclose
from scipy import special

from qpfb import specfun
from qpfb.specfun import Order
from qpfb.testing import assert_raises
from qpfb.testing import assert_raises_message
from qpfb.testing import eq_
from qpfb.testing import is_true
from qpfb.testing import TestBase
from qpfb.util import DomainError


class OrderTest(TestBase):
    def test_weight_exponent(self):
        eq_(Order(0.25).weight_exponent, 1.5)

    def test_rejects_minus_one_half(self):
        assert_raises_message(
            DomainError, r"gamma > -1/2", Order, -0.5
        )

    def test_rejects_minus_one(self):
        assert_raises_message(DomainError, r"gamma > -1/2", Order, -1)

    def test_rejects_nonnumeric(self):
        assert_raises_message(DomainError, "real number", Order, "x")

    def test_as_order_passthrough(self):
        o = Order(1.0)
        is_true(specfun.as_order(o) is o)
        eq_(specfun.as_order(1.0), o)

    def test_immutable(self):
        assert_raises(AttributeError, setattr, Order(1.0), "gamma", 2.0)


class GammaFnTest(TestBase):
    def test_anchors(self):
        assert_allclose(specfun.gamma_fn(1.0), 1.0, rtol=1e-13)
        assert_allclose(specfun.gamma_fn(5.0), 24.0, rtol=1e-13)
        assert_allclose(
            specfun.gamma_fn(0.5), 1.772453850905516, rtol=1e-13
        )

    def test_factorials(self):
        for n in range(1, 20):
            assert_allclose(
                specfun.gamma_fn(n + 1.0), math.factorial(n), rtol=1e-13
            )

    def test_nonpositive(self):
        assert_raises_message(DomainError, "x > 0", specfun.gamma_fn, 0.0)
        assert_raises_message(DomainError, "x > 0", specfun.gamma_fn, -2.5)


class CGammaTest(TestBase):
    def test_values(self):
        assert_allclose(specfun.c_gamma(0), 1.0, rtol=1e-14)
        assert_allclose(
            specfun.c_gamma(0.5), 0.797884560802865, rtol=1e-13
        )
        assert_allclose(specfun.c_gamma(1), 0.5, rtol=1e-14)


class NormalizedBesselTest(TestBase):
    def test_zero_argument(self):
        for gamma in (-0.25, 0.0, 0.3, 1.0, 4.5):
            eq_(specfun.normalized_bessel(gamma, 0.0), 1.0)

    def test_half_order_is_sinc(self):
        x = np.linspace(0.05, 60.0, 2001)
        assert_allclose(
            specfun.normalized_bessel(0.5, x),
            np.sin(x) / x,
            rtol=0,
            atol=1e-10,
        )

    def test_sin_pi(self):
        assert abs(specfun.normalized_bessel(0.5, math.pi)) < 1e-10

    def test_first_zero_of_j0(self):
        assert (
            abs(specfun.normalized_bessel(0.0, 2.404825557695773)) < 1e-9
        )

    def test_against_scipy(self):
        x = np.linspace(0.01, 50.0, 1500)
        for gamma in (0.0, 0.25, 1.0, 2.5):
            expected = (
                special.gamma(gamma + 1.0)
                * (2.0 / x) ** gamma
                * special.jv(gamma, x)
            )
            assert_allclose(
                specfun.normalized_bessel(gamma, x),
                expected,
                rtol=0,
                atol=1e-10,
            )

    def test_large_arguments(self):
        x = np.linspace(50.0, 200.0, 301)
        expected = special.gamma(1.0) * special.jv(0.0, x)
        assert_allclose(
            specfun.normalized_bessel(0.0, x), expected, rtol=0, atol=1e-10
        )

    def test_large_orders(self):
        x = np.linspace(0.5, 200.0, 2000)
        for gamma in (5.0, 8.0, 12.0):
            expected = (
                special.gamma(gamma + 1.0)
                * (2.0 / x) ** gamma
                * special.jv(gamma, x)
            )
            got = specfun.normalized_bessel(gamma, x)
            assert_allclose(got, expected, rtol=0, atol=1e-10)
            is_true(np.max(np.abs(got)) <= 1.0 + 1e-12)

    def test_large_order_branches_agree(self):
        gamma = 8.0
        series_end = math.sqrt(4.0 * (gamma + 1.0) * specfun.SERIES_SPREAD)
        for cut in (series_end, gamma * gamma):
            below = specfun.normalized_bessel(gamma, np.nextafter(cut, 0))
            above = specfun.normalized_bessel(gamma, np.nextafter(cut, 1e3))
            assert abs(below - above) < 1e-10

    def test_very_large_order_finite(self):
        x = np.array([1.0, 50.0, 400.0, 1e5])
        got = specfun.normalized_bessel(200.0, x)
        is_true(np.all(np.isfinite(got)))
        is_true(np.all(np.abs(got) <= 1.0 + 1e-12))

    def test_crossover_branches_agree(self):
        # series and asymptotic branches meet at the cutoff
        cut = specfun.SERIES_CUTOFF
        below = specfun.normalized_bessel(0.75, np.nextafter(cut, 0))
        above = specfun.normalized_bessel(0.75, cut)
        assert abs(below - above) < 1e-10

    def test_evenness_is_exact(self):
        x = np.linspace(-100.0, 100.0, 801)
        eq_(
            list(specfun.normalized_bessel(1.5, x)),
            list(specfun.normalized_bessel(1.5, -x)),
        )

    def test_shape_preserved(self):
        x = np.ones((3, 4))
        eq_(specfun.normalized_bessel(0.0, x).shape, (3, 4))
        is_true(isinstance(specfun.normalized_bessel(0.0, 1.0), float))

    def test_nonfinite(self):
        assert_raises_message(
            DomainError,
            "finite",
            specfun.normalized_bessel,
            0.0,
            np.array([1.0, np.inf]),
        )

    @given(
        st.sampled_from([-0.4, -0.25, 0.0, 0.5, 1.0, 2.0, 3.5]),
        st.floats(min_value=-100.0, max_value=100.0),
    )
    def test_modulus_bounded(self, gamma, x):
        assert abs(specfun.normalized_bessel(gamma, x)) <= 1.0 + 1e-12


class BesselJTest(TestBase):
    def test_consistency_with_scipy(self):
        x = np.linspace(0.05, 50.0, 1000)
        for gamma in (0.0, 0.5, 1.5):
            assert_allclose(
                specfun.bessel_j(gamma, x),
                special.jv(gamma, x),
                rtol=0,
                atol=1e-10,
            )

    def test_requires_positive(self):
        assert_raises_message(
            DomainError, "x > 0", specfun.bessel_j, 0.0, [0.0, 1.0]
        )
