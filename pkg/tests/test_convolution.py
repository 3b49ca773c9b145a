import math

import numpy as np
from numpy.testing import assert_allclose

from qpfb import convolution
from qpfb.quadrature import RadialGrid
from qpfb.testing import assert_raises_message
from qpfb.testing import eq_
from qpfb.testing import is_true
from qpfb.testing import TestBase
from qpfb.testing.fixtures import companion
from qpfb.testing.fixtures import gaussian
from qpfb.testing.fixtures import small_rule
from qpfb.transform import QpfbParams
from qpfb.translation import TranslationRule
from qpfb.util import DomainError


def even_companion(s):
    s = np.asarray(s, dtype=float)
    return s * s * np.exp(-s * s)


class YoungExponentTest(TestBase):
    def test_pairs(self):
        eq_(convolution.young_exponent(1, 1), 1.0)
        eq_(convolution.young_exponent(2, 1), 2.0)
        assert_allclose(convolution.young_exponent(1.5, 1.5), 3.0)
        eq_(convolution.young_exponent(2, 2), math.inf)
        eq_(convolution.young_exponent("inf", 1), math.inf)

    def test_four_thirds(self):
        assert_allclose(
            convolution.young_exponent(4.0 / 3, 4.0 / 3), 2.0, rtol=1e-12
        )

    def test_rejects_small_sum(self):
        assert_raises_message(
            DomainError,
            r"1/p \+ 1/q >= 1",
            convolution.young_exponent,
            2,
            3,
        )

    def test_rejects_p_below_one(self):
        assert_raises_message(
            DomainError, "p >= 1", convolution.young_exponent, 0.5, 1
        )


class ConvolveTest(TestBase):
    def setUp(self):
        self.params = QpfbParams(0.3, 1.0, 0.0, -0.2, 0.0, 0.5)
        self.rule = small_rule(0.5)
        self.trule = TranslationRule(0.5, 64)
        self.grid = RadialGrid.uniform(4.0, 9)

    def test_zero(self):
        result = convolution.convolve(
            self.params, gaussian, 0.0, self.grid, self.rule, self.trule
        )
        eq_(np.count_nonzero(result.values), 0)

    def test_commutativity(self):
        # the odd companion is only piecewise smooth in the angle variable
        report = convolution.commutativity_check(
            self.params,
            gaussian,
            companion,
            self.grid,
            self.rule,
            TranslationRule(0.5, 256),
        )
        is_true(report.passed, report)

    def test_commutativity_randomized(self):
        rng = np.random.RandomState(3)
        for gamma in (0.0, 0.5, 1.0):
            rule = small_rule(gamma)
            trule = TranslationRule(gamma, 64)
            a, d = rng.uniform(-0.5, 0.5, 2)
            params = QpfbParams(a, rng.uniform(0.5, 2.0), 0.1, d, 0.0, gamma)
            report = convolution.commutativity_check(
                params, gaussian, even_companion, self.grid, rule, trule
            )
            is_true(report.passed, report)

    def test_outer_phase(self):
        # the output carries exp(-i (a t**2 + d t)) over the classical part
        plain = QpfbParams(0.0, 1.0, 0.0, 0.0, 0.0, 0.5)
        phased = QpfbParams(0.3, 1.0, 0.0, -0.2, 0.0, 0.5)
        lhs = convolution.convolve(
            phased, gaussian, even_companion, self.grid, self.rule, self.trule
        ).values
        rhs = convolution.convolve(
            plain, gaussian, even_companion, self.grid, self.rule, self.trule
        ).values
        t = self.grid.points
        assert_allclose(
            lhs,
            np.exp(-1j * (0.3 * t * t - 0.2 * t)) * rhs,
            rtol=0,
            atol=1e-12,
        )

    def test_bilinearity(self):
        def combo(s):
            return 1.5 * gaussian(s) + 2.0j * even_companion(s)

        def conv(h, g):
            return convolution.convolve(
                self.params, h, g, self.grid, self.rule, self.trule
            ).values

        assert_allclose(
            conv(combo, gaussian),
            1.5 * conv(gaussian, gaussian)
            + 2.0j * conv(even_companion, gaussian),
            rtol=0,
            atol=1e-12,
        )
        assert_allclose(
            conv(gaussian, combo),
            1.5 * conv(gaussian, gaussian)
            + 2.0j * conv(gaussian, even_companion),
            rtol=0,
            atol=1e-12,
        )

    def test_order_mismatch(self):
        assert_raises_message(
            DomainError,
            "quadrature rule has gamma",
            convolution.convolve,
            self.params,
            gaussian,
            gaussian,
            self.grid,
            small_rule(0.0),
        )

    def test_nonfinite(self):
        assert_raises_message(
            DomainError,
            "non-finite",
            convolution.convolve,
            self.params,
            gaussian,
            lambda s: np.full(np.shape(s), np.inf),
            self.grid,
            self.rule,
            self.trule,
        )


class AssociativityTest(TestBase):
    def test_plain_phase(self):
        params = QpfbParams(0.0, 1.0, 0.4, 0.0, 0.2, 0.0)
        rule = small_rule(0.0, panels=16)

        def wide(s):
            return gaussian(np.asarray(s, dtype=float) / 1.5)

        report = convolution.associativity_check(
            params,
            gaussian,
            even_companion,
            wide,
            RadialGrid.uniform(3.0, 7),
            rule,
            TranslationRule(0.0, 48),
        )
        is_true(report.passed, report)
        eq_(report.name, "associativity")

    def test_rejects_outer_phase(self):
        rule = small_rule(0.0, panels=4)
        for a, d in ((0.3, 0.0), (0.0, -0.2)):
            assert_raises_message(
                DomainError,
                "associativity needs a = d = 0",
                convolution.associativity_check,
                QpfbParams(a, 1.0, 0.0, d, 0.0, 0.0),
                gaussian,
                gaussian,
                gaussian,
                [1.0],
                rule,
            )



class YoungTest(TestBase):
    def test_one_one_gaussians(self):
        rule = small_rule(0.0)
        report = convolution.young_check(
            QpfbParams(),
            gaussian,
            gaussian,
            1,
            1,
            rule,
            TranslationRule(0.0, 64),
        )
        is_true(report.passed, report)
        eq_(report.r, 1.0)
        eq_(report.name, "young-p1-q1")

    def test_zero_signal(self):
        rule = small_rule(0.0)
        report = convolution.young_check(
            QpfbParams(), 0.0, gaussian, 2, 1, rule, TranslationRule(0.0, 8)
        )
        eq_(report.lhs, 0.0)
        is_true(report.passed)

    def test_two_one(self):
        rule = small_rule(0.5)
        report = convolution.young_check(
            QpfbParams(gamma=0.5),
            gaussian,
            companion,
            2,
            1,
            rule,
            TranslationRule(0.5, 64),
        )
        is_true(report.passed, report)
        eq_(report.r, 2.0)

    def test_all_pairs(self):
        params = QpfbParams(0.3, 1.0, 0.0, -0.2, 0.0, 1.0)
        rule = small_rule(1.0)
        trule = TranslationRule(1.0, 64)
        for p, q in convolution.YOUNG_PAIRS:
            for h, g in (
                (gaussian, even_companion),
                (even_companion, gaussian),
            ):
                report = convolution.young_check(
                    params, h, g, p, q, rule, trule
                )
                is_true(report.passed, report)
                assert_allclose(
                    1.0 / p + 1.0 / q,
                    1.0 / report.r + 1.0,
                    rtol=0,
                    atol=1e-12,
                )

    def test_rejects_exponents(self):
        assert_raises_message(
            DomainError,
            "Young exponents",
            convolution.young_check,
            QpfbParams(),
            gaussian,
            gaussian,
            3,
            3,
            small_rule(0.0),
        )
