import math

import numpy as np
from numpy.testing import assert_allclose

from qpfb import uncertainty
from qpfb.quadrature import build_rule
from qpfb.quadrature import RadialGrid
from qpfb.quadrature import Signal
from qpfb.quadrature import weighted_norm
from qpfb.testing import assert_raises_message
from qpfb.testing import eq_
from qpfb.testing import is_false
from qpfb.testing import is_true
from qpfb.testing import ne_
from qpfb.testing import TestBase
from qpfb.testing.fixtures import gaussian
from qpfb.testing.fixtures import random_gaussian_class
from qpfb.testing.fixtures import random_params
from qpfb.testing.fixtures import small_rules
from qpfb.transform import QpfbParams
from qpfb.uncertainty import MeasurableSet
from qpfb.util import DomainError


class MeasurableSetTest(TestBase):
    def test_touching_merged(self):
        m = MeasurableSet([(0, 1), (1, 2), (3, 4)])
        eq_(m.intervals, ((0.0, 2.0), (3.0, 4.0)))

    def test_overlap(self):
        assert_raises_message(
            DomainError,
            "sorted and disjoint",
            MeasurableSet,
            [(0, 2), (1, 3)],
        )

    def test_unsorted(self):
        assert_raises_message(
            DomainError,
            "sorted and disjoint",
            MeasurableSet,
            [(2, 3), (0, 1)],
        )

    def test_bad_interval(self):
        assert_raises_message(
            DomainError, "0 <= lo < hi", MeasurableSet, [(1, 1)]
        )
        assert_raises_message(
            DomainError, "0 <= lo < hi", MeasurableSet, [(-1, 1)]
        )
        assert_raises_message(
            DomainError, "finite", MeasurableSet, [(0, np.inf)]
        )
        assert_raises_message(
            DomainError, r"\(lo, hi\) pairs", MeasurableSet, [(1,)]
        )

    def test_empty(self):
        m = MeasurableSet()
        is_true(m.empty)
        eq_(m.sup, 0.0)
        eq_(m.complement(3.0), MeasurableSet.interval(0, 3))

    def test_complement(self):
        m = MeasurableSet([(1, 2), (3, 5)])
        eq_(m.complement(5.0).intervals, ((0.0, 1.0), (2.0, 3.0)))
        eq_(m.complement(6.0).as_list(), [[0.0, 1.0], [2.0, 3.0], [5.0, 6.0]])

    def test_beyond_radius(self):
        assert_raises_message(
            DomainError,
            "beyond the truncation radius",
            MeasurableSet.interval(0, 5).complement,
            4.0,
        )

    def test_indicator(self):
        m = MeasurableSet([(1, 2)])
        eq_(list(m.indicator([0.5, 1.0, 1.5, 2.0, 2.5])), [0, 1, 1, 1, 0])

    def test_equality(self):
        eq_(MeasurableSet([(0, 1)]), MeasurableSet.interval(0.0, 1.0))
        ne_(MeasurableSet([(0, 1)]), MeasurableSet([(0, 2)]))
        ne_(MeasurableSet([(0, 1)]), [(0, 1)])


class WeightedMeasureTest(TestBase):
    def test_unit_interval(self):
        eq_(uncertainty.weighted_measure([(0, 1)], 0.0), 0.5)

    def test_empty(self):
        eq_(uncertainty.weighted_measure(MeasurableSet(), 0.0), 0)

    def test_half_order(self):
        assert_allclose(
            MeasurableSet([(1, 2)]).weighted_measure(0.5),
            7.0 / 3,
            rtol=1e-15,
        )

    def test_union_adds(self):
        assert_allclose(
            uncertainty.weighted_measure([(0, 1), (2, 3)], 0.0),
            0.5 + 2.5,
            rtol=1e-15,
        )

    def test_alpha(self):
        eq_(uncertainty.alpha(QpfbParams()), 1.0)
        assert_allclose(
            uncertainty.alpha(QpfbParams(b=2.0, gamma=0.5)),
            (2.0 / math.pi) / 8.0,
            rtol=1e-13,
        )


class TimeLimitTest(TestBase):
    def setUp(self):
        self.rule = build_rule(0.0, 12.0)

    def test_superset(self):
        grid = RadialGrid.uniform(4.0, 17)
        sig = Signal.from_function(gaussian, grid)
        limited = uncertainty.time_limit(sig, [(0, 4)])
        eq_(list(limited.values), list(sig.values))

    def test_empty(self):
        grid = RadialGrid.uniform(4.0, 17)
        limited = uncertainty.time_limit(gaussian, MeasurableSet(), grid)
        eq_(np.count_nonzero(limited.values), 0)

    def test_projection(self):
        grid = RadialGrid.uniform(4.0, 17)
        once = uncertainty.time_limit(gaussian, [(0.5, 2.5)], grid)
        twice = uncertainty.time_limit(once, [(0.5, 2.5)])
        eq_(list(once.values), list(twice.values))

    def test_needs_grid(self):
        assert_raises_message(
            DomainError,
            "needs a grid",
            uncertainty.time_limit,
            gaussian,
            [(0, 1)],
        )

    def test_tail_closed_form(self):
        assert_allclose(
            uncertainty.time_tail(gaussian, [(0, 1)], self.rule),
            math.sqrt(math.exp(-1) / 2),
            rtol=1e-10,
        )
        assert_allclose(
            uncertainty.time_tail(gaussian, [(0, 1)], self.rule),
            0.4288819,
            rtol=1e-6,
        )

    def test_relative_tail(self):
        # sqrt(2) * gaussian has unit norm
        assert_allclose(
            uncertainty.time_concentration(gaussian, [(0, 2)], self.rule),
            math.exp(-2),
            rtol=1e-10,
        )
        assert_allclose(
            uncertainty.time_tail(
                lambda s: math.sqrt(2) * gaussian(s), [(0, 2)], self.rule
            ),
            0.135335,
            rtol=1e-5,
        )

    def test_covering_set(self):
        eq_(uncertainty.time_tail(gaussian, [(0, 12)], self.rule), 0.0)

    def test_monotone(self):
        tails = [
            uncertainty.time_tail(gaussian, [(0, r)], self.rule)
            for r in (0.5, 1.0, 2.0, 3.0, 6.0)
        ]
        is_true(all(x >= y for x, y in zip(tails, tails[1:])))

    def test_zero_signal(self):
        assert_raises_message(
            DomainError,
            "zero signal",
            uncertainty.time_concentration,
            0.0,
            [(0, 1)],
            self.rule,
        )


class BandLimitTest(TestBase):
    def setUp(self):
        self.params = QpfbParams()
        self.rules = small_rules(0.0)

    def test_full_band(self):
        result = uncertainty.band_limit(
            self.params, gaussian, [(0, 8)], self.rules
        )
        assert_allclose(
            result.values,
            gaussian(self.rules.signal.nodes),
            rtol=0,
            atol=1e-4,
        )

    def test_empty_band(self):
        result = uncertainty.band_limit(
            self.params, gaussian, MeasurableSet(), self.rules
        )
        eq_(np.count_nonzero(result.values), 0)
        eq_(len(result), len(self.rules.signal))

    def test_idempotent(self):
        # a narrower band leaves a slowly decaying tail beyond R
        once = uncertainty.band_limit(
            self.params, gaussian, [(0, 4)], self.rules
        )
        twice = uncertainty.band_limit(
            self.params, once, [(0, 4)], self.rules
        )
        rule = self.rules.signal
        difference = weighted_norm(twice.values - once.values, rule, 2)
        assert difference / weighted_norm(once.values, rule, 2) <= 1e-3

    def test_band_tail_monotone(self):
        params = QpfbParams(0.2, 1.0, -0.1, 0.3, 0.0)
        tails = [
            uncertainty.band_tail(params, gaussian, [(0, r)], self.rules)
            for r in (0.5, 1.0, 2.0, 4.0)
        ]
        is_true(all(x >= y for x, y in zip(tails, tails[1:])))


class DonohoStarkTest(TestBase):
    def setUp(self):
        self.params = QpfbParams(0.2, 1.0, -0.1, 0.3, 0.0)
        self.rules = small_rules(0.0)

    def test_passes(self):
        report = uncertainty.donoho_stark_check(
            self.params, gaussian, [(0, 3)], [(0, 3)], self.rules
        )
        is_true(report.passed, report)
        is_false(report.vacuous)
        eq_(report.measure_M, 4.5)
        assert_allclose(report.normalization, math.sqrt(2), rtol=1e-10)
        eq_(report.relation, "ge")

    def test_normalization_invariant(self):
        small = uncertainty.donoho_stark_check(
            self.params,
            lambda s: 1e-3 * gaussian(s),
            [(0, 2)],
            [(0, 2)],
            self.rules,
        )
        plain = uncertainty.donoho_stark_check(
            self.params, gaussian, [(0, 2)], [(0, 2)], self.rules
        )
        assert_allclose(small.eps_M, plain.eps_M, rtol=1e-10)
        assert_allclose(small.eps_N, plain.eps_N, rtol=1e-8)

    def test_near_full_sets(self):
        report = uncertainty.donoho_stark_check(
            self.params, gaussian, [(0, 8)], [(0, 8)], self.rules
        )
        is_true(report.passed)
        assert report.eps_M + report.eps_N < 1e-4
        assert_allclose(report.bound, 1.0, atol=1e-3)

    def test_vacuous(self):
        report = uncertainty.donoho_stark_check(
            self.params, gaussian, [(0, 0.05)], [(0, 0.05)], self.rules
        )
        is_true(report.vacuous)
        is_true(report.passed)
        eq_(report.bound, 0.0)

    def test_epsilons(self):
        eps_M, eps_N = uncertainty.epsilon_concentrations(
            self.params, gaussian, [(0, 8)], [(0, 1)], self.rules
        )
        eq_(eps_M, 0.0)
        assert 0 < eps_N < 1

    def _random_interval(self, rng):
        lo = rng.choice([0.0, rng.uniform(0.0, 2.0)])
        return [(lo, lo + rng.uniform(0.2, 3.0))]

    def test_random_instances(self):
        rng = np.random.RandomState(31)
        for _ in range(100):
            params = random_params(rng)
            h = random_gaussian_class(rng)
            report = uncertainty.donoho_stark_check(
                params,
                h,
                self._random_interval(rng),
                self._random_interval(rng),
                small_rules(params.gamma, transform_R=10.0),
            )
            is_true(report.passed, (params, report))

    def test_zero_signal(self):
        assert_raises_message(
            DomainError,
            "zero signal",
            uncertainty.donoho_stark_check,
            self.params,
            0.0,
            [(0, 1)],
            [(0, 1)],
            self.rules,
        )


class HilbertSchmidtTest(TestBase):
    def setUp(self):
        self.rules = small_rules(0.0, panels=16)

    def test_empty(self):
        eq_(
            uncertainty.hs_norm_estimate(
                QpfbParams(), MeasurableSet(), [(0, 1)], self.rules
            ),
            0.0,
        )
        eq_(
            uncertainty.hs_norm_estimate(
                QpfbParams(), [(0, 1)], [], self.rules
            ),
            0.0,
        )

    def test_unit_squares(self):
        value = uncertainty.hs_norm_estimate(
            QpfbParams(), [(0, 1)], [(0, 1)], self.rules
        )
        assert 0 < value <= 0.5

    def test_monotone(self):
        params = QpfbParams(0.3, 1.5, -0.2, 0.1, 0.4, 0.5)
        rules = small_rules(0.5, panels=16)
        values = [
            uncertainty.hs_norm_estimate(params, [(0, r)], [(0, r)], rules)
            for r in (0.5, 1.0, 2.0, 3.0)
        ]
        is_true(all(x <= y for x, y in zip(values, values[1:])))

    def test_bound_random(self):
        rng = np.random.RandomState(5)
        for _ in range(50):
            gamma = rng.choice([0.0, 0.5, 1.0])
            a, b, c, d, e = rng.uniform(-1, 1, 5)
            params = QpfbParams(a, b + 2.0, c, d, e, gamma)
            lo, hi = sorted(rng.uniform(0, 4, 2))
            report = uncertainty.hs_bound_check(
                params,
                [(lo, hi + 0.1)],
                [(0, rng.uniform(0.5, 4))],
                small_rules(gamma, panels=8),
            )
            is_true(report.passed, report)


class LpConcentrationTest(TestBase):
    def setUp(self):
        self.params = QpfbParams()
        self.rules = small_rules(0.0)

    def test_exponents(self):
        for p in (1.25, 1.5, 2):
            report = uncertainty.lp_concentration_check(
                self.params, gaussian, [(0, 2)], [(0, 2)], p, self.rules
            )
            is_true(report.passed, report)
        eq_(report.name, "lp-concentration-p2")

    def test_l1_time_tail(self):
        report = uncertainty.lp_concentration_check(
            self.params, gaussian, [(0, 2)], [(0, 2)], 1.5, self.rules
        )
        assert_allclose(report.eps_M, math.exp(-2), rtol=1e-8)

    def test_phased_params(self):
        params = QpfbParams(0.2, 1.0, -0.1, 0.3, 0.0, 0.5)
        report = uncertainty.lp_concentration_check(
            params,
            gaussian,
            [(0, 2)],
            [(0, 3)],
            1.5,
            small_rules(0.5),
        )
        is_true(report.passed, report)

    def test_full_sets_wide_margin(self):
        report = uncertainty.lp_concentration_check(
            self.params, gaussian, [(0, 8)], [(0, 8)], 2, self.rules
        )
        is_true(report.passed)
        assert report.rhs > 5 * report.lhs

    def test_random_instances(self):
        rng = np.random.RandomState(37)
        for _ in range(30):
            params = random_params(rng)
            h = random_gaussian_class(rng)
            p = float(rng.choice([1.25, 1.5, 2.0]))
            report = uncertainty.lp_concentration_check(
                params,
                h,
                [(0.0, rng.uniform(0.3, 4.0))],
                [(0.0, rng.uniform(0.3, 4.0))],
                p,
                small_rules(params.gamma, transform_R=10.0),
            )
            is_true(report.passed, (params, report))

    def test_rejects_exponent(self):

        for p in (1, 2.5, "inf"):
            assert_raises_message(
                DomainError,
                "1 < p <= 2",
                uncertainty.lp_concentration_check,
                self.params,
                gaussian,
                [(0, 2)],
                [(0, 2)],
                p,
                self.rules,
            )
