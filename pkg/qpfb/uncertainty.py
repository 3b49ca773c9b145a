"""Time and band limiting, and the Donoho-Stark type concentration bounds.

Set measures are weighted: ``|M| = int_M s**(2 gamma + 1) ds``.  Norms of
restricted or tail parts of a signal are integrated with rules built on
the set (or its complement) itself, so indicator functions never meet a
quadrature node at a jump.

"""
import logging
import math

import numpy as np

from .quadrature import as_grid
from .quadrature import as_rules
from .quadrature import build_set_rule
from .quadrature import norm_exponent
from .quadrature import sample
from .quadrature import Signal
from .quadrature import weighted_norm
from .report import CheckReport
from .report import ConcentrationReport
from .report import LpConcentrationReport
from .specfun import as_order
from .specfun import c_gamma
from .transform import forward
from .transform import inverse
from .transform import kernel
from .util import DomainError

log = logging.getLogger(__name__)

CHUNK_ELEMENTS = 1 << 20


class MeasurableSet(object):
    """A finite union of disjoint closed intervals in ``[0, inf)``.

    Intervals are given as ``(lo, hi)`` pairs, sorted and pairwise
    disjoint, each with ``0 <= lo < hi``; intervals that merely touch are
    merged.

    """

    def __init__(self, intervals=()):
        cleaned = []
        for pair in intervals:
            try:
                lo, hi = (float(v) for v in pair)
            except (TypeError, ValueError):
                raise DomainError(
                    "intervals must be (lo, hi) pairs; got %r" % (pair,)
                )
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise DomainError("interval limits must be finite")
            if lo < 0 or lo >= hi:
                raise DomainError(
                    "intervals must satisfy 0 <= lo < hi; got [%r, %r]"
                    % (lo, hi)
                )
            if cleaned and lo < cleaned[-1][1]:
                raise DomainError(
                    "intervals must be sorted and disjoint; [%r, %r] "
                    "overlaps [%r, %r]" % ((lo, hi) + tuple(cleaned[-1]))
                )
            if cleaned and lo == cleaned[-1][1]:
                cleaned[-1] = (cleaned[-1][0], hi)
            else:
                cleaned.append((lo, hi))
        self.intervals = tuple(cleaned)

    @classmethod
    def interval(cls, lo, hi):
        return cls([(lo, hi)])

    @property
    def empty(self):
        return not self.intervals

    @property
    def sup(self):
        return self.intervals[-1][1] if self.intervals else 0.0

    def check_within(self, R):
        if self.sup > R:
            raise DomainError(
                "set %r extends beyond the truncation radius %r" % (self, R)
            )

    def indicator(self, points):
        """1.0 where a point lies in the set, else 0.0."""
        points = np.asarray(points, dtype=float)
        inside = np.zeros(points.shape, dtype=bool)
        for lo, hi in self.intervals:
            inside |= (points >= lo) & (points <= hi)
        return inside.astype(float)

    def complement(self, R):
        """The closure of ``[0, R]`` minus this set."""
        self.check_within(R)
        pieces = []
        start = 0.0
        for lo, hi in self.intervals:
            if lo > start:
                pieces.append((start, lo))
            start = hi
        if start < R:
            pieces.append((start, R))
        return MeasurableSet(pieces)

    def lebesgue_measure(self):
        return sum(hi - lo for lo, hi in self.intervals)

    def weighted_measure(self, order):
        return weighted_measure(self, order)

    def rule(self, order, R, panels, nodes_per_panel):
        self.check_within(R)
        return build_set_rule(
            order, self.intervals, R, panels, nodes_per_panel
        )

    def as_list(self):
        return [list(pair) for pair in self.intervals]

    def __eq__(self, other):
        return (
            isinstance(other, MeasurableSet)
            and self.intervals == other.intervals
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "MeasurableSet(%r)" % (list(self.intervals),)


def as_set(value):
    if isinstance(value, MeasurableSet):
        return value
    return MeasurableSet(value)


def weighted_measure(measurable_set, order):
    """``sum (hi**(2 gamma + 2) - lo**(2 gamma + 2)) / (2 gamma + 2)``."""
    power = as_order(order).weight_exponent + 1.0
    return sum(
        (hi ** power - lo ** power) / power
        for lo, hi in as_set(measurable_set).intervals
    )


def alpha(params):
    """``c_gamma**2 / |b|**(2 gamma + 2)``."""
    return c_gamma(params.order) ** 2 / abs(params.b) ** (
        2.0 * params.gamma + 2.0
    )


def time_limit(h, measurable_set, grid=None):
    """``P_M h = chi_M h`` sampled on ``grid`` (default: the grid of
    ``h`` when it is a :class:`.Signal`)."""
    measurable_set = as_set(measurable_set)
    if grid is None:
        if not isinstance(h, Signal):
            raise DomainError("time_limit needs a grid for functional input")
        grid = h.grid
    grid = as_grid(grid)
    values = measurable_set.indicator(grid.points) * sample(h, grid.points)
    return Signal(grid, values)


def _set_rule(measurable_set, rule):
    return measurable_set.rule(
        rule.order, rule.R, rule.panels, rule.nodes_per_panel
    )


def band_limit(params, h, measurable_set, rules, out_grid=None):
    """``Q_N h = B^-1 (chi_N B h)`` on ``out_grid`` (default: the signal
    rule's nodes).

    ``B h`` is evaluated on a rule covering ``N`` only, and the inverse
    integrates over that rule.

    """
    rules = as_rules(rules)
    measurable_set = as_set(measurable_set)
    if out_grid is None:
        out_grid = rules.signal.grid
    out_grid = as_grid(out_grid)
    band_rule = _set_rule(measurable_set, rules.transform)
    if not len(band_rule):
        return Signal(out_grid, np.zeros(len(out_grid)))
    bh = forward(params, h, band_rule.grid, rules.signal)
    return inverse(params, bh, out_grid, band_rule)


def time_tail(h, measurable_set, rule, p=2):
    """``||h - chi_M h||_p`` over ``[0, R]``."""
    tail = as_set(measurable_set).complement(rule.R)
    tail_rule = _set_rule(tail, rule)
    if not len(tail_rule):
        return 0.0
    return weighted_norm(sample(h, tail_rule.nodes), tail_rule, p)


def band_tail(params, h, measurable_set, rules, p=2):
    """``||B h - chi_N B h||_p`` over ``[0, R_t]``."""
    rules = as_rules(rules)
    tail = as_set(measurable_set).complement(rules.transform.R)
    tail_rule = _set_rule(tail, rules.transform)
    if not len(tail_rule):
        return 0.0
    bh = forward(params, h, tail_rule.grid, rules.signal)
    return weighted_norm(bh.values, tail_rule, p)


def time_concentration(h, measurable_set, rule, p=2):
    """``||h - chi_M h||_p / ||h||_p``."""
    norm = weighted_norm(h, rule, p)
    if norm == 0.0:
        raise DomainError("concentration of the zero signal is undefined")
    return time_tail(h, measurable_set, rule, p) / norm


def band_concentration(params, h, measurable_set, rules, p=2):
    """``||B h - chi_N B h||_p / ||B h||_p``."""
    rules = as_rules(rules)
    bh = forward(params, h, rules.transform.grid, rules.signal)
    norm = weighted_norm(bh.values, rules.transform, p)
    if norm == 0.0:
        raise DomainError("concentration of the zero signal is undefined")
    return band_tail(params, h, measurable_set, rules, p) / norm


def _scaled(h, factor):
    if isinstance(h, Signal):
        return Signal(h.grid, factor * h.values)
    return lambda s: factor * sample(h, s)


def epsilon_concentrations(params, h, M, N, rules):
    """``(eps_M, eps_N)``: the L2 tails of ``h`` outside ``M`` and of
    ``B h`` outside ``N``, both relative to ``||h||_2``."""
    rules = as_rules(rules)
    norm = weighted_norm(h, rules.signal, 2)
    if norm == 0.0:
        raise DomainError("concentration of the zero signal is undefined")
    eps_M = time_tail(h, M, rules.signal) / norm
    eps_N = band_tail(params, h, N, rules) / norm
    return eps_M, eps_N


def donoho_stark_check(
    params, h, M, N, rules, tolerance=1e-8, name="donoho-stark"
):
    """Check ``|M| |N| >= (1 - eps_M - eps_N)**2 / alpha``.

    ``h`` is normalized to unit L2 norm first; the factor applied is
    recorded on the report.  Instances with ``eps_M + eps_N >= 1`` are
    reported as vacuous.

    """
    rules = as_rules(rules)
    M, N = as_set(M), as_set(N)
    norm = weighted_norm(h, rules.signal, 2)
    if norm == 0.0:
        raise DomainError("concentration of the zero signal is undefined")
    factor = 1.0 / norm
    unit = _scaled(h, factor)
    eps_M, eps_N = epsilon_concentrations(params, unit, M, N, rules)
    slack = max(1.0 - eps_M - eps_N, 0.0)
    bound = slack ** 2 / alpha(params)
    report = ConcentrationReport(
        name,
        eps_M,
        eps_N,
        weighted_measure(M, params.order),
        weighted_measure(N, params.order),
        bound,
        tolerance,
        rules.resolution,
        normalization=factor,
        plain_measure_M=M.lebesgue_measure(),
        plain_measure_N=N.lebesgue_measure(),
    )
    log.info("%r", report)
    return report


def hs_norm_estimate(params, M, N, rules):
    """Hilbert-Schmidt norm of ``P_M Q_N``.

    ``sqrt(alpha * int_M int_N |kernel(s, t)|**2 t**(2 gamma + 1)
    s**(2 gamma + 1) dt ds)``

    """
    rules = as_rules(rules)
    M_rule = _set_rule(as_set(M), rules.signal)
    N_rule = _set_rule(as_set(N), rules.transform)
    if not len(M_rule) or not len(N_rule):
        return 0.0
    total = 0.0
    step = max(1, CHUNK_ELEMENTS // len(N_rule))
    for start in range(0, len(M_rule), step):
        s = M_rule.nodes[start : start + step]
        k2 = np.abs(kernel(params, N_rule.nodes[None, :], s[:, None])) ** 2
        total += float(
            np.einsum(
                "i,ij,j->",
                M_rule.weights[start : start + step],
                k2,
                N_rule.weights,
            )
        )
    return math.sqrt(alpha(params) * total)


def lp_concentration_check(
    params, h, M, N, p, rules, tolerance=1e-8, name=None
):
    """Check the L^p concentration inequality, ``1 < p <= 2``.

    ``eps_M`` is the relative L1 tail of ``h`` outside ``M`` and
    ``eps_N`` the relative L^q tail of ``B h`` outside ``N``, with
    ``q = p / (p - 1)``.  The checked inequality is

    ``(1 - eps_M)(1 - eps_N) ||B h||_q <=
    c_gamma / |b|**(gamma + 1) |M|**(1/p) |N|**(1/q) ||h||_q``

    and for ``p = 2`` its normalized form
    ``(1 - eps_M)(1 - eps_N) <= sqrt(alpha |M| |N|)``.

    """
    p = norm_exponent(p)
    if not 1.0 < p <= 2.0:
        raise DomainError("p must satisfy 1 < p <= 2; got %r" % p)
    q = p / (p - 1.0)
    rules = as_rules(rules)
    M, N = as_set(M), as_set(N)
    eps_M = time_concentration(h, M, rules.signal, 1)
    eps_N = band_concentration(params, h, N, rules, q)
    measure_M = weighted_measure(M, params.order)
    measure_N = weighted_measure(N, params.order)
    concentration = (1.0 - eps_M) * (1.0 - eps_N)
    if p == 2.0:
        lhs = concentration
        rhs = math.sqrt(alpha(params) * measure_M * measure_N)
    else:
        bh = forward(params, h, rules.transform.grid, rules.signal)
        lhs = concentration * weighted_norm(bh.values, rules.transform, q)
        rhs = (
            c_gamma(params.order)
            / abs(params.b) ** (params.gamma + 1.0)
            * measure_M ** (1.0 / p)
            * measure_N ** (1.0 / q)
            * weighted_norm(h, rules.signal, q)
        )
    if name is None:
        name = "lp-concentration-p%g" % p
    return LpConcentrationReport(
        name,
        p,
        eps_M,
        eps_N,
        lhs,
        rhs,
        tolerance * max(rhs, 1.0),
        rules.resolution,
    )


def hs_bound_check(params, M, N, rules, tolerance=1e-8, name="hs-bound"):
    """``hs_norm_estimate <= sqrt(alpha |M| |N|)``."""
    rules = as_rules(rules)
    M, N = as_set(M), as_set(N)
    bound = math.sqrt(
        alpha(params)
        * weighted_measure(M, params.order)
        * weighted_measure(N, params.order)
    )
    return CheckReport(
        name,
        hs_norm_estimate(params, M, N, rules),
        bound,
        tolerance,
        rules.resolution,
        relation="le",
    )
