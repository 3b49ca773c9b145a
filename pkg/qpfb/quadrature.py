"""Weighted quadrature on a truncated half line.

Every integral of the form ``int_0^R f(s) s**(2*gamma + 1) ds`` in the
package goes through a :class:`.QuadratureRule`; the weight
``s**(2*gamma + 1)`` is folded into the rule's weights so integrands stay
of unit size.

"""
import logging
import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

from . import util
from .specfun import as_order
from .util import DomainError

log = logging.getLogger(__name__)

DEFAULT_PANELS = 64
DEFAULT_NODES_PER_PANEL = 16
INTERPOLATION_ORDER = 8


def _check_radius(R, name="R"):
    try:
        R = float(R)
    except (TypeError, ValueError):
        raise DomainError("%s must be a real number; got %r" % (name, R))
    if not math.isfinite(R):
        raise DomainError("%s must be finite; got %r" % (name, R))
    if R <= 0:
        raise DomainError("%s must be positive; got %r" % (name, R))
    return R


class RadialGrid(object):
    """Strictly increasing sample points on ``[0, R]``."""

    def __init__(self, points, truncation_radius=None):
        points = np.array(points, dtype=float).ravel()
        if not len(points):
            raise DomainError("a radial grid needs at least one point")
        if not np.all(np.isfinite(points)):
            raise DomainError("grid points must be finite")
        if points[0] < 0:
            raise DomainError("grid points must be >= 0")
        if len(points) > 1 and not np.all(np.diff(points) > 0):
            raise DomainError("grid points must be strictly increasing")
        if truncation_radius is None:
            truncation_radius = points[-1] if points[-1] > 0 else 1.0
        truncation_radius = _check_radius(
            truncation_radius, "truncation radius"
        )
        if points[-1] > truncation_radius:
            raise DomainError(
                "last grid point %r exceeds the truncation radius %r"
                % (points[-1], truncation_radius)
            )
        points.setflags(write=False)
        self.points = points
        self.truncation_radius = truncation_radius

    @classmethod
    def uniform(cls, stop, num, start=0.0, truncation_radius=None):
        if num < 1:
            raise DomainError("a uniform grid needs num >= 1")
        points = np.linspace(start, stop, int(num))
        return cls(
            points,
            truncation_radius if truncation_radius is not None else stop,
        )

    def scaled(self, k):
        return RadialGrid(self.points * k, self.truncation_radius * k)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, RadialGrid)
            and self.truncation_radius == other.truncation_radius
            and np.array_equal(self.points, other.points)
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "RadialGrid(%d points on [0, %r])" % (
            len(self.points),
            self.truncation_radius,
        )


def as_grid(value):
    if isinstance(value, RadialGrid):
        return value
    return RadialGrid(value)


class QuadratureRule(object):
    """Nodes and weights for ``int f(s) s**(2*gamma + 1) ds``.

    Instances are produced by :func:`.build_rule`,
    :func:`.build_interval_rule` and :func:`.build_set_rule`; they are
    immutable after construction.

    """

    def __init__(self, nodes, weights, order, R, panels, nodes_per_panel):
        nodes = np.array(nodes, dtype=float)
        weights = np.array(weights, dtype=float)
        if nodes.shape != weights.shape:
            raise DomainError("nodes and weights must have the same length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        self.nodes = nodes
        self.weights = weights
        self.order = as_order(order)
        self.R = R
        self.panels = panels
        self.nodes_per_panel = nodes_per_panel

    @property
    def resolution(self):
        """The resolution label ``"<panels>x<nodes per panel>"``."""
        return "%dx%d" % (self.panels, self.nodes_per_panel)

    @util.memoized_property
    def grid(self):
        return RadialGrid(self.nodes, self.R)

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return "QuadratureRule(gamma=%r, R=%r, %s)" % (
            self.order.gamma,
            self.R,
            self.resolution,
        )


def _panel(order, lo, hi, n):
    beta = order.weight_exponent
    half = 0.5 * (hi - lo)
    if lo == 0.0:
        # Gauss-Jacobi absorbs s**beta exactly on a panel touching 0
        x, w = special.roots_jacobi(n, 0.0, beta)
        nodes = half * (x + 1.0)
        weights = w * half ** (beta + 1.0)
    else:
        x, w = leggauss(n)
        nodes = lo + half * (x + 1.0)
        weights = w * half * nodes ** beta
    return nodes, weights


def build_interval_rule(
    order,
    lo,
    hi,
    panels=DEFAULT_PANELS,
    nodes_per_panel=DEFAULT_NODES_PER_PANEL,
    R=None,
):
    """Composite Gauss rule for ``int_lo^hi f(s) s**(2*gamma + 1) ds``."""
    order = as_order(order)
    lo = float(lo)
    hi = _check_radius(hi, "upper limit")
    if not math.isfinite(lo) or lo < 0 or lo >= hi:
        raise DomainError(
            "interval limits must satisfy 0 <= lo < hi; got [%r, %r]"
            % (lo, hi)
        )
    panels = int(panels)
    nodes_per_panel = int(nodes_per_panel)
    if panels < 1:
        raise DomainError("panels must be a positive integer")
    if nodes_per_panel < 2:
        raise DomainError("nodes_per_panel must be at least 2")

    edges = np.linspace(lo, hi, panels + 1)
    edges[0], edges[-1] = lo, hi
    pieces = [
        _panel(order, edges[i], edges[i + 1], nodes_per_panel)
        for i in range(panels)
    ]
    nodes = np.concatenate([p[0] for p in pieces])
    weights = np.concatenate([p[1] for p in pieces])
    return QuadratureRule(
        nodes,
        weights,
        order,
        hi if R is None else R,
        panels,
        nodes_per_panel,
    )


def build_rule(
    order, R, panels=DEFAULT_PANELS, nodes_per_panel=DEFAULT_NODES_PER_PANEL
):
    """Composite Gauss rule on ``[0, R]`` with the weight folded in.

    :param order: an :class:`.Order` or real gamma.
    :param R: truncation radius; must be finite and positive.
    :param panels: number of equal-width panels.
    :param nodes_per_panel: Gauss nodes per panel, at least 2.

    """
    R = _check_radius(R)
    return build_interval_rule(order, 0.0, R, panels, nodes_per_panel, R=R)


def build_set_rule(
    order,
    intervals,
    R,
    panels=DEFAULT_PANELS,
    nodes_per_panel=DEFAULT_NODES_PER_PANEL,
):
    """Rule covering a union of disjoint intervals inside ``[0, R]``.

    Each interval receives a share of ``panels`` proportional to its
    length, at least one panel.  An empty union produces a rule with no
    nodes.

    """
    order = as_order(order)
    R = _check_radius(R)
    nodes, weights = [], []
    for lo, hi in intervals:
        count = max(1, int(math.ceil(panels * (hi - lo) / R)))
        rule = build_interval_rule(order, lo, hi, count, nodes_per_panel)
        nodes.append(rule.nodes)
        weights.append(rule.weights)
    if nodes:
        nodes = np.concatenate(nodes)
        weights = np.concatenate(weights)
    else:
        nodes = weights = np.zeros(0)
    return QuadratureRule(nodes, weights, order, R, panels, nodes_per_panel)


class DomainRules(object):
    """The pair of rules used by two-domain computations: ``signal`` over
    the s-axis and ``transform`` over the t-axis."""

    def __init__(self, signal, transform=None):
        if transform is None:
            transform = signal
        if signal.order != transform.order:
            raise DomainError(
                "signal and transform rules must share gamma; got %r and %r"
                % (signal.order.gamma, transform.order.gamma)
            )
        self.signal = signal
        self.transform = transform

    @classmethod
    def build(
        cls,
        order,
        R,
        transform_R=None,
        panels=DEFAULT_PANELS,
        nodes_per_panel=DEFAULT_NODES_PER_PANEL,
    ):
        signal = build_rule(order, R, panels, nodes_per_panel)
        if transform_R is None or float(transform_R) == signal.R:
            transform = signal
        else:
            transform = build_rule(order, transform_R, panels, nodes_per_panel)
        return cls(signal, transform)

    @property
    def order(self):
        return self.signal.order

    @property
    def resolution(self):
        return self.signal.resolution

    def __repr__(self):
        return "DomainRules(signal=%r, transform=%r)" % (
            self.signal,
            self.transform,
        )


class Signal(object):
    """Complex samples on a :class:`.RadialGrid`.

    A signal is callable: off-grid values come from local barycentric
    interpolation of order 8.  Nothing is extrapolated: points beyond the
    last sample (or beyond the truncation radius) evaluate to zero.

    """

    def __init__(self, grid, values):
        grid = as_grid(grid)
        values = np.array(values, dtype=complex).ravel()
        if values.shape != grid.points.shape:
            raise DomainError(
                "signal has %d values for %d grid points"
                % (len(values), len(grid))
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("signal values must be finite")
        values.setflags(write=False)
        self.grid = grid
        self.values = values

    @classmethod
    def from_function(cls, fn, grid):
        grid = as_grid(grid)
        return cls(grid, sample(fn, grid.points))

    @property
    def points(self):
        return self.grid.points

    def __len__(self):
        return len(self.values)

    @util.memoized_property
    def _barycentric_weights(self):
        points = self.grid.points
        m = min(INTERPOLATION_ORDER, len(points))
        starts = np.arange(len(points) - m + 1)
        window = points[starts[:, None] + np.arange(m)]
        diff = window[:, :, None] - window[:, None, :]
        diff[:, np.arange(m), np.arange(m)] = 1.0
        return 1.0 / np.prod(diff, axis=-1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        points = self.grid.points
        n = len(points)
        m = min(INTERPOLATION_ORDER, n)
        flat = x.ravel()
        result = np.zeros(flat.shape, dtype=complex)
        inside = flat <= min(self.grid.truncation_radius, points[-1])
        if n == 1:
            result[inside] = self.values[0]
            return result.reshape(x.shape)
        xs = flat[inside]
        idx = np.searchsorted(points, xs)
        start = np.clip(idx - m // 2, 0, n - m)
        window = start[:, None] + np.arange(m)
        diff = xs[:, None] - points[window]
        hit = diff == 0.0
        diff[hit] = 1.0
        terms = self._barycentric_weights[start] / diff
        values = (terms * self.values[window]).sum(axis=1) / terms.sum(
            axis=1
        )
        rows, cols = np.nonzero(hit)
        values[rows] = self.values[window[rows, cols]]
        result[inside] = values
        return result.reshape(x.shape)

    def __repr__(self):
        return "%s(%r)" % (self.__class__.__name__, self.grid)


def sample(h, points):
    """Evaluate a signal-or-function at ``points``.

    A :class:`.Signal` sampled on its own grid returns its stored values
    unchanged; anything else is interpolated or called.  The result is a
    complex array; non-finite samples raise :class:`.DomainError`.

    """
    points = np.asarray(points, dtype=float)
    if isinstance(h, Signal):
        if h.grid.points.shape == points.shape and np.array_equal(
            h.grid.points, points
        ):
            values = np.array(h.values)
        else:
            values = h(points)
    elif callable(h):
        values = np.broadcast_to(
            np.asarray(h(points), dtype=complex), points.shape
        ).copy()
    else:
        values = np.broadcast_to(
            np.asarray(h, dtype=complex), points.shape
        ).copy()
    if not np.all(np.isfinite(values)):
        raise DomainError("signal evaluates to non-finite values")
    return values


def integrate(rule, f):
    """``sum(weights[i] * f(nodes[i]))``.

    :param f: a signal-or-function, or an array of values at the nodes.
     Arrays may carry leading batch axes; the last axis runs over nodes.

    """
    if isinstance(f, np.ndarray) and f.shape[-1:] == rule.nodes.shape:
        values = f
        if not np.all(np.isfinite(values)):
            raise DomainError("integrand evaluates to non-finite values")
    else:
        values = sample(f, rule.nodes)
    # fixed summation order keeps the result bit-stable
    result = np.einsum("...j,j->...", values, rule.weights)
    if np.ndim(result) == 0:
        return complex(result)
    return result


def norm_exponent(p):
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity"):
            return math.inf
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise DomainError("norm exponent must be a number or 'inf'")
    if math.isnan(p) or p < 1:
        raise DomainError("norm exponent p must satisfy p >= 1; got %r" % p)
    return p


def weighted_norm(f, rule, p=2):
    """``(int |f|**p s**(2*gamma + 1) ds)**(1/p)``; for ``p = inf`` the
    maximum of ``|f|`` over the rule's nodes (a grid surrogate for the
    essential supremum)."""
    p = norm_exponent(p)
    if isinstance(f, np.ndarray) and f.shape == rule.nodes.shape:
        values = f
    else:
        values = sample(f, rule.nodes)
    magnitude = np.abs(values)
    if not len(magnitude):
        return 0.0
    if math.isinf(p):
        return float(magnitude.max())
    total = float(np.einsum("j,j->", magnitude ** p, rule.weights))
    return max(total, 0.0) ** (1.0 / p)


def inner_product(f, g, rule):
    """``int f * conj(g) s**(2*gamma + 1) ds``."""
    fv = f if isinstance(f, np.ndarray) else sample(f, rule.nodes)
    gv = g if isinstance(g, np.ndarray) else sample(g, rule.nodes)
    return complex(np.einsum("j,j,j->", fv, np.conj(gv), rule.weights))


def as_rules(rules):
    """Accept a :class:`.DomainRules` or a single rule used for both
    domains."""
    if isinstance(rules, DomainRules):
        return rules
    if isinstance(rules, QuadratureRule):
        return DomainRules(rules)
    raise DomainError("expected quadrature rules; got %r" % (rules,))
