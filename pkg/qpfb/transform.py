"""The quadratic-phase Fourier-Bessel transform.

``B[h](t) = c_gamma / (i b)**(gamma + 1) *
int_0^inf exp(-i (a s**2 + c t**2 + d s + e t)) j_gamma(s t / b) h(s)
s**(2 gamma + 1) ds``

The transform is evaluated by direct quadrature: the kernel matrix between
output points and rule nodes is built in chunks and contracted against the
weighted samples of ``h``.

"""
import cmath
import logging
import math

import numpy as np

from . import util
from .quadrature import as_grid
from .quadrature import as_rules
from .quadrature import build_rule
from .quadrature import DomainRules
from .quadrature import inner_product
from .quadrature import sample
from .quadrature import Signal
from .quadrature import weighted_norm
from .report import CheckReport
from .report import ParsevalReport
from .report import RiemannLebesgueReport
from .report import ScalingReport
from .specfun import as_order
from .specfun import c_gamma
from .specfun import normalized_bessel
from .util import DomainError

log = logging.getLogger(__name__)

CHUNK_ELEMENTS = 1 << 20
"""Upper bound on kernel matrix entries held in memory at once."""


def _real(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError("%s must be a real number; got %r" % (name, value))
    if not math.isfinite(value):
        raise DomainError("%s must be finite; got %r" % (name, value))
    return value


class QpfbParams(object):
    """The five phase parameters and the order of a transform.

    Instances are immutable; :meth:`.inverse` and :meth:`.scaled` return
    new parameter sets.

    """

    __slots__ = ("a", "b", "c", "d", "e", "order")

    def __init__(self, a=0.0, b=1.0, c=0.0, d=0.0, e=0.0, gamma=0.0):
        values = dict(
            (name, _real(name, value))
            for name, value in zip("abcde", (a, b, c, d, e))
        )
        if values["b"] == 0.0:
            raise DomainError("b must be nonzero")
        for name, value in values.items():
            object.__setattr__(self, name, value)
        object.__setattr__(self, "order", as_order(gamma))

    def __setattr__(self, key, value):
        raise AttributeError("QpfbParams is immutable")

    @property
    def gamma(self):
        return self.order.gamma

    def inverse(self):
        """Parameters of the inverse transform: ``(-c, -b, -a, -e, -d)``."""
        return QpfbParams(
            -self.c, -self.b, -self.a, -self.e, -self.d, self.order
        )

    def scaled(self, k):
        """Parameters ``(a/k**2, b, c*k**2, d/k, e*k)`` for which
        ``B[h](k t) = k**-(2 gamma + 2) B'[h(./k)](t)``."""
        k = _real("k", k)
        if k <= 0:
            raise DomainError("scale factor k must be positive; got %r" % k)
        return QpfbParams(
            self.a / k ** 2,
            self.b,
            self.c * k ** 2,
            self.d / k,
            self.e * k,
            self.order,
        )

    def as_dict(self):
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "e": self.e,
            "gamma": self.gamma,
        }

    def __eq__(self, other):
        return isinstance(other, QpfbParams) and all(
            getattr(self, name) == getattr(other, name)
            for name in self.__slots__
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(tuple(getattr(self, name) for name in self.__slots__))

    def __repr__(self):
        return "QpfbParams(a=%r, b=%r, c=%r, d=%r, e=%r, gamma=%r)" % (
            self.a,
            self.b,
            self.c,
            self.d,
            self.e,
            self.gamma,
        )


class TransformResult(Signal):
    """Transform values on the output grid, with the parameters and the
    prefactor that produced them."""

    def __init__(self, grid, values, params, prefactor):
        super(TransformResult, self).__init__(grid, values)
        self.params = params
        self.prefactor = complex(prefactor)

    def __repr__(self):
        return "TransformResult(%r, %r)" % (self.params, self.grid)


def complex_power_ib(b, gamma):
    """``(i b)**(gamma + 1)`` on the principal branch.

    Computed as ``exp((gamma + 1) (ln|b| + i Arg(i b)))`` with
    ``Arg(i b) = +pi/2`` for ``b > 0`` and ``-pi/2`` for ``b < 0``.

    """
    b = _real("b", b)
    if b == 0.0:
        raise DomainError("b must be nonzero")
    arg = math.copysign(0.5 * math.pi, b)
    return cmath.exp((float(gamma) + 1.0) * complex(math.log(abs(b)), arg))


def prefactor(params):
    """``c_gamma / (i b)**(gamma + 1)``."""
    return c_gamma(params.order) / complex_power_ib(params.b, params.gamma)


def kernel(params, t, s):
    """``exp(-i (a s**2 + c t**2 + d s + e t)) j_gamma(s t / b)``.

    ``t`` and ``s`` broadcast against each other.

    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(s))):
        raise DomainError("kernel arguments must be finite")
    phase = (
        params.a * s * s + params.c * t * t + params.d * s + params.e * t
    )
    result = np.exp(-1j * phase) * normalized_bessel(
        params.order, s * t / params.b
    )
    if np.ndim(result) == 0:
        return complex(result)
    return result


def _check_rule(order, rule):
    if rule.order != order:
        raise DomainError(
            "quadrature rule has gamma=%r but the transform has gamma=%r"
            % (rule.order.gamma, order.gamma)
        )


def _contract(points, rule, weighted, row):
    # row(chunk) -> kernel matrix of shape (len(chunk), len(rule.nodes))
    out = np.zeros(len(points), dtype=complex)
    if not len(rule.nodes):
        return out
    step = max(1, CHUNK_ELEMENTS // len(rule.nodes))
    for start in range(0, len(points), step):
        chunk = points[start : start + step]
        out[start : start + step] = np.einsum(
            "ij,j->i", row(chunk), weighted
        )
        log.debug(
            "contracted %d of %d output points",
            min(start + step, len(points)),
            len(points),
        )
    return out


def forward(params, h, out_grid, rule):
    """Evaluate ``B[h]`` on ``out_grid``.

    :param params: a :class:`.QpfbParams`.
    :param h: a :class:`.Signal`, a callable of ``s`` or a constant.
    :param out_grid: a :class:`.RadialGrid` or a sequence of ``t`` values.
    :param rule: a :class:`.QuadratureRule` of the same order.
    :return: a :class:`.TransformResult`.

    """
    _check_rule(params.order, rule)
    out_grid = as_grid(out_grid)
    weighted = sample(h, rule.nodes) * rule.weights
    log.info(
        "forward transform on %d points, %d nodes (%s)",
        len(out_grid),
        len(rule),
        rule.resolution,
    )
    values = _contract(
        out_grid.points,
        rule,
        weighted,
        lambda t: kernel(params, t[:, None], rule.nodes[None, :]),
    )
    factor = prefactor(params)
    return TransformResult(out_grid, factor * values, params, factor)


def _classical_values(order, h, points, rule):
    weighted = sample(h, rule.nodes) * rule.weights
    values = _contract(
        np.asarray(points, dtype=float),
        rule,
        weighted,
        lambda t: normalized_bessel(order, t[:, None] * rule.nodes[None, :]),
    )
    return c_gamma(order) * values


def classical_transform(order, h, out_grid, rule):
    """The Fourier-Bessel transform ``c_gamma int j_gamma(s t) h(s)
    s**(2 gamma + 1) ds``; self-inverse and unitary."""
    order = as_order(order)
    _check_rule(order, rule)
    out_grid = as_grid(out_grid)
    return Signal(
        out_grid, _classical_values(order, h, out_grid.points, rule)
    )


def forward_via_classical(params, h, out_grid, rule):
    """Evaluate ``B[h]`` through the classical transform.

    ``B[h](t) = exp(-i (c t**2 + e t)) / (i b)**(gamma + 1) *
    B_gamma[exp(-i (a s**2 + d s)) h](t / b)``

    """
    _check_rule(params.order, rule)
    out_grid = as_grid(out_grid)
    t = out_grid.points
    nodes = rule.nodes
    chirped = sample(h, nodes) * np.exp(
        -1j * (params.a * nodes * nodes + params.d * nodes)
    )
    # j_gamma is even, so |t / b| serves for either sign of b
    inner = _classical_values(
        params.order, chirped, np.abs(t / params.b), rule
    )
    power = complex_power_ib(params.b, params.gamma)
    values = np.exp(-1j * (params.c * t * t + params.e * t)) * inner / power
    return TransformResult(out_grid, values, params, prefactor(params))


def inverse(params, H, out_grid, rule):
    """Invert ``B`` by applying the transform with parameters
    ``(-c, -b, -a, -e, -d)``.

    ``rule`` integrates over the transform variable ``t``; for a
    :class:`.TransformResult` computed on ``rule.grid`` the stored values
    are used without interpolation.

    """
    result = forward(params.inverse(), H, out_grid, rule)
    return Signal(result.grid, result.values)


def scaling_identity_check(
    params, h, k, out_grid, rule, tolerance=1e-8, name="scaling"
):
    """Compare ``B[h](k t)`` with ``k**-(2 gamma + 2) B'[h(./k)](t)``.

    The right side uses the scaled parameters of :meth:`.QpfbParams.scaled`
    and a rule on ``[0, k R]`` of the same resolution.

    """
    k = _real("k", k)
    if k <= 0:
        raise DomainError("scale factor k must be positive; got %r" % k)
    out_grid = as_grid(out_grid)
    lhs = forward(params, h, out_grid.scaled(k), rule).values

    scaled_rule = build_rule(
        params.order, k * rule.R, rule.panels, rule.nodes_per_panel
    )

    def h_k(v):
        return sample(h, np.asarray(v) / k)

    rhs = forward(params.scaled(k), h_k, out_grid, scaled_rule).values
    rhs = rhs * k ** -(2.0 * params.gamma + 2.0)
    discrepancy = float(np.max(np.abs(lhs - rhs))) if len(lhs) else 0.0
    return ScalingReport(name, k, discrepancy, tolerance, rule.resolution)


_reductions = util.Dispatcher("reduction")


@_reductions.dispatch_for("classical-fbt")
def _reduce_classical(gamma=0.0):
    return QpfbParams(0.0, 1.0, 0.0, 0.0, 0.0, gamma)


@_reductions.dispatch_for("fractional")
def _reduce_fractional(theta, gamma=0.0):
    theta = _real("theta", theta)
    sin = math.sin(theta)
    if abs(sin) < 1e-12:
        raise DomainError(
            "fractional angle theta must not be a multiple of pi; got %r"
            % theta
        )
    cot = math.cos(theta) / sin
    return QpfbParams(-cot / 2.0, sin, -cot / 2.0, 0.0, 0.0, gamma)


@_reductions.dispatch_for("linear-canonical")
def _reduce_linear_canonical(a, b, c, gamma=0.0):
    # LCT kernel exp((i/2)(a/b s**2 + c/b t**2)) j_gamma(s t / b)
    a, b, c = _real("a", a), _real("b", b), _real("c", c)
    if b == 0.0:
        raise DomainError("b must be nonzero")
    return QpfbParams(-a / (2.0 * b), b, -c / (2.0 * b), 0.0, 0.0, gamma)


def reduce_params(kind, **inputs):
    """Parameters under which ``B`` becomes a known transform.

    :param kind: ``"classical-fbt"``, ``"fractional"`` (input ``theta``)
     or ``"linear-canonical"`` (inputs ``a``, ``b``, ``c`` of the linear
     canonical kernel).  All kinds accept ``gamma``.

    """
    try:
        fn = _reductions.dispatch(kind)
    except ValueError as ve:
        raise DomainError(str(ve))
    try:
        return fn(**inputs)
    except TypeError as te:
        raise DomainError("bad inputs for %r reduction: %s" % (kind, te))


def reduction_kinds():
    return _reductions.names()


def fractional_unimodular_factor(theta, gamma, n=0):
    """The constant ``c_theta`` of the fractional Fourier-Bessel transform.

    ``c_theta = exp(i (gamma + 1) ((theta - 2 n pi) - sgn(sin theta) pi/2))``;
    with it ``c_theta / |sin theta|**(gamma + 1)`` equals
    ``exp(i (gamma + 1)(theta - 2 n pi)) / (i sin theta)**(gamma + 1)``.

    """
    theta = _real("theta", theta)
    sign = math.copysign(1.0, math.sin(theta))
    return cmath.exp(
        1j
        * (float(gamma) + 1.0)
        * ((theta - 2.0 * n * math.pi) - sign * math.pi / 2.0)
    )


def classical_reduction_check(order, h, out_grid, rule, tolerance=1e-9):
    """With parameters ``(0, 1, 0, 0, 0)`` the transform equals
    ``exp(-i (gamma + 1) pi / 2)`` times the classical one."""
    order = as_order(order)
    params = reduce_params("classical-fbt", gamma=order)
    out_grid = as_grid(out_grid)
    lhs = forward(params, h, out_grid, rule).values
    factor = cmath.exp(-0.5j * (order.gamma + 1.0) * math.pi)
    rhs = factor * classical_transform(order, h, out_grid, rule).values
    discrepancy = float(np.max(np.abs(lhs - rhs)))
    return CheckReport(
        "classical-reduction",
        discrepancy,
        0.0,
        tolerance,
        rule.resolution,
        relation="le",
        details={"gamma": order.gamma},
    )


MAX_TRANSFORM_EXTENSION = 16.0
"""Largest factor by which :func:`.extend_transform_rules` stretches the
transform-domain truncation."""

WAVES_PER_NODE = 0.2
"""Bessel oscillations allowed per Gauss node in a signal-domain panel."""


def tail_estimate(params, h, rules):
    """Relative L2 mass of ``B h`` beyond the transform truncation.

    A linear phase ``d != 0`` or an odd component of ``h`` leaves ``B h``
    decaying like ``t**-(2 gamma + 3)``; the amplitude of that power law
    is read off the last transform panel and integrated to infinity.

    """
    rules = as_rules(rules)
    rule = rules.transform
    norm = weighted_norm(h, rules.signal, 2)
    if not norm:
        return 0.0
    rate = 2.0 * params.gamma + 3.0
    last_panel = rule.nodes[-rule.nodes_per_panel:]
    values = forward(params, h, last_panel, rules.signal).values
    amplitude = float(np.max(np.abs(values) * last_panel ** rate))
    tail = (
        amplitude
        * rule.R ** -(params.gamma + 2.0)
        / math.sqrt(2.0 * params.gamma + 4.0)
    )
    return tail / norm


def extend_transform_rules(params, signals, rules, tail_tolerance):
    """Return rules whose transform domain is long enough that
    :func:`.tail_estimate` stays below ``tail_tolerance`` for every
    signal in ``signals``.

    The transform rule keeps its panel width; the signal rule gains
    panels when the longer reach makes ``j_gamma(s t / b)`` oscillate
    faster than its panels resolve.  The stretch is capped at
    :data:`.MAX_TRANSFORM_EXTENSION`.

    """
    rules = as_rules(rules)
    worst = max(tail_estimate(params, h, rules) for h in signals)
    if worst <= tail_tolerance:
        return rules
    transform = rules.transform
    factor = (worst / tail_tolerance) ** (1.0 / (params.gamma + 2.0))
    factor = min(factor, MAX_TRANSFORM_EXTENSION)
    reach = transform.R * factor
    nodes = transform.nodes_per_panel
    extended = build_rule(
        params.order,
        reach,
        int(math.ceil(transform.panels * factor)),
        nodes,
    )
    signal = rules.signal
    waves = signal.R * reach / (2.0 * math.pi * abs(params.b))
    panels = max(
        signal.panels,
        int(math.ceil(waves / (WAVES_PER_NODE * signal.nodes_per_panel))),
    )
    if panels != signal.panels:
        signal = build_rule(
            params.order, signal.R, panels, signal.nodes_per_panel
        )
    log.info(
        "transform tail %s exceeds %s; truncation %s -> %s",
        util.format_float(worst),
        util.format_float(tail_tolerance),
        util.format_float(transform.R),
        util.format_float(reach),
    )
    return DomainRules(signal, extended)


def parseval_check(
    params, h, g, rules, tolerance=1e-5, name="parseval"
):
    """Compare ``<h, g>`` with ``<B h, B g>`` and ``||h||_2`` with
    ``||B h||_2``.

    Tolerances are relative to ``||h||_2`` and ``||h||_2 ||g||_2``.

    :param rules: a :class:`.DomainRules`; a single rule serves both
     domains.

    """
    rules = extend_transform_rules(
        params, [h, g], rules, math.sqrt(0.5 * tolerance)
    )
    grid = rules.transform.grid
    bh = forward(params, h, grid, rules.signal)
    bg = forward(params, g, grid, rules.signal)
    norm_h = weighted_norm(h, rules.signal, 2)
    norm_g = weighted_norm(g, rules.signal, 2)
    norm_bh = weighted_norm(bh.values, rules.transform, 2)
    inner_h = inner_product(
        sample(h, rules.signal.nodes), sample(g, rules.signal.nodes),
        rules.signal,
    )
    inner_bh = inner_product(bh.values, bg.values, rules.transform)
    log.info(
        "parseval: ||h||=%s ||Bh||=%s", util.format_float(norm_h),
        util.format_float(norm_bh),
    )
    return ParsevalReport(
        name,
        norm_h,
        norm_bh,
        inner_h,
        inner_bh,
        tolerance * norm_h,
        tolerance * norm_h * norm_g,
        rules.resolution,
        details={"transform_truncation": rules.transform.R},
    )


def sup_bound(params, h, rule):
    """``c_gamma / |b|**(gamma + 1) * ||h||_1``."""
    return (
        c_gamma(params.order)
        / abs(params.b) ** (params.gamma + 1.0)
        * weighted_norm(h, rule, 1)
    )


def riemann_lebesgue_check(
    params, h, rule, probe_ts, tolerance=1e-8, name="riemann-lebesgue"
):
    """Check ``sup |B[h]|`` over ``probe_ts`` against :func:`.sup_bound`
    and record ``|B[h]|`` at the first and last probe."""
    probes = as_grid(probe_ts)
    values = np.abs(forward(params, h, probes, rule).values)
    bound = sup_bound(params, h, rule)
    return RiemannLebesgueReport(
        name,
        float(values.max()),
        bound,
        tolerance * max(bound, 1.0),
        rule.resolution,
        values[0],
        values[-1],
        probes.points,
    )


def roundtrip_check(params, h, rules, tolerance=1e-4, name="roundtrip"):
    """Relative L2 error of ``inverse(forward(h))`` against ``h``.

    ``B h`` is tabulated on the transform rule's nodes so the inverse
    integrates stored values.  The transform domain is first stretched by
    :func:`.extend_transform_rules` until the estimated tail of ``B h`` is
    below half the tolerance.

    """
    rules = extend_transform_rules(params, [h], rules, 0.5 * tolerance)
    bh = forward(params, h, rules.transform.grid, rules.signal)
    back = inverse(params, bh, rules.signal.grid, rules.transform)
    original = sample(h, rules.signal.nodes)
    norm = weighted_norm(original, rules.signal, 2)
    error = weighted_norm(back.values - original, rules.signal, 2)
    relative = error / norm if norm else error
    return CheckReport(
        name,
        relative,
        0.0,
        tolerance,
        rules.resolution,
        relation="le",
        details={"norm": norm, "transform_truncation": rules.transform.R},
    )


def two_path_check(params, h, out_grid, rule, tolerance=1e-9, name="two-path"):
    """``max |forward - forward_via_classical|`` over ``out_grid``."""
    direct = forward(params, h, out_grid, rule).values
    via = forward_via_classical(params, h, out_grid, rule).values
    discrepancy = float(np.max(np.abs(direct - via)))
    return CheckReport(
        name, discrepancy, 0.0, tolerance, rule.resolution, relation="le"
    )


def gaussian_fixed_point_check(
    order, out_grid, rule, tolerance=1e-6, name="gaussian-fixed-point"
):
    """With parameters ``(0, 1, 0, 0, 0)``, ``B[exp(-s**2/2)]`` equals
    ``exp(-i (gamma + 1) pi / 2) exp(-t**2/2)``."""
    order = as_order(order)
    params = reduce_params("classical-fbt", gamma=order)
    out_grid = as_grid(out_grid)
    t = out_grid.points
    values = forward(
        params, lambda s: np.exp(-0.5 * s * s), out_grid, rule
    ).values
    expected = cmath.exp(-0.5j * (order.gamma + 1.0) * math.pi) * np.exp(
        -0.5 * t * t
    )
    discrepancy = float(np.max(np.abs(values - expected)))
    return CheckReport(
        name, discrepancy, 0.0, tolerance, rule.resolution, relation="le"
    )


def kernel_bound_check(
    params, s, t, tolerance=1e-12, name="kernel-bound"
):
    """``max |kernel(t, s)|`` over the paired samples, against 1."""
    values = np.abs(kernel(params, np.asarray(t), np.asarray(s)))
    return CheckReport(
        name,
        float(np.max(values)),
        1.0,
        tolerance,
        "n/a",
        relation="le",
        details={"samples": int(np.size(values))},
    )
