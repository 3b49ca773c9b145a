"""Generalized translation for the quadratic-phase Fourier-Bessel transform.

``T_t[h](s) = exp(-i (a (s**2 + t**2) + d (s + t))) * BT_t[h](s)`` where
``BT_t`` is the classical Bessel translation

``BT_t[h](s) = int h(u) W_gamma(s, t, u) u**(2 gamma + 1) du``

and ``W_gamma`` is supported on ``|s - t| <= u <= s + t``.  Substituting
``u**2 = s**2 + t**2 - 2 s t x`` turns the support into ``x in [-1, 1]``
with weight proportional to ``(1 - x**2)**(gamma - 1/2)``, which a
Gauss-Jacobi rule integrates without touching the endpoints.

"""
import logging
import math

import numpy as np
from scipy import integrate
from scipy import special

from .quadrature import as_grid
from .quadrature import norm_exponent
from .quadrature import sample
from .quadrature import Signal
from .quadrature import weighted_norm
from .report import CheckReport
from .specfun import as_order
from .specfun import gamma_fn
from .util import DomainError

log = logging.getLogger(__name__)

DEFAULT_ANGULAR_NODES = 64
IDENTITY_CUTOFF = 1e-12
"""Translations by ``t`` below this value return ``h`` unchanged."""

CHUNK_ELEMENTS = 1 << 19


def triangle_area(s, t, u):
    """Heron's formula; zero when ``s, t, u`` violate the triangle
    inequality."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    product = (s + t + u) * (s + t - u) * (s - t + u) * (t + u - s)
    result = 0.25 * np.sqrt(np.clip(product, 0.0, None))
    if np.ndim(result) == 0:
        return float(result)
    return result


def _w_constant(gamma):
    return (
        2.0 ** (2.0 * gamma - 1.0)
        * gamma_fn(gamma + 1.0)
        / (math.sqrt(math.pi) * gamma_fn(gamma + 0.5))
    )


def w_classical(order, s, t, u):
    """The Bessel translation kernel ``W_gamma(s, t, u)``.

    ``C_gamma * Delta**(2 gamma - 1) / (s t u)**(2 gamma)`` inside
    ``[|s - t|, s + t]`` and exactly 0 outside; ``Delta`` is
    :func:`.triangle_area`.  For ``gamma < 1/2`` the kernel is
    unbounded at the support's endpoints, where 0 is returned.

    """
    gamma = as_order(order).gamma
    s, t, u = np.broadcast_arrays(
        np.asarray(s, dtype=float),
        np.asarray(t, dtype=float),
        np.asarray(u, dtype=float),
    )
    if not (
        np.all(np.isfinite(s))
        and np.all(np.isfinite(t))
        and np.all(np.isfinite(u))
    ):
        raise DomainError("w_classical arguments must be finite")
    delta = triangle_area(s, t, u)
    exponent = 2.0 * gamma - 1.0
    on = (
        (s > 0)
        & (t > 0)
        & (u > 0)
        & (u >= np.abs(s - t))
        & (u <= s + t)
        & ((np.asarray(delta) > 0) | (exponent >= 0))
    )
    result = np.zeros(s.shape)
    if on.any():
        result[on] = (
            _w_constant(gamma)
            * np.asarray(delta)[on] ** exponent
            / (s[on] * t[on] * u[on]) ** (2.0 * gamma)
        )
    if result.ndim == 0:
        return float(result)
    return result


class TranslationRule(object):
    """Gauss-Jacobi rule in the angle variable ``x``.

    Nodes lie strictly inside ``(-1, 1)`` and the weights sum to 1, which
    is the normalization ``int W_gamma(s, t, u) u**(2 gamma + 1) du = 1``.

    """

    def __init__(self, order, n=DEFAULT_ANGULAR_NODES):
        self.order = as_order(order)
        n = int(n)
        if n < 2:
            raise DomainError("a translation rule needs at least 2 nodes")
        alpha = self.order.gamma - 0.5
        x, w = special.roots_jacobi(n, alpha, alpha)
        x.setflags(write=False)
        w = w / w.sum()
        w.setflags(write=False)
        self.nodes = x
        self.weights = w

    def __len__(self):
        return len(self.nodes)

    def support_points(self, s, t):
        """``u = sqrt(s**2 + t**2 - 2 s t x)`` for every node ``x``; the
        trailing axis runs over nodes."""
        s = np.asarray(s, dtype=float)[..., None]
        t = np.asarray(t, dtype=float)[..., None]
        u2 = s * s + t * t - 2.0 * s * t * self.nodes
        return np.sqrt(np.clip(u2, 0.0, None))

    def __repr__(self):
        return "TranslationRule(gamma=%r, n=%d)" % (
            self.order.gamma,
            len(self.nodes),
        )


def _translation_rule(order, translation_rule):
    if translation_rule is None:
        return TranslationRule(order)
    if translation_rule.order != as_order(order):
        raise DomainError(
            "translation rule has gamma=%r but the operation has gamma=%r"
            % (translation_rule.order.gamma, as_order(order).gamma)
        )
    return translation_rule


def _classical_table(h, t, s, translation_rule):
    # BT_{t_i}[h](s_j) for all pairs
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    out = np.zeros((len(t), len(s)), dtype=complex)
    if not len(s):
        return out
    per_row = len(s) * len(translation_rule)
    step = max(1, CHUNK_ELEMENTS // per_row)
    for start in range(0, len(t), step):
        rows = t[start : start + step]
        u = translation_rule.support_points(s[None, :], rows[:, None])
        values = sample(h, u.ravel()).reshape(u.shape)
        out[start : start + step] = np.einsum(
            "ijk,k->ij", values, translation_rule.weights
        )
    return out


def classical_translate(order, h, t, out_grid, translation_rule=None):
    """The classical Bessel translation ``BT_t[h]`` on ``out_grid``."""
    order = as_order(order)
    translation_rule = _translation_rule(order, translation_rule)
    out_grid = as_grid(out_grid)
    t = float(t)
    if t < 0 or not math.isfinite(t):
        raise DomainError("translation distance must be finite and >= 0")
    values = _classical_table(h, [t], out_grid.points, translation_rule)[0]
    return Signal(out_grid, values)


def translation_phase(params, t, s):
    """``exp(-i (a (s**2 + t**2) + d (s + t)))``."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    return np.exp(
        -1j * (params.a * (s * s + t * t) + params.d * (s + t))
    )


def translate(
    params, t, h, out_grid, rule=None, translation_rule=None
):
    """Evaluate ``T_t[h]`` on ``out_grid``.

    :param params: a :class:`.QpfbParams`; only ``a``, ``d`` and the
     order enter.
    :param t: translation distance, ``t >= 0``.
    :param h: a :class:`.Signal`, a callable of ``u`` or a constant.
    :param rule: optional :class:`.QuadratureRule`, checked for a
     matching order.
    :param translation_rule: angular rule; a 64 node rule by default.

    For ``t`` below :data:`.IDENTITY_CUTOFF` the support collapses to
    ``u = s`` and ``h`` is returned on ``out_grid`` unchanged; the
    limit of ``T_t[h]`` as ``t -> 0`` is :func:`.translation_limit`.

    """
    if rule is not None and rule.order != params.order:
        raise DomainError(
            "quadrature rule has gamma=%r but the translation has gamma=%r"
            % (rule.order.gamma, params.gamma)
        )
    out_grid = as_grid(out_grid)
    t = float(t)
    if t < 0 or not math.isfinite(t):
        raise DomainError("translation distance must be finite and >= 0")
    if t < IDENTITY_CUTOFF:
        return Signal(out_grid, sample(h, out_grid.points))
    classical = classical_translate(
        params.order, h, t, out_grid, translation_rule
    )
    return Signal(
        out_grid,
        translation_phase(params, t, out_grid.points) * classical.values,
    )


def translation_limit(params, h, out_grid):
    """``lim_{t -> 0} T_t[h](s) = exp(-i (a s**2 + d s)) h(s)``; equal to
    ``h`` when ``a = d = 0``."""
    out_grid = as_grid(out_grid)
    s = out_grid.points
    return Signal(
        out_grid,
        np.exp(-1j * (params.a * s * s + params.d * s))
        * sample(h, s),
    )


class TranslationTable(object):
    """``T_{t_i}[h](s_j)`` tabulated on a tensor grid.

    The classical part and the phase are kept separately; the table is
    read-only once built.

    """

    def __init__(self, params, h, ts, ss, translation_rule=None):
        self.params = params
        self.ts = np.array(ts, dtype=float)
        self.ss = np.array(ss, dtype=float)
        if np.any(self.ts < 0) or np.any(self.ss < 0):
            raise DomainError("translation table points must be >= 0")
        translation_rule = _translation_rule(params.order, translation_rule)
        log.info(
            "translation table %d x %d, %d angular nodes",
            len(self.ts),
            len(self.ss),
            len(translation_rule),
        )
        classical = _classical_table(h, self.ts, self.ss, translation_rule)
        classical.setflags(write=False)
        self.classical = classical
        self.translation_rule = translation_rule

    @property
    def values(self):
        return (
            translation_phase(
                self.params, self.ts[:, None], self.ss[None, :]
            )
            * self.classical
        )

    @property
    def shape(self):
        return self.classical.shape


def kernel_normalization(order, s, t):
    """``int W_gamma(s, t, u) u**(2 gamma + 1) du`` by adaptive quadrature.

    The endpoint behaviour ``((u - lo)(hi - u))**(gamma - 1/2)`` is
    handed to QUADPACK as an algebraic weight and the bounded remainder is
    written out in closed form, so it stays finite at both endpoints; the
    result should be 1.

    """
    order = as_order(order)
    s, t = float(s), float(t)
    if s <= 0 or t <= 0:
        raise DomainError("kernel_normalization requires s, t > 0")
    lo, hi = abs(s - t), s + t
    ex = order.gamma - 0.5
    # Delta**(2 gamma - 1) =
    #     4**(1 - 2 gamma) * ((u - lo)(u + lo)(hi - u)(hi + u))**ex
    scale = (
        _w_constant(order.gamma)
        * 4.0 ** (1.0 - 2.0 * order.gamma)
        / (s * t) ** (2.0 * order.gamma)
    )

    def smooth_part(u):
        # u**(2 gamma + 1) / u**(2 gamma) leaves one power of u
        if lo > 0:
            near = (u + lo) ** ex * u
        else:
            near = u ** (ex + 1.0)
        return scale * near * (hi + u) ** ex

    value, _ = integrate.quad(
        smooth_part,
        lo,
        hi,
        weight="alg",
        wvar=(ex, ex),
        epsabs=1e-14,
        epsrel=1e-12,
        limit=200,
    )
    return value


def normalization_check(
    order, pairs, tolerance=1e-8, name="translation-normalization"
):
    """``max |int W_gamma u**(2 gamma + 1) du - 1|`` over ``(s, t)``
    pairs."""
    worst = max(abs(kernel_normalization(order, s, t) - 1.0) for s, t in pairs)
    return CheckReport(
        name,
        worst,
        0.0,
        tolerance,
        "quadpack",
        relation="le",
        details={"pairs": len(pairs), "gamma": as_order(order).gamma},
    )


def _translate_at(params, t, h, s, translation_rule):
    if 0.0 <= t < IDENTITY_CUTOFF:
        return translation_limit(params, h, [s]).values[0]
    return translate(
        params, t, h, [s], translation_rule=translation_rule
    ).values[0]


def symmetry_check(
    params,
    h,
    pairs,
    translation_rule=None,
    tolerance=1e-9,
    name="translation-symmetry",
):
    """``max |T_t[h](s) - T_s[h](t)|`` over ``(s, t)`` pairs.

    A distance below :data:`.IDENTITY_CUTOFF` is evaluated through
    :func:`.translation_limit`, so both sides carry the same phase.

    """
    worst = 0.0
    for s, t in pairs:
        left = _translate_at(params, t, h, s, translation_rule)
        right = _translate_at(params, s, h, t, translation_rule)
        worst = max(worst, abs(left - right))
    return CheckReport(
        name, worst, 0.0, tolerance, "n/a", relation="le",
        details={"pairs": len(pairs)},
    )


def contraction_check(
    params,
    h,
    t,
    rule,
    p=2,
    translation_rule=None,
    rel_tolerance=1e-6,
    name=None,
):
    """``||T_t h||_p <= ||h||_p`` on ``rule``.

    For ``p = inf`` the sup of ``|h|`` also looks at a uniform probe grid
    on ``[0, R]`` that includes the origin.

    """
    p = norm_exponent(p)
    shifted = translate(
        params, t, h, rule.grid, rule, translation_rule
    ).values
    lhs = weighted_norm(shifted, rule, p)
    rhs = weighted_norm(h, rule, p)
    if math.isinf(p):
        probe = np.linspace(0.0, rule.R, 2049)
        rhs = max(rhs, float(np.abs(sample(h, probe)).max()))
    if name is None:
        name = "translation-contraction-p%g" % p
    return CheckReport(
        name,
        lhs,
        rhs,
        rhs * rel_tolerance,
        rule.resolution,
        relation="le",
        details={"t": float(t), "p": p},
    )


def identity_check(
    params, h, out_grid, tolerance=1e-6, name="translation-identity"
):
    """``max |T_0[h] - h|`` over ``out_grid``."""
    out_grid = as_grid(out_grid)
    shifted = translate(params, 0.0, h, out_grid).values
    worst = float(np.max(np.abs(shifted - sample(h, out_grid.points))))
    return CheckReport(name, worst, 0.0, tolerance, "n/a", relation="le")
