"""Generalized convolution.

``(h * g)(t) = int T_t[h](s) g(s) exp(i (a s**2 + d s)) s**(2 gamma + 1) ds``

With the translation of :mod:`qpfb.translation` this is
``exp(-i (a t**2 + d t))`` times the classical Bessel convolution, so the
product is commutative for all parameters and associative when
``a = d = 0``.

"""
import logging
import math

import numpy as np

from .quadrature import as_grid
from .quadrature import norm_exponent
from .quadrature import sample
from .quadrature import Signal
from .quadrature import weighted_norm
from .report import CheckReport
from .report import ConvolutionReport
from .translation import TranslationTable
from .util import DomainError

log = logging.getLogger(__name__)

YOUNG_PAIRS = ((1, 1), (2, 1), (1, 2), (2, 2), (4.0 / 3, 4.0 / 3))


def _check_rule(params, rule):
    if rule.order != params.order:
        raise DomainError(
            "quadrature rule has gamma=%r but the convolution has gamma=%r"
            % (rule.order.gamma, params.gamma)
        )


def convolve(params, h, g, out_grid, rule, translation_rule=None):
    """Evaluate ``h * g`` on ``out_grid``.

    The translations ``T_t[h](s)`` for every output ``t`` and rule node
    ``s`` are tabulated once in a :class:`.TranslationTable`.

    """
    _check_rule(params, rule)
    out_grid = as_grid(out_grid)
    nodes = rule.nodes
    weighted = (
        sample(g, nodes)
        * np.exp(1j * (params.a * nodes * nodes + params.d * nodes))
        * rule.weights
    )
    table = TranslationTable(
        params, h, out_grid.points, nodes, translation_rule
    )
    values = np.einsum("ij,j->i", table.values, weighted)
    return Signal(out_grid, values)


def young_exponent(p, q):
    """``r`` with ``1/p + 1/q = 1/r + 1``; ``inf`` when the sum is 1.

    Raises :class:`.DomainError` when ``1/p + 1/q < 1``.

    """
    p = norm_exponent(p)
    q = norm_exponent(q)
    inv_r = 1.0 / p + 1.0 / q - 1.0
    if inv_r < -1e-12:
        raise DomainError(
            "Young exponents need 1/p + 1/q >= 1; got p=%r, q=%r" % (p, q)
        )
    if inv_r <= 1e-12:
        return math.inf
    return 1.0 / inv_r


def young_check(
    params,
    h,
    g,
    p,
    q,
    rule,
    translation_rule=None,
    rel_tolerance=1e-6,
    name=None,
):
    """Compare ``||h * g||_r`` with ``||h||_p ||g||_q`` on ``rule``.

    The convolution is evaluated on the rule's own nodes; ``r = inf``
    takes the maximum over them.

    """
    r = young_exponent(p, q)
    p = norm_exponent(p)
    q = norm_exponent(q)
    conv = convolve(params, h, g, rule.grid, rule, translation_rule)
    lhs = weighted_norm(conv.values, rule, r)
    rhs = weighted_norm(h, rule, p) * weighted_norm(g, rule, q)
    if name is None:
        name = "young-p%g-q%g" % (p, q)
    log.info("young p=%g q=%g r=%g: %s <= %s", p, q, r, lhs, rhs)
    return ConvolutionReport(
        name, p, q, r, lhs, rhs, rule.resolution, rel_tolerance
    )


def commutativity_check(
    params,
    h,
    g,
    out_grid,
    rule,
    translation_rule=None,
    tolerance=1e-7,
    name="commutativity",
):
    """``max |h * g - g * h|`` over ``out_grid``."""
    hg = convolve(params, h, g, out_grid, rule, translation_rule)
    gh = convolve(params, g, h, out_grid, rule, translation_rule)
    discrepancy = float(np.max(np.abs(hg.values - gh.values)))
    return CheckReport(
        name, discrepancy, 0.0, tolerance, rule.resolution, relation="le"
    )


def associativity_check(
    params,
    h,
    g,
    v,
    out_grid,
    rule,
    translation_rule=None,
    tolerance=1e-5,
    name="associativity",
):
    """``max |(h * g) * v - h * (g * v)|`` over ``out_grid``.

    The inner products are tabulated on the rule's nodes and
    interpolated by the outer convolution.  The product is associative
    only for ``a = d = 0``; other parameters raise :class:`.DomainError`.

    """
    if params.a != 0.0 or params.d != 0.0:
        raise DomainError(
            "associativity needs a = d = 0; got a=%r d=%r"
            % (params.a, params.d)
        )
    inner = rule.grid
    hg = convolve(params, h, g, inner, rule, translation_rule)
    gv = convolve(params, g, v, inner, rule, translation_rule)
    left = convolve(params, hg, v, out_grid, rule, translation_rule)
    right = convolve(params, h, gv, out_grid, rule, translation_rule)
    discrepancy = float(np.max(np.abs(left.values - right.values)))
    return CheckReport(
        name, discrepancy, 0.0, tolerance, rule.resolution, relation="le"
    )