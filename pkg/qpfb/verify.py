"""Verification suites.

Each suite takes a :class:`.RunConfig` and returns a list of
:class:`.CheckReport` objects; suites are registered by name and ``all``
runs every one of them in registration order.

Options are read from the ``"verify"`` config section::

    {"verify": {"seed": 0, "scales": [0.5, 2, 3], "M": [[0, 3]]}}

"""
import logging

import numpy as np

from . import util
from .convolution import associativity_check
from .convolution import commutativity_check
from .convolution import YOUNG_PAIRS
from .convolution import young_check
from .quadrature import build_rule
from .quadrature import RadialGrid
from .report import VerificationReport
from .signals import power_gaussian
from .transform import classical_reduction_check
from .transform import gaussian_fixed_point_check
from .transform import kernel_bound_check
from .transform import parseval_check
from .transform import QpfbParams
from .transform import riemann_lebesgue_check
from .transform import roundtrip_check
from .transform import scaling_identity_check
from .transform import two_path_check
from .translation import contraction_check
from .translation import identity_check
from .translation import normalization_check
from .translation import symmetry_check
from .uncertainty import donoho_stark_check
from .uncertainty import hs_bound_check
from .uncertainty import lp_concentration_check
from .util import CommandError
from .util import DomainError

log = logging.getLogger(__name__)

ALL = "all"

_suites = util.Dispatcher("suite")


def _companion(s):
    return power_gaussian(s, alpha=1.0, power=1)


def _even_companion(s):
    # smooth in u**2, so the angular rule converges geometrically
    return power_gaussian(s, alpha=1.0, power=2)


def _random(run):
    return np.random.RandomState(int(run.verify_options.get("seed", 0)))


def _clip_set(intervals, R):
    clipped = []
    for lo, hi in intervals:
        hi = min(float(hi), R)
        if lo < hi:
            clipped.append((float(lo), hi))
    return clipped


@_suites.dispatch_for("parseval")
def _parseval(run):
    params, rules, h = run.params, run.rules, run.signal
    opts = run.verify_options
    rng = _random(run)
    s = rng.uniform(0.0, run.truncation, 1000)
    t = rng.uniform(0.0, run.transform_truncation, 1000)
    near = RadialGrid.uniform(min(8.0, run.transform_truncation), 161)
    probes = opts.get("probes", [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0])
    return [
        kernel_bound_check(params, s, t),
        gaussian_fixed_point_check(params.order, near, rules.signal),
        classical_reduction_check(params.order, h, near, rules.signal),
        two_path_check(params, h, run.out_grid, rules.signal),
        parseval_check(params, h, _companion, rules, name="parseval"),
        parseval_check(params, h, h, rules, name="plancherel"),
        riemann_lebesgue_check(params, h, rules.signal, sorted(probes)),
    ]


@_suites.dispatch_for("roundtrip")
def _roundtrip(run):
    params, rules, h = run.params, run.rules, run.signal
    checks = [roundtrip_check(params, h, rules)]
    for k in run.verify_options.get("scales", [0.5, 2.0, 3.0]):
        checks.append(
            scaling_identity_check(
                params,
                h,
                k,
                run.out_grid,
                rules.signal,
                name="scaling-k%g" % k,
            )
        )
    return checks


@_suites.dispatch_for("translation")
def _translation(run):
    params, rules, h = run.params, run.rules, run.signal
    opts = run.verify_options
    rng = _random(run)
    upper = 0.5 * run.truncation
    pairs = rng.uniform(0.1, upper, (int(opts.get("pairs", 20)), 2))
    pairs = [tuple(pair) for pair in pairs]
    shift = float(opts.get("shift", 1.5))
    trule = run.translation_rule
    checks = [
        normalization_check(params.order, pairs),
        symmetry_check(params, h, pairs[:5], trule),
    ]
    for p in (1, 2, "inf"):
        checks.append(
            contraction_check(params, h, shift, rules.signal, p, trule)
        )
    checks.append(identity_check(params, h, rules.signal.grid))
    return checks


@_suites.dispatch_for("young")
def _young(run):
    params, h = run.params, run.signal
    opts = run.verify_options
    panels, nodes = opts.get("convolution_resolution", [24, 12])
    rule = build_rule(params.order, run.truncation, panels, nodes)
    trule = run.translation_rule
    checks = [
        young_check(params, h, _even_companion, p, q, rule, trule)
        for p, q in YOUNG_PAIRS
    ]
    grid = RadialGrid.uniform(min(6.0, run.truncation), 25)
    checks.append(
        commutativity_check(params, h, _even_companion, grid, rule, trule)
    )
    # associativity holds for vanishing a and d only
    plain = QpfbParams(
        0.0, params.b, params.c, 0.0, params.e, params.order
    )
    checks.append(
        associativity_check(
            plain, h, _even_companion, h, grid, rule, trule
        )
    )
    return checks


@_suites.dispatch_for("donoho-stark")
def _donoho_stark(run):
    params, rules, h = run.params, run.rules, run.signal
    opts = run.verify_options
    M = _clip_set(opts.get("M", [[0.0, 3.0]]), run.truncation)
    N = _clip_set(opts.get("N", [[0.0, 3.0]]), run.transform_truncation)
    checks = [
        donoho_stark_check(params, h, M, N, rules, name="donoho-stark"),
        donoho_stark_check(
            params,
            h,
            [(0.0, run.truncation)],
            [(0.0, run.transform_truncation)],
            rules,
            name="donoho-stark-full",
        ),
        hs_bound_check(params, M, N, rules),
    ]
    for p in opts.get("lp_exponents", [1.25, 1.5, 2.0]):
        checks.append(lp_concentration_check(params, h, M, N, p, rules))
    return checks


def suite_names():
    return _suites.names() + [ALL]


def run_suite(name, run):
    """Run suite ``name`` (or ``"all"``) and collect a
    :class:`.VerificationReport`."""
    if name == ALL:
        names = _suites.names()
    else:
        try:
            _suites.dispatch(name)
        except ValueError:
            raise CommandError(
                "no suite named %r; choose from %s"
                % (name, ", ".join(suite_names()))
            )
        names = [name]
    checks = []
    for suite in names:
        log.info("running suite %s", suite)
        try:
            checks.extend(_suites.dispatch(suite)(run))
        except DomainError as de:
            raise CommandError("suite %s: %s" % (suite, de))
    return VerificationReport(checks, settings=run.as_dict())
