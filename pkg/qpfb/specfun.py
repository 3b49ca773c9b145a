"""Special functions: Gamma, the normalized Bessel function j_gamma and
the Fourier-Bessel constant c_gamma.

``j_gamma(x) = 2**gamma * Gamma(gamma + 1) * J_gamma(x) / x**gamma`` is
summed from its power series for small arguments and from the Hankel
asymptotic expansion of ``J_gamma`` for large ones. For large orders the
band in between is covered by ``scipy.special.jv``.

"""
import logging
import math

import numpy as np
from scipy import special

from .util import DomainError

log = logging.getLogger(__name__)

SERIES_CUTOFF = 14.0
"""Arguments with ``|x|`` below this value are summed from the power
series; larger ones use the asymptotic expansion.

Cancellation in the alternating series costs about ``exp(x)`` in absolute
accuracy while the optimally truncated asymptotic series gains about
``exp(-2x)``; both stay below 1e-10 around this crossover.

"""

SERIES_SPREAD = 10.0
"""The series is also used while ``x**2 < 4 * (gamma + 1) * SERIES_SPREAD``;
its largest term then stays near ``exp(SERIES_SPREAD)``.

Between the series region and ``max(SERIES_CUTOFF, gamma**2)``, where the
Hankel expansion is not yet accurate, ``scipy.special.jv`` is scaled by a
log-space prefactor.

"""

SERIES_EPS = 1e-17
SERIES_MAX_TERMS = 400
ASYMPTOTIC_MAX_TERMS = 120


class Order(object):
    """The order gamma of the Bessel weight ``s**(2*gamma + 1)``."""

    __slots__ = ("gamma",)

    def __init__(self, gamma):
        if isinstance(gamma, Order):
            gamma = gamma.gamma
        try:
            gamma = float(gamma)
        except (TypeError, ValueError):
            raise DomainError("gamma must be a real number; got %r" % (gamma,))
        if not math.isfinite(gamma) or gamma <= -0.5:
            raise DomainError(
                "gamma must satisfy gamma > -1/2; got %r" % (gamma,)
            )
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, key, value):
        raise AttributeError("Order is immutable")

    @property
    def weight_exponent(self):
        """Exponent ``2*gamma + 1`` of the radial measure."""
        return 2.0 * self.gamma + 1.0

    def __float__(self):
        return self.gamma

    def __eq__(self, other):
        return isinstance(other, Order) and other.gamma == self.gamma

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("Order", self.gamma))

    def __repr__(self):
        return "Order(%r)" % (self.gamma,)


def as_order(value):
    if isinstance(value, Order):
        return value
    return Order(value)


def gamma_fn(x):
    """Gamma function for positive real arguments.

    Accepts a scalar or an array; a non-positive or non-finite argument
    raises :class:`.DomainError`.

    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("gamma_fn requires finite x > 0; got %r" % (x,))
    result = special.gamma(arr)
    if np.ndim(result) == 0:
        return float(result)
    return result


def c_gamma(order):
    """The constant ``1 / (2**gamma * Gamma(gamma + 1))``."""
    gamma = as_order(order).gamma
    return 1.0 / (2.0 ** gamma * gamma_fn(gamma + 1.0))


def _series(gamma, x):
    # term_n = term_{n-1} * (-(x/2)**2) / (n * (n + gamma)), term_0 = 1
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for n in range(1, SERIES_MAX_TERMS + 1):
        term = term * q / (n * (n + gamma))
        total = total + term
        if not np.any(np.abs(term) > SERIES_EPS * np.abs(total)):
            break
    else:
        log.debug(
            "series for j_%s hit the %d term cap", gamma, SERIES_MAX_TERMS
        )
    return total


def _asymptotic(gamma, x):
    mu = 4.0 * gamma * gamma
    p_sum = np.ones_like(x)
    q_sum = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, ASYMPTOTIC_MAX_TERMS + 1):
        term = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        mag = np.abs(term)
        # optimal truncation: stop once the terms grow again past the
        # region where (2k-1)**2 < mu
        active &= ~((mag >= prev) & ((2 * k - 1) ** 2 > mu))
        if not active.any():
            break
        contribution = np.where(active, term, 0.0)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q_sum += sign * contribution
        else:
            p_sum += sign * contribution
        prev = np.where(active, mag, prev)
        active &= mag >= SERIES_EPS * np.abs(p_sum)
        if not active.any():
            break
    omega = x - (0.5 * gamma + 0.25) * math.pi
    bessel_j = np.sqrt(2.0 / (math.pi * x)) * (
        p_sum * np.cos(omega) - q_sum * np.sin(omega)
    )
    log_scale = special.gammaln(gamma + 1.0) + gamma * np.log(2.0 / x)
    return np.exp(log_scale) * bessel_j


def _scaled_jv(gamma, x):
    # Gamma(gamma + 1) * (2/x)**gamma overflows long before the product does
    log_scale = special.gammaln(gamma + 1.0) + gamma * np.log(2.0 / x)
    return np.exp(log_scale) * special.jv(gamma, x)


def normalized_bessel(order, x):
    """Evaluate the normalized Bessel function ``j_gamma(x)``.

    :param order: an :class:`.Order` or a real ``gamma > -1/2``.
    :param x: scalar or array of real arguments; the function is even,
     so ``|x|`` is used.
    :return: a float for scalar input, otherwise an array of the same
     shape.

    """
    gamma = as_order(order).gamma
    arr = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise DomainError("normalized_bessel requires finite arguments")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    result = np.empty_like(arr)
    small = (arr < SERIES_CUTOFF) | (
        arr * arr < 4.0 * (gamma + 1.0) * SERIES_SPREAD
    )
    large = ~small & (arr > max(SERIES_CUTOFF, gamma * gamma))
    middle = ~(small | large)
    if small.any():
        result[small] = _series(gamma, arr[small])
    if middle.any():
        result[middle] = _scaled_jv(gamma, arr[middle])
    if large.any():
        result[large] = _asymptotic(gamma, arr[large])
    if scalar:
        return float(result[0])
    return result


def bessel_j(order, x):
    """Unnormalized ``J_gamma(x)`` for ``x > 0``, derived from
    :func:`.normalized_bessel`."""
    gamma = as_order(order).gamma
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("bessel_j requires x > 0")
    return (
        normalized_bessel(gamma, arr)
        * arr ** gamma
        / (2.0 ** gamma * gamma_fn(gamma + 1.0))
    )
