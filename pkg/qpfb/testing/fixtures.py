import numpy as np

from ..quadrature import build_rule
from ..quadrature import DomainRules
from ..transform import QpfbParams


class TestBase(object):
    """Base for test classes; runs ``setUp`` / ``tearDown`` around each
    test method when they are defined."""

    def setup_method(self, method):
        if hasattr(self, "setUp"):
            self.setUp()

    def teardown_method(self, method):
        if hasattr(self, "tearDown"):
            self.tearDown()


def gaussian(s):
    return np.exp(-0.5 * np.asarray(s, dtype=float) ** 2)


def companion(s):
    s = np.asarray(s, dtype=float)
    return s * np.exp(-s * s)


def small_rules(gamma, R=8.0, transform_R=None, panels=32, nodes=12):
    """Reduced resolution rules sufficient for most unit tests."""
    return DomainRules.build(gamma, R, transform_R, panels, nodes)


def small_rule(gamma, R=8.0, panels=24, nodes=12):
    return build_rule(gamma, R, panels, nodes)



def random_params(rng, orders=(0.0, 0.5, 1.0), max_b=1.25, max_d=0.3):
    """Parameters drawn from ``rng``; ``|b|`` lies in ``[0.8, max_b]``."""
    a, c, e = rng.uniform(-0.5, 0.5, 3)
    b = rng.choice([-1.0, 1.0]) * rng.uniform(0.8, max_b)
    d = rng.uniform(-max_d, max_d)
    return QpfbParams(a, b, c, d, e, float(rng.choice(orders)))


def random_gaussian_class(rng, powers=(0, 1, 2)):
    """``s**k exp(-alpha s**2)`` with ``alpha`` in ``[0.5, 1.5]``."""
    alpha = rng.uniform(0.5, 1.5)
    power = int(rng.choice(powers))

    def h(s):
        s = np.asarray(s, dtype=float)
        return s ** power * np.exp(-alpha * s * s)

    return h
