"""Result records for the numerical checks.

Every check returns a :class:`.CheckReport` (or a subclass) carrying both
sides of the relation it verified, the tolerance used and the quadrature
resolution, so a failing number can always be traced back to how it was
computed.

"""
import json
import math

from .util import format_float

RELATIONS = {
    "eq": lambda lhs, rhs, tol: abs(lhs - rhs) <= tol,
    "le": lambda lhs, rhs, tol: lhs <= rhs + tol,
    "ge": lambda lhs, rhs, tol: lhs >= rhs - tol,
}


def _plain(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (int, float)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, dict):
        return dict((k, _plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


class CheckReport(object):
    """Outcome of one numerical check.

    :param name: check name, unique within a verification run.
    :param lhs: computed left-hand side.
    :param rhs: computed right-hand side.
    :param tolerance: absolute slack allowed by ``relation``.
    :param resolution: ``"<panels>x<nodes>"`` label of the rule used.
    :param passed: explicit outcome; computed from ``relation`` when
     omitted.
    :param relation: one of ``"eq"``, ``"le"``, ``"ge"``.
    :param details: extra named values, copied into :meth:`.as_dict`.

    """

    def __init__(
        self,
        name,
        lhs,
        rhs,
        tolerance,
        resolution,
        passed=None,
        relation="eq",
        details=None,
    ):
        if relation not in RELATIONS:
            raise ValueError("unknown relation %r" % relation)
        self.name = name
        self.lhs = float(lhs)
        self.rhs = float(rhs)
        self.tolerance = float(tolerance)
        self.resolution = resolution
        self.relation = relation
        self.details = dict(details or {})
        if passed is None:
            passed = bool(
                RELATIONS[relation](self.lhs, self.rhs, self.tolerance)
            )
        self.passed = passed

    @property
    def discrepancy(self):
        return abs(self.lhs - self.rhs)

    def as_dict(self):
        d = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tolerance": self.tolerance,
            "resolution": self.resolution,
            "relation": self.relation,
            "discrepancy": self.discrepancy,
            "pass": self.passed,
        }
        d.update(self.details)
        return _plain(d)

    def __repr__(self):
        return "<%s %s %s lhs=%s rhs=%s>" % (
            self.__class__.__name__,
            self.name,
            "pass" if self.passed else "FAIL",
            format_float(self.lhs),
            format_float(self.rhs),
        )


class ParsevalReport(CheckReport):
    """Norm and inner-product preservation.

    ``lhs``/``rhs`` hold the two norms; the inner-product discrepancy
    travels alongside and must also be within ``inner_tolerance``.

    """

    def __init__(
        self,
        name,
        norm_h,
        norm_bh,
        inner_h,
        inner_bh,
        tolerance,
        inner_tolerance,
        resolution,
        details=None,
    ):
        self.inner_product = complex(inner_h)
        self.transformed_inner_product = complex(inner_bh)
        self.inner_tolerance = float(inner_tolerance)
        passed = (
            abs(norm_bh - norm_h) <= tolerance
            and self.inner_discrepancy <= self.inner_tolerance
        )
        super(ParsevalReport, self).__init__(
            name,
            norm_bh,
            norm_h,
            tolerance,
            resolution,
            passed=passed,
            details={
                "inner_product": self.inner_product,
                "transformed_inner_product": self.transformed_inner_product,
                "inner_discrepancy": self.inner_discrepancy,
                "inner_tolerance": self.inner_tolerance,
            },
        )
        self.details.update(details or {})

    @property
    def norm_discrepancy(self):
        return self.discrepancy

    @property
    def inner_discrepancy(self):
        return abs(self.inner_product - self.transformed_inner_product)


class RiemannLebesgueReport(CheckReport):
    """``sup |B[h]|`` over the probes against the L1 bound, plus the
    modulus at the first and last probe as decay evidence."""

    def __init__(
        self, name, sup, bound, tolerance, resolution, first, last, probes
    ):
        self.first_value = float(first)
        self.last_value = float(last)
        super(RiemannLebesgueReport, self).__init__(
            name,
            sup,
            bound,
            tolerance,
            resolution,
            relation="le",
            details={
                "first_probe": float(probes[0]),
                "last_probe": float(probes[-1]),
                "first_value": self.first_value,
                "last_value": self.last_value,
            },
        )

    @property
    def sup(self):
        return self.lhs

    @property
    def bound(self):
        return self.rhs


class ScalingReport(CheckReport):
    def __init__(self, name, k, discrepancy, tolerance, resolution):
        self.k = float(k)
        super(ScalingReport, self).__init__(
            name,
            discrepancy,
            0.0,
            tolerance,
            resolution,
            relation="le",
            details={"k": self.k},
        )


class ConvolutionReport(CheckReport):
    """Young's inequality ``||h*g||_r <= ||h||_p ||g||_q``.

    Passes when ``lhs <= rhs * (1 + rel_tolerance)``.

    """

    def __init__(
        self, name, p, q, r, lhs, rhs, resolution, rel_tolerance=1e-6
    ):
        self.p = float(p)
        self.q = float(q)
        self.r = float(r)
        super(ConvolutionReport, self).__init__(
            name,
            lhs,
            rhs,
            float(rhs) * rel_tolerance,
            resolution,
            relation="le",
            details={"p": self.p, "q": self.q, "r": self.r},
        )


class ConcentrationReport(CheckReport):
    """Donoho-Stark bound ``|M| |N| >= (1 - eps_M - eps_N)**2 / alpha``.

    When ``eps_M + eps_N >= 1`` the bound says nothing; the report is
    then ``vacuous`` and counts as passed.

    """

    def __init__(
        self,
        name,
        eps_M,
        eps_N,
        measure_M,
        measure_N,
        bound,
        tolerance,
        resolution,
        normalization=1.0,
        plain_measure_M=None,
        plain_measure_N=None,
    ):
        self.eps_M = float(eps_M)
        self.eps_N = float(eps_N)
        self.measure_M = float(measure_M)
        self.measure_N = float(measure_N)
        self.normalization = float(normalization)
        self.vacuous = self.eps_M + self.eps_N >= 1.0
        observed = self.measure_M * self.measure_N
        passed = None
        if self.vacuous:
            passed = True
        super(ConcentrationReport, self).__init__(
            name,
            observed,
            bound,
            tolerance,
            resolution,
            passed=passed,
            relation="ge",
            details={
                "eps_M": self.eps_M,
                "eps_N": self.eps_N,
                "measure_M": self.measure_M,
                "measure_N": self.measure_N,
                "plain_measure_M": plain_measure_M,
                "plain_measure_N": plain_measure_N,
                "normalization": self.normalization,
                "vacuous": self.vacuous,
            },
        )

    @property
    def observed(self):
        return self.lhs

    @property
    def bound(self):
        return self.rhs

    @property
    def slack(self):
        return self.lhs - self.rhs


class LpConcentrationReport(CheckReport):
    def __init__(
        self, name, p, eps_M, eps_N, lhs, rhs, tolerance, resolution
    ):
        self.p = float(p)
        self.q = self.p / (self.p - 1.0)
        self.eps_M = float(eps_M)
        self.eps_N = float(eps_N)
        super(LpConcentrationReport, self).__init__(
            name,
            lhs,
            rhs,
            tolerance,
            resolution,
            relation="le",
            details={
                "p": self.p,
                "q": self.q,
                "eps_M": self.eps_M,
                "eps_N": self.eps_N,
            },
        )


class VerificationReport(object):
    """Collection of :class:`.CheckReport` objects from one run."""

    def __init__(self, checks, settings=None):
        self.checks = list(checks)
        self.settings = dict(settings or {})

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed(self):
        return [check.name for check in self.checks if not check.passed]

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    def as_dict(self):
        return {
            "settings": _plain(self.settings),
            "checks": [check.as_dict() for check in self.checks],
            "passed": self.passed,
            "failed": self.failed,
        }

    def dumps(self):
        # sorted keys keep reruns byte-identical
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"
