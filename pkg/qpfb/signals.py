"""Test signals by name, and CSV signal files."""
import csv
import logging
import math

import numpy as np

from . import util
from .quadrature import RadialGrid
from .quadrature import Signal
from .util import DomainError

log = logging.getLogger(__name__)

SIGNAL_COLUMNS = ("s", "re", "im")
TRANSFORM_COLUMNS = ("t", "re", "im")
RESOLUTION_COLUMN = "resolution"


def power_gaussian(s, alpha=0.5, power=0, amplitude=1.0):
    """``amplitude * s**power * exp(-alpha s**2)``."""
    s = np.asarray(s, dtype=float)
    return amplitude * s ** power * np.exp(-alpha * s * s)


_named = util.Dispatcher("signal")


@_named.dispatch_for("gaussian")
def _gaussian(alpha=0.5, amplitude=1.0):
    alpha, amplitude = float(alpha), float(amplitude)
    if alpha <= 0:
        raise DomainError("gaussian alpha must be positive; got %r" % alpha)
    return lambda s: power_gaussian(s, alpha, 0, amplitude)


@_named.dispatch_for("power_gaussian")
def _power_gaussian(alpha=0.5, power=1, amplitude=1.0):
    alpha, power, amplitude = float(alpha), float(power), float(amplitude)
    if alpha <= 0:
        raise DomainError("gaussian alpha must be positive; got %r" % alpha)
    if power < 0:
        raise DomainError("power must be >= 0; got %r" % power)
    return lambda s: power_gaussian(s, alpha, power, amplitude)


@_named.dispatch_for("zero")
def _zero():
    return lambda s: np.zeros(np.shape(s))


def signal_names():
    return _named.names()


def from_spec(spec):
    """Build a signal function from ``{"name": ..., <parameters>}``."""
    spec = dict(spec)
    name = spec.pop("name", "gaussian")
    try:
        factory = _named.dispatch(name)
    except ValueError as ve:
        raise DomainError(str(ve))
    try:
        return factory(**spec)
    except (TypeError, ValueError) as te:
        if isinstance(te, DomainError):
            raise
        raise DomainError("bad parameters for signal %r: %s" % (name, te))


def read_csv(stream, columns=SIGNAL_COLUMNS, truncation_radius=None):
    """Read a ``<x>,re,im`` CSV file into a :class:`.Signal`.

    :param stream: a path or an open text stream.
    :param columns: expected header; a trailing ``resolution`` column, as
     written by :func:`.write_csv`, is accepted and ignored.
    :param truncation_radius: grid truncation radius; defaults to the
     last abscissa.

    Every violation raises :class:`.DomainError` naming the 1-based line.

    """
    if isinstance(stream, str):
        with open(stream, newline="") as f:
            return read_csv(f, columns, truncation_radius)

    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        raise DomainError("line 1: empty signal file")
    header = [h.strip() for h in header]
    if header not in (list(columns), list(columns) + [RESOLUTION_COLUMN]):
        raise DomainError(
            "line 1: expected header %s; got %s"
            % (",".join(columns), ",".join(header))
        )
    points, values = [], []
    for row in reader:
        lineno = reader.line_num
        if not row or not "".join(row).strip():
            continue
        if len(row) != len(header):
            raise DomainError(
                "line %d: expected %d fields; got %d"
                % (lineno, len(header), len(row))
            )
        try:
            x, re, im = (float(field) for field in row[:3])
        except ValueError:
            raise DomainError(
                "line %d: could not parse %r as numbers" % (lineno, row)
            )
        if not all(math.isfinite(v) for v in (x, re, im)):
            raise DomainError("line %d: values must be finite" % lineno)
        if x < 0:
            raise DomainError(
                "line %d: %s must be >= 0" % (lineno, columns[0])
            )
        if points and x <= points[-1]:
            raise DomainError(
                "line %d: %s values must be strictly increasing"
                % (lineno, columns[0])
            )
        points.append(x)
        values.append(complex(re, im))
    if not points:
        raise DomainError("signal file has no data rows")
    log.info("read %d samples", len(points))
    return Signal(RadialGrid(points, truncation_radius), values)


def write_csv(
    stream, points, values, columns=SIGNAL_COLUMNS, resolution=None
):
    """Write ``<x>,re,im`` rows with 17 significant digits.

    When ``resolution`` is given every row also carries it in a trailing
    ``resolution`` column.

    """
    writer = csv.writer(stream, lineterminator="\n")
    extra = [] if resolution is None else [resolution]
    writer.writerow(list(columns) + ([RESOLUTION_COLUMN] if extra else []))
    for x, v in zip(points, values):
        v = complex(v)
        writer.writerow(
            [
                util.format_float(x),
                util.format_float(v.real),
                util.format_float(v.imag),
            ]
            + extra
        )


def tail_ratio(h, R, num=513):
    """``|h(R)| / max |h|`` over a uniform grid on ``[0, R]``.

    A :class:`.Signal` is sampled only up to its last point, since it is
    zero beyond.

    """
    if isinstance(h, Signal):
        xs = np.linspace(0.0, min(R, h.grid.points[-1]), num)
        magnitude = np.abs(h(xs))
    else:
        xs = np.linspace(0.0, R, num)
        magnitude = np.abs(np.asarray(h(xs), dtype=complex))
    peak = magnitude.max()
    if peak == 0.0:
        return 0.0
    return float(magnitude[-1] / peak)
