import csv
import json
import logging
import os

import numpy as np

from . import util
from .quadrature import DomainRules
from .quadrature import Signal
from .signals import read_csv
from .signals import SIGNAL_COLUMNS
from .signals import tail_ratio
from .signals import TRANSFORM_COLUMNS
from .signals import write_csv
from .transform import forward
from .transform import inverse as inverse_transform
from .transform import QpfbParams
from .uncertainty import as_set
from .uncertainty import donoho_stark_check
from .verify import run_suite
from .verify import suite_names

log = logging.getLogger(__name__)

TAIL_WARNING = 1e-14

SWEEP_COLUMNS = (
    "a",
    "b",
    "c",
    "d",
    "e",
    "gamma",
    "M",
    "N",
    "eps_M",
    "eps_N",
    "measure_M",
    "measure_N",
    "bound",
    "observed",
    "slack",
    "vacuous",
    "pass",
    "resolution",
)


def _run_config(config):
    from .config import RunConfig

    return RunConfig.from_config(config)


def _load_signal(run, path, columns, truncation_radius):
    if path is None:
        return run.signal
    if not os.access(path, os.F_OK):
        raise util.CommandError("No such signal file %r" % path)
    return read_csv(path, columns, truncation_radius)


def _warn_truncation(h, R):
    ratio = tail_ratio(h, R)
    if ratio > TAIL_WARNING:
        if isinstance(h, Signal) and h.grid.points[-1] < R:
            util.warn(
                "signal is still %.3g of its peak at its last sample "
                "%g; it is taken as zero beyond"
                % (ratio, h.grid.points[-1])
            )
        else:
            util.warn(
                "signal is still %.3g of its peak at the truncation radius "
                "%g; consider a larger --truncation" % (ratio, R)
            )


def _write_table(config, out, points, values, columns, resolution):
    if out is None:
        write_csv(config.stdout, points, values, columns, resolution)
    else:
        with open(out, "w", newline="") as f:
            write_csv(f, points, values, columns, resolution)


def _write_json(path, document):
    with open(path, "w") as f:
        json.dump(document, f, sort_keys=True, indent=2)
        f.write("\n")


def list_suites(config):
    """List available verification suites.

    :param config: a :class:`.Config` object.

    """
    config.print_stdout("Available suites:\n")
    for name in suite_names():
        config.print_stdout("  %s", name)
    config.print_stdout("\nSuites are run via the 'verify' command, e.g.:")
    config.print_stdout("\n  qpfb verify parseval")


def transform(config, signal=None, out=None):
    """Apply the forward transform and write t,re,im rows.

    :param config: a :class:`.Config` object.

    :param signal: path of an ``s,re,im`` CSV file; the configured
     functional signal is used when omitted.

    :param out: output CSV path; ``<out>.json`` receives the run
     metadata.  Rows go to standard out when omitted.

    """
    run = _run_config(config)
    h = _load_signal(run, signal, SIGNAL_COLUMNS, run.truncation)
    _warn_truncation(h, run.truncation)
    result = forward(run.params, h, run.out_grid, run.rules.signal)
    _write_table(
        config,
        out,
        result.grid.points,
        result.values,
        TRANSFORM_COLUMNS,
        run.resolution,
    )
    if out is not None:
        _write_json(
            out + ".json",
            {
                "params": run.params.as_dict(),
                "resolution": run.resolution,
                "prefactor": {
                    "re": result.prefactor.real,
                    "im": result.prefactor.imag,
                },
                "truncation": run.truncation,
                "transform_truncation": run.transform_truncation,
                "points": len(result.grid),
            },
        )
        config.print_stdout("Wrote %d rows to %s", len(result.grid), out)


def inverse(config, signal=None, out=None):
    """Apply the inverse transform to t,re,im rows and write s,re,im.

    :param config: a :class:`.Config` object.

    :param signal: path of a ``t,re,im`` CSV file; the configured
     functional signal is used when omitted.

    :param out: output CSV path; rows go to standard out when omitted.

    """
    run = _run_config(config)
    H = _load_signal(
        run, signal, TRANSFORM_COLUMNS, run.transform_truncation
    )
    _warn_truncation(H, run.transform_truncation)
    result = inverse_transform(
        run.params, H, run.out_grid, run.rules.transform
    )
    _write_table(
        config,
        out,
        result.grid.points,
        result.values,
        SIGNAL_COLUMNS,
        run.resolution,
    )
    if out is not None:
        config.print_stdout("Wrote %d rows to %s", len(result.grid), out)


def verify(config, suite="all", out=None):
    """Run a verification suite and report every check.

    :param config: a :class:`.Config` object.

    :param suite: suite name, or ``"all"``.

    :param out: path of the JSON report; it is printed after the
     summary when omitted.

    """
    run = _run_config(config)
    report = run_suite(suite, run)
    config.print_stdout(
        util.template_to_string(
            os.path.join(config.get_template_directory(), "summary.txt.mako"),
            report=report,
            suite=suite,
            run=run,
            format_float=util.format_float,
        ).rstrip("\n")
    )
    if out is None:
        util.write_outstream(config.stdout, report.dumps())
    else:
        with open(out, "w") as f:
            f.write(report.dumps())
    if not report.passed:
        raise util.VerificationFailure(report.failed)


def _format_set(measurable_set):
    return ";".join(
        "%s:%s" % (util.format_float(lo), util.format_float(hi))
        for lo, hi in measurable_set.intervals
    )


def _sweep_sets(spec, key, R):
    if key in spec:
        return [as_set(s) for s in spec[key]]
    stops = spec.get(
        key + "_stops", list(np.linspace(R / 4.0, R, 4))
    )
    return [as_set([(0.0, min(float(stop), R))]) for stop in stops]


def sweep(config, out=None):
    """Tabulate Donoho-Stark bound slack over sets and parameters.

    :param config: a :class:`.Config` object.

    :param out: output CSV path; rows go to standard out when omitted.

    The ``"sweep"`` config section lists ``"M"`` / ``"N"`` (lists of
    interval lists) or ``"M_stops"`` / ``"N_stops"`` (right ends of
    ``[0, stop]``), and optionally ``"params"``, a list of parameter
    overrides.  Rows follow the order params, then M, then N.

    """
    run = _run_config(config)
    spec = run.sweep_spec
    Ms = _sweep_sets(spec, "M", run.truncation)
    Ns = _sweep_sets(spec, "N", run.transform_truncation)
    param_sets = []
    for override in spec.get("params", [{}]):
        values = run.params.as_dict()
        values.update(override)
        try:
            param_sets.append(QpfbParams(**values))
        except (TypeError, util.DomainError) as e:
            raise util.CommandError(
                "Invalid sweep params %r: %s" % (override, e)
            )

    rows = []
    for params in param_sets:
        rules = run.rules
        if params.order != rules.order:
            rules = DomainRules.build(
                params.order,
                run.truncation,
                run.transform_truncation,
                run.panels,
                run.nodes,
            )
        for M in Ms:
            for N in Ns:
                report = donoho_stark_check(
                    params, run.signal, M, N, rules
                )
                rows.append((params, M, N, report))
    log.info("sweep produced %d rows", len(rows))

    def emit(stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for params, M, N, report in rows:
            cells = [util.format_float(v) for v in (
                params.a, params.b, params.c, params.d, params.e, params.gamma
            )]
            cells.extend([_format_set(M), _format_set(N)])
            cells.extend(util.format_float(v) for v in (
                report.eps_M,
                report.eps_N,
                report.measure_M,
                report.measure_N,
                report.bound,
                report.observed,
                report.slack,
            ))
            cells.append("true" if report.vacuous else "false")
            cells.append("true" if report.passed else "false")
            cells.append(run.resolution)
            writer.writerow(cells)

    if out is None:
        emit(config.stdout)
    else:
        with open(out, "w", newline="") as f:
            emit(f)
        config.print_stdout("Wrote %d rows to %s", len(rows), out)
