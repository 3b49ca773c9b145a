from argparse import ArgumentParser
import inspect
import json
import logging
import logging.config
import os
import sys

from . import __version__
from . import command
from . import package_dir
from . import util
from .quadrature import DEFAULT_NODES_PER_PANEL
from .quadrature import DEFAULT_PANELS
from .quadrature import DomainRules
from .quadrature import RadialGrid
from .signals import from_spec
from .transform import QpfbParams
from .translation import DEFAULT_ANGULAR_NODES
from .translation import TranslationRule
from .util import CommandError
from .util import DomainError

log = logging.getLogger(__name__)

PARAM_NAMES = ("a", "b", "c", "d", "e", "gamma")

DEFAULT_TRUNCATION = 12.0
DEFAULT_GRID_POINTS = 257


class Config(object):

    r"""Represent a qpfb configuration.

    A :class:`.Config` reads a single JSON document whose top-level keys
    are sections::

        {
            "params": {"a": 0.5, "b": 1.0, "gamma": 0.0},
            "quadrature": {"truncation": 12, "panels": 64, "nodes": 16},
            "grid": {"start": 0, "stop": 8, "num": 161},
            "signal": {"name": "gaussian", "alpha": 0.5}
        }

    When invoking commands programmatically, a :class:`.Config` can be
    created without a file and populated through
    :meth:`.Config.set_section_option`::

        from qpfb.config import Config
        from qpfb import command

        cfg = Config()
        cfg.set_section_option("params", "b", 2.0)
        command.verify(cfg, "parseval")

    :param file\_: name of the JSON file to open.
    :param stdout: buffer where the "print" output of commands will be
     sent.  Defaults to ``sys.stdout``.
    :param cmd_opts: the parsed ``argparse`` namespace, when run from
     the command line; its flags take precedence over file values.
    :param config_args: a dictionary merged into the document beneath
     the file's own sections.
    :param attributes: optional dictionary of arbitrary Python
     keys/values, which will be populated into the
     :attr:`.Config.attributes` dictionary.

    """

    def __init__(
        self,
        file_=None,
        stdout=sys.stdout,
        cmd_opts=None,
        config_args=util.immutabledict(),
        attributes=None,
    ):
        self.config_file_name = file_
        self.stdout = stdout
        self.cmd_opts = cmd_opts
        self.config_args = dict(config_args)
        if attributes:
            self.attributes.update(attributes)

    cmd_opts = None
    """The command-line options passed to the ``qpfb`` script."""

    config_file_name = None
    """Filesystem path to the JSON file in use."""

    main_section = "qpfb"

    @util.memoized_property
    def attributes(self):
        """A Python dictionary for storage of additional state."""
        return {}

    def print_stdout(self, text, *arg):
        """Render a message to standard out.

        When :meth:`.Config.print_stdout` is called with additional args
        those arguments will formatted against the provided text,
        otherwise we simply output the provided text verbatim.

        """
        if arg:
            output = str(text) % arg
        else:
            output = str(text)

        util.write_outstream(self.stdout, output, "\n")

    @util.memoized_property
    def file_config(self):
        """The parsed JSON document, as a dictionary of sections."""
        document = dict(
            (k, dict(v) if isinstance(v, dict) else v)
            for k, v in self.config_args.items()
        )
        if not self.config_file_name:
            return document
        if not os.path.exists(self.config_file_name):
            raise CommandError(
                "No config file %r found" % self.config_file_name
            )
        with open(self.config_file_name) as f:
            try:
                loaded = json.load(f)
            except ValueError as ve:
                raise CommandError(
                    "Config file %r is not valid JSON: %s"
                    % (self.config_file_name, ve)
                )
        if not isinstance(loaded, dict):
            raise CommandError(
                "Config file %r must hold a JSON object"
                % self.config_file_name
            )
        for name, section in loaded.items():
            if isinstance(section, dict) and isinstance(
                document.get(name), dict
            ):
                document[name].update(section)
            else:
                document[name] = section
        return document

    def get_template_directory(self):
        return os.path.join(package_dir, "templates")

    def get_section(self, name, default=None):
        """Return a section of the document as a dictionary."""
        section = self.file_config.get(name)
        if section is None:
            return default
        if not isinstance(section, dict):
            raise CommandError(
                "Config section %r must be a JSON object" % name
            )
        return dict(section)

    def set_section_option(self, section, name, value):
        """Set an option programmatically within the given section.

        The section is created if it doesn't exist already.

        """
        self.file_config.setdefault(section, {})[name] = value

    def get_section_option(self, section, name, default=None):
        return self.get_section(section, {}).get(name, default)

    def set_main_option(self, name, value):
        self.set_section_option(self.main_section, name, value)

    def get_main_option(self, name, default=None):
        return self.get_section_option(self.main_section, name, default)

    def configure_logging(self):
        """Pass the ``"logging"`` section, if any, to
        ``logging.config.dictConfig``."""
        section = self.get_section("logging")
        if section:
            section.setdefault("version", 1)
            section.setdefault("disable_existing_loggers", False)
            try:
                logging.config.dictConfig(section)
            except (ValueError, TypeError, AttributeError, ImportError) as e:
                raise CommandError("Invalid logging section: %s" % e)


def parse_params(text):
    """Parse ``"a=0.5,b=1,gamma=0.25"`` into a dictionary of floats."""
    result = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CommandError(
                "--param expects name=value pairs; got %r" % item
            )
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in PARAM_NAMES:
            raise CommandError(
                "unknown parameter %r; expected one of %s"
                % (name, ", ".join(PARAM_NAMES))
            )
        try:
            result[name] = float(value)
        except ValueError:
            raise CommandError(
                "parameter %s must be a number; got %r" % (name, value)
            )
    return result


def _opt(config, name):
    return getattr(config.cmd_opts, name, None) if config.cmd_opts else None


def _pick(flag, section, name, default):
    # flag > file > default
    if flag is not None:
        return flag
    return section.get(name, default)


class RunConfig(object):
    """Resolved settings for one command invocation.

    Built by :meth:`.RunConfig.from_config`; every value follows the
    precedence command-line flag, then config file, then default.

    """

    def __init__(
        self,
        params,
        truncation=DEFAULT_TRUNCATION,
        transform_truncation=None,
        panels=DEFAULT_PANELS,
        nodes=DEFAULT_NODES_PER_PANEL,
        angular_nodes=DEFAULT_ANGULAR_NODES,
        grid=None,
        signal=None,
        verify=None,
        sweep=None,
    ):
        self.params = params
        self.truncation = truncation
        self.transform_truncation = (
            truncation if transform_truncation is None
            else transform_truncation
        )
        self.panels = panels
        self.nodes = nodes
        self.angular_nodes = angular_nodes
        grid_spec = {
            "start": 0.0,
            "stop": self.transform_truncation,
            "num": DEFAULT_GRID_POINTS,
        }
        grid_spec.update(grid or {})
        self.grid_spec = grid_spec
        self.signal_spec = dict(signal or {"name": "gaussian", "alpha": 0.5})
        self.verify_options = dict(verify or {})
        self.sweep_spec = dict(sweep or {})
        self._validate()

    def _validate(self):
        for name in ("truncation", "transform_truncation"):
            value = getattr(self, name)
            if not value > 0:
                raise CommandError(
                    "%s must be positive; got %r" % (name, value)
                )
        if self.panels < 1:
            raise CommandError("panels must be at least 1")
        if self.nodes < 2:
            raise CommandError("nodes must be at least 2")
        if self.angular_nodes < 2:
            raise CommandError("angular_nodes must be at least 2")
        try:
            self.out_grid
            self.signal
        except DomainError as de:
            raise CommandError(str(de))

    @classmethod
    def from_config(cls, config):
        params = {"a": 0.0, "b": 1.0, "c": 0.0, "d": 0.0, "e": 0.0}
        params["gamma"] = 0.0
        params.update(config.get_section("params", {}))
        for text in util.to_list(_opt(config, "param"), []):
            params.update(parse_params(text))
        unknown = set(params).difference(PARAM_NAMES)
        if unknown:
            raise CommandError(
                "unknown parameter(s) %s; expected one of %s"
                % (", ".join(sorted(unknown)), ", ".join(PARAM_NAMES))
            )
        try:
            qpfb_params = QpfbParams(**params)
        except DomainError as de:
            raise CommandError(str(de))

        quad = config.get_section("quadrature", {})
        try:
            truncation = float(
                _pick(
                    _opt(config, "truncation"),
                    quad,
                    "truncation",
                    DEFAULT_TRUNCATION,
                )
            )
            transform_truncation = _pick(
                _opt(config, "transform_truncation"),
                quad,
                "transform_truncation",
                None,
            )
            if transform_truncation is not None:
                transform_truncation = float(transform_truncation)
            panels = int(
                _pick(_opt(config, "panels"), quad, "panels", DEFAULT_PANELS)
            )
            nodes = int(
                _pick(
                    _opt(config, "nodes"),
                    quad,
                    "nodes",
                    DEFAULT_NODES_PER_PANEL,
                )
            )
            angular_nodes = int(
                quad.get("angular_nodes", DEFAULT_ANGULAR_NODES)
            )
        except (TypeError, ValueError) as e:
            raise CommandError("Invalid quadrature setting: %s" % e)

        return cls(
            qpfb_params,
            truncation=truncation,
            transform_truncation=transform_truncation,
            panels=panels,
            nodes=nodes,
            angular_nodes=angular_nodes,
            grid=config.get_section("grid"),
            signal=config.get_section("signal"),
            verify=config.get_section("verify"),
            sweep=config.get_section("sweep"),
        )

    @util.memoized_property
    def rules(self):
        return DomainRules.build(
            self.params.order,
            self.truncation,
            self.transform_truncation,
            self.panels,
            self.nodes,
        )

    @util.memoized_property
    def translation_rule(self):
        return TranslationRule(self.params.order, self.angular_nodes)

    @util.memoized_property
    def out_grid(self):
        spec = self.grid_spec
        try:
            return RadialGrid.uniform(
                float(spec["stop"]),
                int(spec["num"]),
                start=float(spec["start"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CommandError("Invalid grid section: %s" % e)

    @util.memoized_property
    def signal(self):
        return from_spec(self.signal_spec)

    @property
    def resolution(self):
        return "%dx%d" % (self.panels, self.nodes)

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "truncation": self.truncation,
            "transform_truncation": self.transform_truncation,
            "panels": self.panels,
            "nodes": self.nodes,
            "angular_nodes": self.angular_nodes,
            "resolution": self.resolution,
            "grid": dict(self.grid_spec),
            "signal": dict(self.signal_spec),
        }


class CommandLine(object):
    def __init__(self, prog=None):
        self._generate_args(prog)

    def _generate_args(self, prog):
        def add_options(fn, parser, positional, kwargs):
            kwargs_opts = {
                "signal": (
                    "-s",
                    "--signal",
                    dict(
                        type=str,
                        help="CSV file with columns s,re,im (t,re,im for "
                        "'inverse'); defaults to the configured "
                        "functional signal",
                    ),
                ),
                "suite": (
                    "suite",
                    dict(
                        nargs="?",
                        default="all",
                        help="Verification suite to run (see "
                        "'list_suites'); default 'all'",
                    ),
                ),
            }
            for arg in kwargs:
                if arg in kwargs_opts:
                    args = kwargs_opts[arg]
                    args, kw = args[0:-1], args[-1]
                    parser.add_argument(*args, **kw)

            for arg in positional:
                parser.add_argument(arg)

        common = ArgumentParser(add_help=False)
        common.add_argument(
            "-c",
            "--config",
            type=str,
            default=None,
            help="JSON config file; command-line flags override its values",
        )
        common.add_argument(
            "-p",
            "--param",
            action="append",
            help="Transform parameters, e.g. "
            "--param a=0.5,b=1,c=0,d=0,e=0,gamma=0.5",
        )
        common.add_argument(
            "-R", "--truncation", type=float,
            help="Signal-domain truncation radius (default 12)",
        )
        common.add_argument(
            "--transform-truncation",
            type=float,
            help="Transform-domain truncation radius (default: R)",
        )
        common.add_argument(
            "--panels", type=int, help="Quadrature panels (default 64)"
        )
        common.add_argument(
            "--nodes", type=int, help="Gauss nodes per panel (default 16)"
        )
        common.add_argument(
            "-o", "--out", type=str,
            help="Output file; standard output if omitted",
        )
        common.add_argument(
            "--raiseerr",
            action="store_true",
            help="Raise a full stack trace on error",
        )

        parser = ArgumentParser(
            prog=prog,
            description="Quadratic-phase Fourier-Bessel transform tools. "
            "Settings resolve as command-line flag, then config file, "
            "then built-in default.",
        )
        parser.add_argument(
            "--version", action="version", version="%%(prog)s %s" % __version__
        )
        subparsers = parser.add_subparsers()

        for fn in [getattr(command, n) for n in dir(command)]:
            if (
                inspect.isfunction(fn)
                and fn.__name__[0] != "_"
                and fn.__module__ == "qpfb.command"
            ):
                spec = inspect.getfullargspec(fn)
                if spec.defaults:
                    positional = spec.args[1 : -len(spec.defaults)]
                    kwarg = spec.args[-len(spec.defaults) :]
                else:
                    positional = spec.args[1:]
                    kwarg = []

                # parse first line(s) of helptext without a line break
                help_ = fn.__doc__
                if help_:
                    help_text = []
                    for line in help_.split("\n"):
                        if not line.strip():
                            break
                        else:
                            help_text.append(line.strip())
                else:
                    help_text = ""
                subparser = subparsers.add_parser(
                    fn.__name__,
                    help=" ".join(help_text),
                    parents=[common],
                )
                add_options(fn, subparser, positional, kwarg)
                subparser.set_defaults(cmd=(fn, positional, kwarg))
        self.parser = parser

    def run_cmd(self, config, options):
        fn, positional, kwarg = options.cmd

        try:
            config.configure_logging()
            fn(
                config,
                *[getattr(options, k, None) for k in positional],
                **dict((k, getattr(options, k, None)) for k in kwarg)
            )
        except (CommandError, DomainError) as e:
            if options.raiseerr:
                raise
            else:
                util.err(str(e), getattr(e, "exit_code", 2))

    def main(self, argv=None):
        options = self.parser.parse_args(argv)
        if not hasattr(options, "cmd"):
            self.parser.error("too few arguments")
        else:
            cfg = Config(file_=options.config, cmd_opts=options)
            self.run_cmd(cfg, options)


def main(argv=None, prog=None, **kwargs):
    """The console runner function for qpfb."""

    CommandLine(prog=prog).main(argv=argv)


if __name__ == "__main__":
    main()
