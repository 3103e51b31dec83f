import argparse
import os

import toml
import yaml
from munch import Munch

from trilat.errors import InputError

COMMANDS = ("validate", "invariants", "compare", "enumerate", "verify", "subdivide")


def get_config():
    """
    The configuration parser for the trilat commands.

    Commands:
        validate PATH               parse and validate a triangulation file
        invariants PATH             print the invariant record as canonical JSON
        compare PATH_A PATH_B       isomorphic | distinguished | indistinguishable-by-fingerprint
        enumerate --t-max N         canonical codes of every class with t <= N
        verify [PATH] [--corpus N]  run the property suite, on a file or on the corpus
        subdivide PATH K            write the K-fold subdivision in the file format

    Shared parameters:
        --mirror                    identify a triangulation with its mirror image
        --format {json,text}        report format on stdout
        --workers N                 processes for corpus runs (default: $TRILAT_WORKERS or 1)
        --verbosity LEVEL           absl logging verbosity
        --config FILE               YAML or TOML file with overrides
    """
    parser = argparse.ArgumentParser(
        prog="trilat", description="lattice invariants of non-negatively curved triangulations of the sphere",
        formatter_class=argparse.RawDescriptionHelpFormatter)

    parser.add_argument("--mirror", action="store_true", default=False,
                        help="quotient canonical codes by orientation reversal")
    parser.add_argument("--format", type=str, default="json", choices=["json", "text"],
                        help="report format on stdout")
    parser.add_argument("--workers", type=int, default=None,
                        help="number of worker processes; by default $TRILAT_WORKERS or 1")
    parser.add_argument("--verbosity", type=str, default="warning",
                        choices=["debug", "info", "warning", "error"], help="logging verbosity")
    parser.add_argument("--config", type=str, default=None, help="YAML or TOML file whose keys override defaults")
    parser.add_argument("--norm_bound", type=int, default=None, help="norm bound of lattice fingerprints")

    sub = parser.add_subparsers(dest="command")
    p = sub.add_parser("validate", help="parse and validate a triangulation file")
    p.add_argument("paths", nargs=1)
    p = sub.add_parser("invariants", help="invariant record of a triangulation file")
    p.add_argument("paths", nargs=1)
    p = sub.add_parser("compare", help="compare two triangulation files")
    p.add_argument("paths", nargs=2)
    p = sub.add_parser("enumerate", help="enumerate all classes up to a size")
    p.add_argument("--t-max", dest="t_max", type=int, required=True)
    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("paths", nargs="?")
    p.add_argument("--corpus", dest="t_max", type=int, default=None,
                   help="verify every class with t <= N instead of a file")
    p.add_argument("--deep", action="store_true", default=False, help="also run the gluing search and dumps")
    p.add_argument("--corrupt-lift", dest="corrupt_lift", action="store_true", default=False,
                   help="test mode: corrupt one entry of the lift table")
    p = sub.add_parser("subdivide", help="write the K-fold subdivision")
    p.add_argument("paths", nargs=1)
    p.add_argument("k", type=int)
    return parser


class RunConfig:
    command = None
    paths = ()
    t_max = None
    k = None
    mirror = False
    output_format = "json"
    deep = False
    corrupt_lift = False
    workers = 1
    verbosity = "warning"
    norm_bound = 2

    def __init__(self, **kwargs):
        for k, v in kwargs.items():
            setattr(self, k, v)

    def validate(self):
        """
        Raises:
          ValueError: an option is out of range or missing for the command.
        """
        if self.command not in COMMANDS:
            raise ValueError("unknown command %r" % self.command)
        if self.command == "enumerate" and (self.t_max is None or self.t_max < 2):
            raise ValueError("enumerate needs --t-max >= 2")
        if self.command == "verify" and not self.paths and self.t_max is None:
            raise ValueError("verify needs a path or --corpus N")
        if self.command == "verify" and self.paths and self.t_max is not None:
            raise ValueError("verify takes a path or --corpus, not both")
        if self.command == "subdivide" and (self.k is None or self.k < 1):
            raise ValueError("subdivide needs K >= 1")
        if self.workers < 1:
            raise ValueError("workers must be positive, got %r" % self.workers)
        if self.norm_bound < 1:
            raise ValueError("norm_bound must be positive, got %r" % self.norm_bound)
        if self.output_format not in ("json", "text"):
            raise ValueError("format must be json or text")
        return self


def load_config_file(path) -> Munch:
    """
    Raises:
      InputError: unreadable file or unknown extension.
    """
    ext = os.path.splitext(path)[1].lower()
    try:
        with open(path, encoding="utf-8") as f:
            if ext in (".yaml", ".yml"):
                data = yaml.safe_load(f) or {}
            elif ext == ".toml":
                data = toml.load(f)
            else:
                raise InputError("config file must be .yaml, .yml or .toml: %s" % path)
    except OSError as exc:
        raise InputError("cannot read config file %s: %s" % (path, exc))
    except (yaml.YAMLError, toml.TomlDecodeError) as exc:
        raise InputError("cannot parse config file %s: %s" % (path, exc))
    if not isinstance(data, dict):
        raise InputError("config file %s does not hold a mapping" % path)
    return Munch.fromDict(data)


def make_run_config(args, environ=None) -> RunConfig:
    """RunConfig from parsed arguments; precedence: command line, config file, environment, defaults."""
    environ = os.environ if environ is None else environ
    values = {}
    if environ.get("TRILAT_WORKERS"):
        try:
            values["workers"] = int(environ["TRILAT_WORKERS"])
        except ValueError:
            raise ValueError("TRILAT_WORKERS must be an integer, got %r" % environ["TRILAT_WORKERS"])
    if args.config:
        overrides = load_config_file(args.config)
        for key in overrides:
            if not hasattr(RunConfig, key):
                raise ValueError("unknown configuration key %r" % key)
        values.update(overrides)
    values["command"] = args.command
    paths = getattr(args, "paths", None)
    if isinstance(paths, str):
        paths = [paths]
    values["paths"] = tuple(paths or ())
    for key in ("t_max", "k"):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    for key in ("deep", "corrupt_lift"):
        if getattr(args, key, False):
            values[key] = True
    if args.mirror:
        values["mirror"] = True
    if args.workers is not None:
        values["workers"] = args.workers
    if args.norm_bound is not None:
        values["norm_bound"] = args.norm_bound
    if args.format != "json" or "output_format" not in values:
        values["output_format"] = args.format
    if args.verbosity != "warning" or "verbosity" not in values:
        values["verbosity"] = args.verbosity
    return RunConfig(**values).validate()
