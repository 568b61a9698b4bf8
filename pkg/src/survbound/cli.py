# Author: Hauxu Yu

# A module for the command-line interface
# survbound {moments,bounds,exact,envelope,composite,figure} [options]
# Exit codes: 0 success, 1 usage error, 2 invalid input, 3 computation failed

import argparse
import logging
import sys

from . import run_bounds, run_composite, run_envelope, run_exact, run_figure, run_moments
from .errors import InputError, SpecFileError, SurvBoundError
from .figures import FIGURES
from .output import write_frame
from .params import Params

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_COMPUTATION = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """
    An argument parser that reports usage errors with exit code 1.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError("{}: error: {}".format(self.prog, message))


def _orders(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("orders must be comma-separated integers, got '{}'".format(text))


def build_parser():
    parser = ArgumentParser(prog="survbound",
                            description="Rigorous bounds on the survival amplitude from energy moments.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    parser.add_argument("-q", "--quiet", action="store_true", help="log errors only")

    common = ArgumentParser(add_help=False)
    common.add_argument("--spec", help="distribution spec file (JSON) or bundled spec name")
    common.add_argument("--order", type=_orders, default=None, help="even orders, e.g. 2,4,6,8")
    common.add_argument("--t-max", type=float, default=None, help="time horizon in units of hbar over the distribution scale")
    common.add_argument("--grid", type=int, default=None, help="number of time samples")
    common.add_argument("--cutoff", type=float, default=None, help="fixed energy cut-off c")
    common.add_argument("--c-grid", type=int, default=None, help="number of cut-offs of an envelope sweep")
    common.add_argument("--out", default=None, help="output file (figure: output directory)")
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="output format")
    common.add_argument("--renormalize", action="store_true", help="rescale tabulated densities far from unit weight")
    common.add_argument("--progress", action="store_true", help="show progress bars")

    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.add_parser("moments", parents=[common], help="energy, correlation and edge moments")
    sub.add_parser("bounds", parents=[common], help="bounds without cut-off, or with --cutoff")
    sub.add_parser("exact", parents=[common], help="exact survival amplitude")
    sub.add_parser("envelope", parents=[common], help="envelopes over the cut-off")
    sub.add_parser("composite", parents=[common], help="best lower and upper bounds on |A(t)|")
    fig = sub.add_parser("figure", parents=[common], help="datasets of the reference figures")
    fig.add_argument("name", help="one of " + ", ".join(sorted(FIGURES)))
    return parser


def params_from_args(args):
    """
    A function to build the Params of a run from parsed arguments.
    """

    params = Params()
    params.command = args.command
    params.spec_path = args.spec
    if args.order is not None:
        params.orders = args.order
    if args.t_max is not None:
        params.t_max = args.t_max
    if args.grid is not None:
        params.grid_size = args.grid
    if args.c_grid is not None:
        params.c_grid_size = args.c_grid
    params.cutoff = args.cutoff
    params.output = args.out
    params.output_format = args.format
    params.renormalize = args.renormalize
    params.show_progress = args.progress
    params.check()
    return params


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("survbound").setLevel(level)


def cmd_moments(params):
    write_frame(run_moments(params), params.output, params.output_format)


def cmd_bounds(params):
    write_frame(run_bounds(params), params.output, params.output_format)


def cmd_exact(params):
    write_frame(run_exact(params), params.output, params.output_format)


def cmd_envelope(params):
    write_frame(run_envelope(params), params.output, params.output_format)


def cmd_composite(params):
    write_frame(run_composite(params), params.output, params.output_format)


def cmd_figure(name, params):
    """
    A function to write the dataset of the named figure under params.output.
    """

    return run_figure(name, params)


COMMANDS = {
    "moments": cmd_moments,
    "bounds": cmd_bounds,
    "exact": cmd_exact,
    "envelope": cmd_envelope,
    "composite": cmd_composite,
}


def main(argv=None):
    """
    Entry point of the survbound command. Returns the exit code.
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        sys.stderr.write(str(err) + "\n")
        return EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose, args.quiet)
    try:
        params = params_from_args(args)
        logger.debug("Parameters:\n%s", params)
        if params.command == "figure":
            cmd_figure(args.name, params)
        else:
            if params.spec_path is None:
                raise SpecFileError("The {} command needs --spec".format(params.command), field="spec")
            COMMANDS[params.command](params)
    except SurvBoundError as err:
        logger.error("%s", err)
        return err.exit_code
    except OSError as err:
        logger.error("%s", err)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
