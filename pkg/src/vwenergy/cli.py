"""
Command line interface.

::

    vwenergy test GROUP_A.csv GROUP_B.csv [options]
    vwenergy simulate [--k 40 --n 100 --sigma 0.1] [options]
    vwenergy mean LANDMARKS.csv

The report (or the mean landmark row) goes to stdout; diagnostics go to
stderr. Exit codes: 0 success, 2 input error, 3 numerical failure,
4 usage error.
"""

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .datagen import DEFAULT_SIGMA, perturb_sample, template
from .dataio import load_grouped_dataset, read_landmark_file, \
    write_landmarks, write_report
from .exceptions import InputError, MeanNotUniqueError
from .resampling import DEFAULT_SEED, ResamplePlan, shape_energy_test
from .shapes import preshapes, vw_extrinsic_mean

log = logging.getLogger("vwenergy")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 4

_METRICS = {"vw": "vw", "vw-squared": "vw_squared", "euclidean": "euclidean"}
# spawn keys of the simulated groups; trial streams use 1-tuples
_DATA_KEYS = ((0xDA7A, 0), (0xDA7A, 1))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _alpha(text):
    value = float(text)
    if value > 1:
        raise argparse.ArgumentTypeError(
            "alpha is a fraction in (0, 1), not a percentage: {}".format(text))
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(
            "alpha must lie in (0, 1): {}".format(text))
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1: {}".format(text))
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _nonneg(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("must be >= 0: {}".format(text))
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=_alpha, default=0.05)
    common.add_argument("--trials", type=_positive, default=1000,
                        help="number of resamples B (default 1000)")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--method", choices=("bootstrap", "permutation"),
                        default="bootstrap")
    common.add_argument("--metric", choices=sorted(_METRICS), default="vw",
                        help="vw: chord distance; vw-squared: its square; "
                             "euclidean: raw landmark coordinates")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=_positive, default=1,
                        help="worker threads; never changes the output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="vwenergy", description=(
        "Two-sample energy tests on planar Kendall shapes."))
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("test", parents=[common],
                       help="test two landmark files for equal shape "
                            "distributions")
    p.add_argument("group_a")
    p.add_argument("group_b")

    p = sub.add_parser("simulate", parents=[common],
                       help="circle-vs-square simulation")
    p.add_argument("--k", type=int, default=40)
    p.add_argument("--n", type=int, default=100,
                   help="observations per group")
    p.add_argument("--sigma", type=_nonneg, default=DEFAULT_SIGMA)
    p.add_argument("--template-a", choices=("circle", "square"),
                   default="circle")
    p.add_argument("--template-b", choices=("circle", "square"),
                   default="square")

    p = sub.add_parser("mean", help="VW extrinsic mean of a landmark file")
    p.add_argument("path")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _plan(args, n1, n2):
    return ResamplePlan(n1=n1, n2=n2, method=args.method, trials=args.trials,
                        seed=args.seed)


def _run_test(args, kads_a, kads_b, **context):
    n1, n2 = len(kads_a), len(kads_b)
    log.info("testing %d vs %d k-ads, %d %s trials", n1, n2, args.trials,
             args.method)
    result = shape_energy_test(kads_a, kads_b, metric=_METRICS[args.metric],
                               plan=_plan(args, n1, n2), alpha=args.alpha,
                               threads=args.threads)
    log.info("T = %.6g, p = %.4g, reject = %s", result.t_observed,
             result.p_value, result.reject)
    return write_report(result, args.format, command=args.command,
                        k=kads_a.shape[1], **context)


def cmd_test(args):
    data = load_grouped_dataset(args.group_a, args.group_b)
    return _run_test(args, data.group_a.observations,
                     data.group_b.observations,
                     group_a=data.names[0], group_b=data.names[1])


def cmd_simulate(args):
    if args.k < 4:
        raise UsageError("--k must be >= 4")
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    groups = []
    for kind, key in zip((args.template_a, args.template_b), _DATA_KEYS):
        rng = np.random.default_rng(np.random.SeedSequence(args.seed,
                                                           spawn_key=key))
        groups.append(perturb_sample(template(kind, args.k), args.sigma,
                                     args.n, rng))
    return _run_test(args, groups[0], groups[1],
                     group_a=args.template_a, group_b=args.template_b,
                     template_a=args.template_a, template_b=args.template_b,
                     sigma=args.sigma, n=args.n)


def cmd_mean(args):
    table = read_landmark_file(args.path)
    mean = vw_extrinsic_mean(preshapes(table.observations))
    log.info("VW mean of %d k-ads (k=%d)", table.n, table.k)
    return write_landmarks(np.column_stack([mean.real, mean.imag])).encode()


_COMMANDS = {"test": cmd_test, "simulate": cmd_simulate, "mean": cmd_mean}


def main(argv=None, stdout=None):
    """Run the CLI; returns the exit code instead of exiting."""
    out = stdout if stdout is not None else sys.stdout.buffer
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("vwenergy: %(message)s"))
    log.addHandler(handler)
    log.propagate = False
    try:
        args = build_parser().parse_args(argv)
        log.setLevel(logging.INFO if args.verbose else logging.WARNING)
        payload = _COMMANDS[args.command](args)
    except UsageError as exc:
        print("vwenergy: usage error: {}".format(exc), file=sys.stderr)
        return EXIT_USAGE
    except MeanNotUniqueError as exc:
        print("vwenergy: numerical failure: {}".format(exc), file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, OSError) as exc:
        print("vwenergy: input error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT
    finally:
        log.removeHandler(handler)
    out.write(payload)
    out.flush()
    return EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
