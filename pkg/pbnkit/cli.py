"""Command line front end.

```
pbnkit validate FILE
pbnkit query (FILE | --builtin NAME) "EXPR" [--method enum|ve] [--force] [--functions FILE] [--trace]
pbnkit joint (FILE | --builtin NAME)
pbnkit independencies (FILE | --builtin NAME)
pbnkit ci-check (FILE | --builtin NAME) "X, Y | Z"
pbnkit axioms [--vars N] [--card K] [--trials T] [--seed S] [--positive] [--n-jobs J]
pbnkit convert --to elvira|native (FILE | --builtin NAME) OUT
```

Results go to stdout, logs and error messages to stderr. The exit code
is 0 on success, otherwise the `exit_code` of the error: 1 for usage
and syntax errors, 2 for semantic and validation errors, 3 for
impossible evidence and 4 when a resource cap is hit. `validate`,
`independencies` and `axioms` also exit with 2 if what they check does
not hold.

"""

import argparse
import logging
import sys

from pbnkit import logger, env
from pbnkit.exceptions import PBNError, UsageError
from pbnkit.network import get_builtin, builtins, validate_network, joint_distribution
from pbnkit.network import parse_statement
from pbnkit.bracket import parse_query, evaluate, load_functions, QueryResult
from pbnkit.ci import check_variable_ci, verify_local_independencies, AxiomSuite
from pbnkit.formats import read_network, write_network


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common():
    common = _ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="only log warnings")
    common.add_argument(
        "--precision", type=int, default=env.precision, help="decimals in numeric output"
    )
    common.add_argument(
        "--format", choices=["table", "tsv"], default="table", help="table layout"
    )
    return common


def _with_source(p, extra=()):
    p.add_argument("--builtin", choices=sorted(builtins), help="use a built-in network")
    p.add_argument(
        "arguments",
        nargs="*",
        metavar="ARG",
        help="network file (unless --builtin is given)" + (", then " + ", ".join(extra) if extra else ""),
    )


def build_parser():
    parser = _ArgumentParser(
        prog="pbnkit", description="Probability bracket queries on discrete Bayesian networks."
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    common = _common()

    p = subparsers.add_parser("validate", parents=[common], help="check a network file")
    _with_source(p)
    p.set_defaults(run=run_validate, extra=0)

    p = subparsers.add_parser("query", parents=[common], help="evaluate a bracket query")
    _with_source(p, ["EXPR"])
    p.add_argument("--method", choices=["enum", "ve"], default="ve")
    p.add_argument(
        "--force", action="store_true", help="evaluate invalid and meaningless brackets literally"
    )
    p.add_argument("--functions", metavar="FILE", help="yaml table of named functions")
    p.add_argument("--trace", action="store_true", help="log variable elimination steps")
    p.set_defaults(run=run_query, extra=1)

    p = subparsers.add_parser("joint", parents=[common], help="print the joint distribution")
    _with_source(p)
    p.set_defaults(run=run_joint, extra=0)

    p = subparsers.add_parser(
        "independencies", parents=[common], help="list and verify local independencies"
    )
    _with_source(p)
    p.add_argument("--tol", type=float, default=env.tolerance)
    p.set_defaults(run=run_independencies, extra=0)

    p = subparsers.add_parser(
        "ci-check", parents=[common], help="check one conditional independence statement"
    )
    _with_source(p, ["STATEMENT"])
    p.add_argument("--tol", type=float, default=env.tolerance)
    p.set_defaults(run=run_ci_check, extra=1)

    p = subparsers.add_parser(
        "axioms", parents=[common], help="property test the independence axioms"
    )
    p.add_argument("--vars", type=int, default=4)
    p.add_argument("--card", type=int, default=2)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--positive", action="store_true", help="strictly positive distributions")
    p.add_argument("--tol", type=float, default=env.tolerance)
    p.add_argument("--n-jobs", type=int, default=env.n_jobs)
    p.set_defaults(run=run_axioms)

    p = subparsers.add_parser("convert", parents=[common], help="convert between formats")
    _with_source(p, ["OUT"])
    p.add_argument("--to", choices=["elvira", "native"], required=True)
    p.set_defaults(run=run_convert, extra=1)

    return parser


def load_source(args):
    """The network and the remaining positional arguments."""
    positionals = list(args.arguments)
    n_file = 0 if args.builtin else 1
    expected = n_file + args.extra

    if len(positionals) != expected:
        if args.builtin and len(positionals) == expected + 1:
            raise UsageError("Give either a network file or --builtin, not both.")
        raise UsageError(
            f"{args.command} expects {expected} positional argument(s), got {len(positionals)}."
        )

    if args.builtin:
        return get_builtin(args.builtin), positionals
    return read_network(positionals[0]), positionals[1:]


def _print(text=""):
    print(text, file=sys.stdout)


def run_validate(args):
    net, _ = load_source(args)
    report = validate_network(net)
    for line in report.lines():
        _print(line)
    return 0 if report.valid else 2


def run_query(args):
    net, (text,) = load_source(args)
    functions = load_functions(args.functions) if args.functions else None

    trace = [] if args.trace else None
    result = evaluate(
        parse_query(text), net, functions=functions, force=args.force, method=args.method, trace=trace
    )

    for step in trace or []:
        logger.info(f"trace: {step}")

    output = result.format(args.precision, style=args.format)
    if not result.report.well_formed:
        if result.is_scalar:
            output += f"\t[{result.report}]"
        else:
            output = f"# {result.report}\n" + output
    _print(output)
    return 0


def run_joint(args):
    net, _ = load_source(args)
    joint = QueryResult(expression=None, report=None, table=joint_distribution(net))
    _print(joint.format(args.precision, style=args.format))
    return 0


def run_independencies(args):
    net, _ = load_source(args)
    reports = verify_local_independencies(net, tol=args.tol)

    if args.format == "tsv":
        _print("statement\tholds\tmax_deviation")
        for r in reports:
            _print(f"{r.statement}\t{str(r.holds).lower()}\t{r.max_deviation:.3e}")
    else:
        for r in reports:
            _print(str(r))

    return 0 if all(r.holds for r in reports) else 2


def run_ci_check(args):
    net, (text,) = load_source(args)
    statement = parse_statement(text)
    report = check_variable_ci(joint_distribution(net), statement, tol=args.tol)

    if args.format == "tsv":
        _print("statement\tholds\tmax_deviation")
        _print(f"{report.statement}\t{str(report.holds).lower()}\t{report.max_deviation:.3e}")
    else:
        _print(str(report))
    return 0


def run_axioms(args):
    if args.vars < 2 or args.card < 1 or args.trials < 0:
        raise UsageError("axioms needs --vars >= 2, --card >= 1 and --trials >= 0.")

    suite = AxiomSuite(
        n_vars=args.vars,
        card=args.card,
        trials=args.trials,
        seed=args.seed,
        positive=args.positive,
        tol=args.tol,
        context={"n_jobs": args.n_jobs},
    )
    summary = suite()

    for line in summary.lines():
        _print(line)
    for trial, label, outcome in summary.violations:
        _print(f"violation\t{outcome.axiom}\ttrial {trial} ({label})\t{outcome.consequent_deviation:.3e}")

    return 0 if not summary.violations else 2


def run_convert(args):
    net, (out,) = load_source(args)
    write_network(net, out, format=args.to)
    logger.info(f"Wrote {net.name} to {out} ({args.to}).")
    return 0


def parse_args(parser, argv):
    """Parse argv, allowing positional arguments after options.

    `convert FILE --to native OUT` leaves OUT unparsed; such leftovers
    are appended to the positional arguments.
    """
    args, extras = parser.parse_known_args(argv)

    unknown = [a for a in extras if a.startswith("-")]
    if unknown or (extras and not hasattr(args, "arguments")):
        raise UsageError(f"unrecognized arguments: {' '.join(unknown or extras)}")

    if extras:
        args.arguments = list(args.arguments) + extras
    return args


def _configure_logging(args):
    if getattr(args, "verbose", False):
        logger.setLevel(logging.DEBUG)
    elif getattr(args, "quiet", False):
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)


def main(argv=None):
    """Run the command line; returns the exit code."""
    parser = build_parser()

    try:
        args = parse_args(parser, argv)
        _configure_logging(args)
        return args.run(args)
    except PBNError as e:
        print(f"pbnkit: error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"pbnkit: error: {e}", file=sys.stderr)
        return UsageError.exit_code
    except ValueError as e:
        print(f"pbnkit: error: {e}", file=sys.stderr)
        return PBNError.exit_code
    except SystemExit as e:
        # --help
        return e.code or 0


def run():
    sys.exit(main())
