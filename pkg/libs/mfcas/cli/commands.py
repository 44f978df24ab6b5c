"""
The mfcas command line: batch verification, ad-hoc computations and
inspection of factorization files.

    mfcas verify --suite {ade,fusion,tl,adjunction,bh,all} [--long] [--jobs N]
                 [--json [PATH]] [--seed N] [--timings]
    mfcas compute {qdim,fuse,wenzl,charge,milnor,transpose} ARGS...
    mfcas inspect FILE [--graded]

Exit codes: 0 on success, 1 when a check fails or the input is invalid, 2 on
configuration errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from mfcas import __version__, conf
from mfcas.adecat import bh_transpose, verify_checksums, weighted_potential
from mfcas.adjunction import qdim
from mfcas.algebra.fields import format_rational
from mfcas.cli.report import RunReport, run_checks
from mfcas.cli.suites import SUITES, suite_checks
from mfcas.exceptions import (
    ChecksumMismatch,
    GradingViolation,
    MfcasError,
    ParseError,
    SquareMismatch,
    UnknownEntry,
)
from mfcas.homotopy import bar_homology, fusion_decomposition
from mfcas.jacobi import central_charge, milnor_number
from mfcas.log import get_logger, set_verbosity
from mfcas.mfcore import MatrixFactorization, read_mf
from mfcas.templieb import format_word, in_words, wenzl

logger = get_logger("mfcas.cli")

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG = 0, 1, 2
COMPUTE_KINDS = ("qdim", "fuse", "wenzl", "charge", "milnor", "transpose")
IDENTIFIER = re.compile(r"[A-Za-z_]\w*")


class ConfigurationError(Exception):
    """Invalid options or catalog files: the run cannot start."""


#
# verify
#
def _check_catalog() -> None:
    bad = [name for name, ok in verify_checksums().items() if not ok]
    if bad:
        raise ConfigurationError(
            f"catalog files {bad} in {conf.CATALOG['DATA_DIR']} do not match their checksums"
        )


def cmd_verify(args) -> RunReport:
    """
    Runs a suite. Long checks are reported as skipped unless --long is given.

    Raises:
        ConfigurationError: for an invalid --jobs value or catalog files
            that fail their checksums.
    """
    if args.suite in ("ade", "all"):
        try:
            _check_catalog()
        except (ChecksumMismatch, UnknownEntry, OSError) as e:
            raise ConfigurationError(str(e)) from e

    checks = suite_checks(args.suite, args.seed)
    try:
        results = run_checks(checks, n_jobs=args.jobs, long=bool(args.long))
    except ValueError as e:
        raise ConfigurationError(str(e)) from e
    return RunReport(args.suite, results)


def _json_path(value: str, suite: str):
    if value == "-":
        return None
    if value == "":
        return Path(conf.RESULTS_DIR, f"verify-{suite}.json")
    return Path(value)


def _emit_report(report: RunReport, args) -> None:
    if args.json is not None:
        text = report.to_json(args.timings)
        path = _json_path(args.json, report.suite)
        if path is None:
            sys.stdout.write(text)
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Report written to {path}")
    sys.stdout.write(report.to_text(args.timings))


#
# compute
#
def parse_potential(text: str):
    """A polynomial with the weights making it quasi-homogeneous of degree 2."""
    names = sorted(set(IDENTIFIER.findall(text)))
    if not names:
        raise ParseError(f"no variables in {text!r}")
    return weighted_potential(text, names=tuple(names))


def _integers(values, count: int, kind: str) -> list:
    if len(values) != count:
        raise ParseError(f"{kind} takes {count} integer arguments, got {len(values)}")
    try:
        return [int(v) for v in values]
    except ValueError as e:
        raise ParseError(f"{kind} takes integer arguments: {e}") from e


def _single(values, kind: str) -> str:
    if len(values) != 1:
        raise ParseError(f"{kind} takes one argument, got {len(values)}")
    return values[0]


def format_fusion(summands) -> str:
    return " ⊕ ".join(f"P_{{{m}:{nu}}}" for m, nu in summands) or "0"


def format_tl(f) -> str:
    terms = in_words(f)
    if not terms:
        return "0"
    return " + ".join(f"({c}) {format_word(w)}" for w, c in terms)


def cmd_compute(kind: str, values, at: int = None) -> str:
    """
    The canonical text of one computation:

        qdim FILE          quantum dimensions of a factorization file
        fuse d a l b m     the summands of P_{a:l} (x) P_{b:m}
        wenzl n            p_n in the words of the generators (--at d: q = zeta_2d)
        charge W           central charge
        milnor W           Milnor number
        transpose W        Berglund-Huebsch transpose

    Raises:
        ParseError: for malformed arguments.
        MfcasError, ValueError: when the computation is undefined.
    """
    if kind == "qdim":
        dims = qdim(read_mf(_single(values, kind)))
        return f"qdim_l = {dims.left}\nqdim_r = {dims.right}"
    if kind == "fuse":
        return format_fusion(fusion_decomposition(*_integers(values, 5, kind)))
    if kind == "wenzl":
        (n,) = _integers(values, 1, kind)
        return format_tl(wenzl(n, at))
    if kind == "charge":
        return format_rational(central_charge(parse_potential(_single(values, kind))))
    if kind == "milnor":
        return str(milnor_number(parse_potential(_single(values, kind))))
    if kind == "transpose":
        return str(bh_transpose(parse_potential(_single(values, kind))))
    raise ParseError(f"unknown kind {kind!r}, expected one of {list(COMPUTE_KINDS)}")


#
# inspect
#
def summarize(M: MatrixFactorization) -> list:
    def variables(names):
        return ", ".join(f"{n} ({format_rational(M.ring.weight(n))})" for n in names) or "-"

    H = bar_homology(M)
    lines = [
        f"name: {M.name}",
        f"field: {M.field}",
        f"rank: {M.n0} + {M.n1}",
        f"left: {variables(M.left)}",
        f"right: {variables(M.right)}",
        f"internal: {variables(M.internal)}",
        f"W = {M.W}",
        f"V = {M.V}",
    ]
    if M.grading is None:
        lines.append("grading: none")
    else:
        even = ", ".join(format_rational(v) for v in M.grading.even)
        odd = ", ".join(format_rational(v) for v in M.grading.odd)
        lines.append(f"grading: even [{even}], odd [{odd}]")
    lines.append(f"H = ({H.h0}, {H.h1})")
    return lines


def cmd_inspect(path, graded: bool = False) -> list:
    """
    Loads a factorization file (which re-validates the square identities
    and the grading) and summarizes it.

    Raises:
        ParseError: with the location of malformed content.
        SquareMismatch: with the block and entry of a wrong product.
        GradingViolation: for inconsistent or, with ``graded``, missing gradings.
    """
    M = read_mf(path)
    if graded and M.grading is None:
        raise GradingViolation(f"{path} has no grading", block="grading")
    return ["ok"] + summarize(M)


def _describe(e: MfcasError) -> str:
    where = ""
    if isinstance(e, (SquareMismatch, GradingViolation)) and e.block is not None:
        where = f" in {e.block}" + (f" at entry {e.entry}" if e.entry is not None else "")
    return f"{type(e).__name__}{where}: {e}"


#
# entry point
#
def _non_negative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfcas",
        description="Exact computations and verification suites for matrix factorizations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log progress to the standard error."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a verification suite.")
    verify.add_argument(
        "--suite", choices=sorted(SUITES) + ["all"], default="all", help="Suite to run (default: all)."
    )
    verify.add_argument(
        "--long",
        action="store_true",
        default=bool(conf.GENERAL["LONG_CHECKS"]),
        help="Include long checks (default: MFCAS_LONG).",
    )
    verify.add_argument(
        "--jobs",
        type=int,
        default=conf.GENERAL["N_JOBS"],
        help=f"Worker processes; negative values count from the CPU total (default: {conf.GENERAL['N_JOBS']}).",
    )
    verify.add_argument(
        "--json",
        nargs="?",
        const="",
        default=None,
        metavar="PATH",
        help="Write the JSON report to PATH ('-' for the standard output; "
        "without PATH it goes to the results directory).",
    )
    verify.add_argument(
        "--seed",
        type=_non_negative,
        default=conf.GENERAL["RANDOM_SEED"],
        help=f"Seed of the randomized checks (default: {conf.GENERAL['RANDOM_SEED']}).",
    )
    verify.add_argument(
        "--timings", action="store_true", help="Add the elapsed time of every check to the reports."
    )

    compute = commands.add_parser("compute", help="Print one exact result.")
    compute.add_argument("kind", choices=COMPUTE_KINDS)
    compute.add_argument("values", nargs="+", metavar="ARG")
    compute.add_argument(
        "--at", type=int, default=None, metavar="D", help="Evaluate at q = zeta_2D (wenzl only)."
    )

    inspect = commands.add_parser("inspect", help="Validate and summarize a factorization file.")
    inspect.add_argument("path", type=Path)
    inspect.add_argument(
        "--graded", action="store_true", help="Require the file to carry a grading."
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    set_verbosity(args.verbose)

    if args.command == "verify":
        try:
            report = cmd_verify(args)
        except ConfigurationError as e:
            print(f"configuration error: {e}", file=sys.stderr)
            return EXIT_CONFIG
        _emit_report(report, args)
        return report.exit_code

    try:
        if args.command == "compute":
            lines = [cmd_compute(args.kind, args.values, args.at)]
        else:
            lines = cmd_inspect(args.path, args.graded)
    except MfcasError as e:
        print(_describe(e), file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    print("\n".join(lines))
    return EXIT_OK
