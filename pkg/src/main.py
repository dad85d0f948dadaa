"""CLI entry point for the stem morphism toolkit.

Usage:
    python -m src.main construct --n 13
    python -m src.main search --n 14 --all --jobs 4
    python -m src.main stream --n 123 --length 123000 --certificate cert.json
    python -m src.main check-appendix
"""

from __future__ import annotations

import argparse
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Callable, NamedTuple, Optional, Sequence

from rich.console import Console

from src.alpha_catalog import alpha_checksum, run_alpha_suite, verify_x_isolation
from src.config import (
    LOG_LEVEL,
    SEARCH_CEILING,
    SEARCH_JOBS,
    SEARCH_SPLIT_DEPTH,
    configure_logging,
)
from src.constructor import construct, stem_evidence
from src.errors import NonexistenceError, StemToolkitError
from src.morphism import berstel_test, crochemore_test, from_images, from_seed
from src.run_report import ReportBuilder, render
from src.search import check_reversal_closure, cross_check_appendix, search_seeds
from src.squarefree import find_square
from src.stems import decode_against_stem, decode_stem, stream_stem_word, verify_muller
from src.thue_morse import make_x
from src.types import RunReport, SearchMode
from src.words import parse_transcribed, word

logger = logging.getLogger(__name__)

console = Console()


class ExitCode(IntEnum):
    OK = 0
    VERIFICATION_FAILED = 1
    USAGE = 2
    NONEXISTENCE = 3
    INTERNAL = 4


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_construct(args: argparse.Namespace, report: ReportBuilder) -> None:
    with report.timed("construct"):
        certified = construct(args.n, assembled=args.assembled, data_dir=args.data_dir)
    m = certified.morphism
    report.detail("images", [str(image) for image in m.images])
    report.detail("recipe", certified.recipe)
    report.detail("certificate", certified.certificate)
    report.verdict("berstel", certified.certificate.verdict)
    report.verdict("cyclic_shift_form", m.cyclic_shift_form)
    report.verdict("length", len(m.images[0]) == args.n)


def run_search(args: argparse.Namespace, report: ReportBuilder) -> None:
    mode = SearchMode(args.mode)
    with report.timed("search"):
        outcome = search_seeds(
            args.n, mode, args.budget, jobs=args.jobs, split_depth=args.split_depth
        )
    report.detail("outcome", outcome)
    report.verdict("exhaustive", outcome.exhaustive)
    if mode is SearchMode.ALL and outcome.exhaustive:
        report.verdict("reversal_closed", not check_reversal_closure(outcome.solutions))
    report.detail("proves_nonexistence", outcome.proves_nonexistence)


def run_stream(args: argparse.Namespace, report: ReportBuilder) -> None:
    output = Path(args.output) if args.output else None
    out = output.open("w", encoding="ascii") if output else None
    try:
        with report.timed("stream"):
            factorization, summary = stream_stem_word(
                args.n,
                args.length,
                out.write if out else None,
                window_check=not args.no_window_check,
                data_dir=args.data_dir,
            )
    except BaseException:
        # no partial or empty word is left behind
        if out:
            out.close()
            output.unlink(missing_ok=True)
        raise
    if out:
        out.close()
    if args.certificate:
        Path(args.certificate).write_text(
            summary.certificate.model_dump_json(indent=2), encoding="utf-8"
        )
    report.detail("recipe", summary.recipe)
    report.detail("blocks", summary.blocks)
    report.detail("stem", summary.certificate.stem)
    report.verdict("checker_never_rejected", summary.checker_rejections == 0)
    report.verdict("cyclic_shift_blocks", all(mu.is_cyclic_shift for mu in factorization.block_permutations))
    if summary.window_check_passed is not None:
        report.verdict("window_check", summary.window_check_passed)


def run_verify_morphism(args: argparse.Namespace, report: ReportBuilder) -> None:
    if args.muller is not None:
        with report.timed("verify"):
            muller = verify_muller(args.muller, data_dir=args.data_dir)
        report.detail("stem", muller.stem)
        report.detail("stem_source", muller.stem_source.value)
        report.detail("certificate", muller.certificate)
        report.detail("images", [image.model_dump(mode="json") for image in muller.images])
        if muller.candidates:
            report.detail("candidates", muller.candidates)
        report.verdict("crochemore", muller.certificate.verdict)
        for image in muller.images:
            report.verdict(f"image{image.letter}_decodes", image.decoded)
        report.detail("stem_existence", stem_evidence(args.muller, args.data_dir))
        return

    m = from_seed(word(args.seed)) if args.seed else from_images([word(i) for i in args.images])
    report.detail("images", [str(image) for image in m.images])
    with report.timed("verify"):
        certificates = [crochemore_test(m)]
        if m.uniform and not args.crochemore_only:
            certificates.insert(0, berstel_test(m))
    for certificate in certificates:
        report.detail(certificate.method.value, certificate)
        report.verdict(certificate.method.value, certificate.verdict)


def run_verify_stem(args: argparse.Namespace, report: ReportBuilder) -> None:
    w = parse_transcribed(Path(args.input).read_text(encoding="utf-8"))
    report.detail("length", len(w))
    with report.timed("verify"):
        if args.stem:
            stem = word(args.stem)
            permutations = decode_against_stem(w, stem)
            decoded = permutations is not None
            if decoded:
                report.detail("permutations", [str(mu) for mu in permutations])
        else:
            if args.n is None:
                raise ValueError("verify-stem needs --stem or --n")
            factorization = decode_stem(w, args.n)
            decoded = factorization is not None
            if decoded:
                report.detail("certificate", factorization.to_certificate())
        report.verdict("decodes", decoded)
        if not args.skip_square_check:
            witness = find_square(w)
            if witness is not None:
                report.detail("square", witness)
            report.verdict("square_free", witness is None)


def run_check_alpha(args: argparse.Namespace, report: ReportBuilder) -> None:
    with report.timed("alpha_suite"):
        suite = run_alpha_suite(tuple(args.k))
    report.detail("alpha_checksum", alpha_checksum())
    failures = [
        check.model_dump(mode="json") for item in suite.remark2 for check in item.failures()
    ]
    if failures:
        report.detail("failures", failures)
    for name, passed in suite.verdicts().items():
        report.verdict(name, passed)


def run_check_appendix(args: argparse.Namespace, report: ReportBuilder) -> None:
    with report.timed("check_appendix"):
        result = cross_check_appendix(
            range(args.start, args.stop + 1),
            ceiling=args.ceiling,
            jobs=args.jobs,
            data_dir=args.data_dir,
        )
    report.detail("entries", len(result.entries))
    report.detail("searched", sum(entry.searched for entry in result.entries))
    mismatches = [entry.model_dump(mode="json") for entry in result.entries if not entry.passed]
    if mismatches:
        report.detail("mismatches", mismatches)
    for entry in result.entries:
        report.verdict(f"n={entry.n}", entry.passed)


def run_make_x(args: argparse.Namespace, report: ReportBuilder) -> None:
    bracketed = make_x(args.k, args.occurrence)
    report.detail("r", str(bracketed.r))
    report.detail("x", str(bracketed.x))
    report.detail("x_length", len(bracketed.x))
    report.verdict("bracketed_word", not bracketed.violations())
    report.verdict("x_isolation", verify_x_isolation(bracketed.x))


COMMANDS: dict[str, Callable[[argparse.Namespace, ReportBuilder], None]] = {
    "construct": run_construct,
    "search": run_search,
    "stream": run_stream,
    "verify-morphism": run_verify_morphism,
    "verify-stem": run_verify_stem,
    "check-alpha": run_check_alpha,
    "check-appendix": run_check_appendix,
    "make-x": run_make_x,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    log_group = common.add_mutually_exclusive_group()
    log_group.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    log_group.add_argument("-q", "--quiet", action="store_true", help="Only log errors")
    common.add_argument("--data-dir", help="Fixture directory (default: STEM_DATA_DIR or bundled data)")
    common.add_argument("--format", choices=["text", "json"], default="text", help="Report format")

    parser = argparse.ArgumentParser(
        prog="stem-morphisms",
        description="Square-free cyclic shift morphisms and n-stem factorizations",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("construct", parents=[common], help="Certified n-uniform morphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--assembled", action="store_true", help="Assemble from alpha-words even below 123")

    p = commands.add_parser("search", parents=[common], help="Exhaustive seed search")
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument(
        "--all", dest="mode", action="store_const", const=SearchMode.ALL.value,
        help="All solutions (default)",
    )
    mode.add_argument(
        "--first", dest="mode", action="store_const", const=SearchMode.FIRST.value,
        help="Stop at the first solution",
    )
    p.set_defaults(mode=SearchMode.ALL.value)
    p.add_argument("--jobs", type=int, default=SEARCH_JOBS)
    p.add_argument("--budget", type=int, default=None, help="Node limit; forces one worker")
    p.add_argument("--split-depth", type=int, default=SEARCH_SPLIT_DEPTH)

    p = commands.add_parser("stream", parents=[common], help="Stream a certified square-free word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--certificate", help="Write the stem certificate (JSON) here")
    p.add_argument("--output", help="Write the word itself here")
    p.add_argument("--no-window-check", action="store_true", help="Skip the batch window cross-check")

    p = commands.add_parser("verify-morphism", parents=[common], help="Square-freeness certificates")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--seed", help="f(0) of a cyclic shift morphism")
    source.add_argument("--images", nargs=3, metavar=("F0", "F1", "F2"))
    source.add_argument("--muller", type=int, choices=[20, 21, 22], help="Bundled non-uniform morphism")
    p.add_argument("--crochemore-only", action="store_true")

    p = commands.add_parser("verify-stem", parents=[common], help="Decode a word into stem blocks")
    p.add_argument("--input", required=True, help="File holding the word")
    p.add_argument("--stem", help="Stem to decode against (default: first block)")
    p.add_argument("--n", type=int, help="Block length when no stem is given")
    p.add_argument("--skip-square-check", action="store_true")

    p = commands.add_parser("check-alpha", parents=[common], help="Properties of the alpha-words")
    p.add_argument("--k", type=int, nargs="+", default=[6, 20, 40], help="Thue-Morse parameters for x")

    p = commands.add_parser("check-appendix", parents=[common], help="Certify the appendix seeds")
    p.add_argument("--ceiling", type=int, default=SEARCH_CEILING, help="Regenerate by search up to here")
    p.add_argument("--jobs", type=int, default=SEARCH_JOBS)
    p.add_argument("--start", type=int, default=13)
    p.add_argument("--stop", type=int, default=122)

    p = commands.add_parser("make-x", parents=[common], help="Bracketed square-free word of length 4k-1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--occurrence", type=int, default=0)

    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

class DispatchResult(NamedTuple):
    code: int
    report: Optional[RunReport]
    fmt: str = "text"


def dispatch(argv: Optional[Sequence[str]] = None) -> DispatchResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return DispatchResult(int(exc.code or 0), None)

    if args.verbose:
        configure_logging(logging.DEBUG)
    elif args.quiet:
        configure_logging(logging.ERROR)
    else:
        configure_logging(LOG_LEVEL)

    parameters = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "verbose", "quiet", "format"}
    }
    report = ReportBuilder(args.command, parameters, args.data_dir)
    try:
        COMMANDS[args.command](args, report)
    except NonexistenceError as exc:
        report.detail("error", str(exc))
        return DispatchResult(ExitCode.NONEXISTENCE, report.build(ExitCode.NONEXISTENCE), args.format)
    except StemToolkitError as exc:
        report.detail("error", str(exc))
        if getattr(exc, "context", None):
            report.detail("context", exc.context)
        return DispatchResult(
            ExitCode.VERIFICATION_FAILED, report.build(ExitCode.VERIFICATION_FAILED), args.format
        )
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        return DispatchResult(ExitCode.USAGE, None)
    except Exception:
        logger.exception("internal error while running %s", args.command)
        return DispatchResult(ExitCode.INTERNAL, None)

    built = report.build()
    return DispatchResult(built.exit_code, built, args.format)


def main(argv: Optional[Sequence[str]] = None) -> None:
    result = dispatch(argv)
    if result.report is not None:
        render(result.report, console, result.fmt)
    sys.exit(int(result.code))


if __name__ == "__main__":
    main()
