"""Command line interface: `codim3 run|classify|report|predominant`.

Exit codes: 0 on success, 1 for usage errors, 2 for I/O errors (including unreadable data files),
3 when a classification contradicts itself.
"""

import argparse
import logging
import sys

from datastore import load_database
from errors import DatabaseFormatError, InternalInvariantError
from fields import FieldSpec
from main_routine import classify_path, main_routine
from reports import (
    MIN_M,
    MIN_N,
    PREDOMINANCE_FACTOR,
    csv_report,
    format_predominance_table,
    grid_report,
    load_permissibility,
    predominance_table,
)
from sampler_config import load_sampler_config
from version import __version__

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

CHAR_2_WARNING = (
    "Warning: characteristic 2 realizes fewer classes than characteristic 3; "
    "the reference experiments avoid it"
)

# Command line flag -> SamplerConfig point
SAMPLER_FLAGS = {
    "field_char": "fieldChar",
    "check_in": "checkIn",
    "deg_seq": "degSeq",
    "low_deg": "lowDeg",
    "high_deg": "highDeg",
    "num_terms": "numTerms",
    "mn": "mn",
    "use_n": "useN",
    "max_tries": "maxTries",
    "strict_terms": "strictTerms",
    "max_m": "maxM",
    "max_n": "maxN",
    "logging": "logging",
}


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Exits with status 1 on bad arguments instead of argparse's 2"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def degree_sequence(text: str):
    """Parse `2,3,4` (or `(2,3,4)`) into a list of integers"""
    text = text.strip().strip("()")
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text!r}")


def _add_common(parser):
    parser.add_argument("--root", default=".", help="Directory holding data/ and config/")
    parser.add_argument("--verbose", action="store_true", help="Log diagnostics")


def _add_sampler_flags(parser):
    parser.add_argument("--field-char", type=int, help="0 for the rationals or a prime")
    parser.add_argument("--check-in", type=int, help="Report progress every N ideals")
    parser.add_argument("--deg-seq", type=degree_sequence, help="Generator degrees, e.g. 2,3,4")
    parser.add_argument("--low-deg", type=int)
    parser.add_argument("--high-deg", type=int)
    parser.add_argument("--num-terms", type=int, help="Terms per random form; 0 for dense forms")
    parser.add_argument("--mn", type=int, help="Number of minimal generators, or type with --use-n")
    parser.add_argument("--use-n", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--max-tries", type=int)
    parser.add_argument("--strict-terms", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--max-m", type=int)
    parser.add_argument("--max-n", type=int)
    parser.add_argument("--logging", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--config", help="Configuration file to use instead of config/")


def _add_report_filters(parser):
    parser.add_argument("--bucket", type=int, choices=range(5), help="Only count this bucket")
    parser.add_argument("--min-m", type=int, default=MIN_M)
    parser.add_argument("--min-n", type=int, default=MIN_N)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="codim3", description="Sample and classify Tor algebras of grade 3 perfect ideals"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=ArgumentParser)

    run = verbs.add_parser("run", help="Sample, classify and record ideals")
    run.add_argument("count", type=int, help="Number of iterations")
    run.add_argument("--seed", type=int, help="Seed of the random streams")
    run.add_argument("--workers", type=int, default=1, help="Number of processes")
    _add_sampler_flags(run)
    _add_common(run)

    classify = verbs.add_parser("classify", help="Classify the generator lines of files")
    classify.add_argument("path", help="A file of matrix{{...}} lines, or a directory of them")
    classify.add_argument("--field-char", type=int, default=3)
    _add_common(classify)

    report = verbs.add_parser("report", help="Print the grids of (m,n)-boxes")
    report.add_argument("--m", type=int)
    report.add_argument("--n", type=int)
    report.add_argument("--csv", action="store_true", help="Print one CSV row per class instead")
    report.add_argument("--permissible", help="JSON file listing the permissible cells")
    _add_report_filters(report)
    _add_common(report)

    predominant = verbs.add_parser("predominant", help="Print the predominant class of each box")
    predominant.add_argument("--factor", type=int, default=PREDOMINANCE_FACTOR)
    _add_report_filters(predominant)
    _add_common(predominant)
    return parser


def sampler_overrides(args) -> dict:
    return {
        name: getattr(args, flag)
        for flag, name in SAMPLER_FLAGS.items()
        if getattr(args, flag, None) is not None
    }


def run_command(args) -> int:
    try:
        cfg = load_sampler_config(args.root, sampler_overrides(args), path=args.config)
    except ValueError as e:
        raise UsageError(str(e))
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    if args.count < 0:
        raise UsageError("count must not be negative")
    if cfg.fieldChar == 2:
        print(CHAR_2_WARNING, file=sys.stderr)
    main_routine(args.count, cfg, root=args.root, seed=args.seed, workers=args.workers)
    return EXIT_OK


def classify_command(args) -> int:
    try:
        field = FieldSpec(args.field_char)
    except ValueError as e:
        raise UsageError(str(e))
    results = classify_path(args.path, field)
    problems = 0
    for path, lines in results.items():
        for line in lines:
            if line.error is not None:
                problems += 1
                print(f"{path}:{line.line_number}: error: {line.error}")
                continue
            flag = "  MISMATCH" if line.mismatch else ""
            problems += line.mismatch
            print(f"{path}:{line.line_number}: {line.profile} {line.profile.label}{flag}")
    total = sum(len(lines) for lines in results.values())
    print(f"{total} lines in {len(results)} files, {problems} flagged")
    return EXIT_OK


def report_command(args) -> int:
    db = load_database(args.root)
    if args.csv:
        print(csv_report(db, args.bucket, args.min_m, args.min_n), end="")
        return EXIT_OK
    if (args.m is None) != (args.n is None):
        raise UsageError("--m and --n must be given together")
    permissible = load_permissibility(args.permissible) if args.permissible else None
    if args.m is not None:
        boxes = [(args.m, args.n)]
    else:
        boxes = [(m, n) for m, n in db.boxes(args.bucket) if m >= args.min_m and n >= args.min_n]
    for m, n in boxes:
        for grid in grid_report(db, m, n, bucket=args.bucket, permissible=permissible):
            print(grid.to_text())
    return EXIT_OK


def predominant_command(args) -> int:
    db = load_database(args.root)
    table = predominance_table(
        db, factor=args.factor, min_m=args.min_m, min_n=args.min_n, bucket=args.bucket
    )
    print(format_predominance_table(table), end="")
    return EXIT_OK


COMMANDS = {
    "run": run_command,
    "classify": classify_command,
    "report": report_command,
    "predominant": predominant_command,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.verb](args)
    except UsageError as e:
        print(f"codim3 {args.verb}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DatabaseFormatError) as e:
        print(f"codim3 {args.verb}: {e}", file=sys.stderr)
        return EXIT_IO
    except InternalInvariantError as e:
        log.exception("internal invariant violated")
        print(f"codim3 {args.verb}: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
