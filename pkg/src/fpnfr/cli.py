"""Command-line entry point: ``fpnfr <command> ...``.

Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 wizard
abort, 4 internal error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import replace
from enum import IntEnum
from pathlib import Path
from typing import Sequence

from fpnfr import __version__
from fpnfr.adjustment import PreconditionError, ProfileMismatchError, estimate
from fpnfr.analysis import CalibrationError, Model, Vary, calibrate, fp_bounds, one_way_sensitivity, parse_factor, tornado
from fpnfr.counting import compute_ufp
from fpnfr.documents import DocumentError, dump_project, parse_project_file, parse_records_file, resolve_profile
from fpnfr.model import DEFAULT_PROFILE, NfrId, Project, ValidationError, WeightProfile
from fpnfr.render import (
    FORMATS,
    render_bounds,
    render_calibration,
    render_csv,
    render_mapping,
    render_report,
    render_rubric,
    render_sensitivity,
    render_ufp,
)
from fpnfr.rubric import DEFAULT_THRESHOLD, default_mapping, load_rubrics
from fpnfr.wizard import WizardAbort, run_wizard

logger = logging.getLogger("fpnfr")


class ExitCode(IntEnum):
    OK = 0
    VALIDATION = 1
    PARSE = 2
    WIZARD_ABORT = 3
    INTERNAL = 4


class CliError(Exception):
    def __init__(self, message: str, code: ExitCode):
        super().__init__(message)
        self.code = code


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", help=f"weight profile name or JSON file (default: the project's, else {DEFAULT_PROFILE})")
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")
    common.add_argument("--strict", action="store_true", help="reject unknown fields in input documents")
    common.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD, help="consistency lint threshold (default: 2)")
    common.add_argument("--out", type=Path, help="write output to FILE instead of stdout")
    common.add_argument("--rubrics", type=Path, help="rubric override file")
    common.add_argument(
        "--decimal-strings", action="store_true", help="emit JSON decimals as strings rather than numbers"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="fpnfr", description="Function point sizing with NFR-extended adjustment.")
    parser.add_argument("--version", action="version", version=f"fpnfr {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="unadjusted function points only")
    p.add_argument("project", type=Path)

    p = sub.add_parser("estimate", parents=[common], help="full classic vs extended estimate")
    p.add_argument("project", type=Path, nargs="?")
    p.add_argument("--dir", type=Path, help="estimate every *.json project in DIR into one CSV")

    p = sub.add_parser("wizard", parents=[common], help="enter a project interactively")
    p.add_argument("--name", default="untitled", help="project name")

    p = sub.add_parser("rubric", parents=[common], help="print the DI guideline table for an NFR")
    p.add_argument("nfr", choices=[n.value for n in NfrId])

    sub.add_parser("mapping", parents=[common], help="print the NFR -> GSC mapping")

    p = sub.add_parser("sensitivity", parents=[common], help="one-way sensitivity of extended FP to ratings")
    p.add_argument("project", type=Path)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--factor", help="GSC or NFR name (prefix gsc: or nfr: for 'performance')")
    group.add_argument("--tornado", action="store_true", help="all 21 factors, widest swing first")

    p = sub.add_parser("bounds", parents=[common], help="extended FP with ratings forced to 0 and 5")
    p.add_argument("project", type=Path)
    p.add_argument("--vary", choices=[v.value for v in Vary], default="all")

    p = sub.add_parser("calibrate", parents=[common], help="fit an effort model to historical actuals")
    p.add_argument("--records", type=Path, required=True)
    p.add_argument("--model", choices=[m.value for m in Model], default="linear")
    p.add_argument("--pred-level", type=float, default=0.25, help="PRED(q) threshold (default: 0.25)")
    return parser


def _load_project(path: Path, args: argparse.Namespace) -> Project:
    try:
        return parse_project_file(path, strict=args.strict)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", ExitCode.PARSE) from None


def _profile_for(project: Project, args: argparse.Namespace) -> tuple[Project, WeightProfile]:
    """An explicit --profile overrides the one the project names."""
    profile = resolve_profile(args.profile or project.weight_profile_name)
    if args.profile:
        project = replace(project, weight_profile_name=profile.name)
    return project, profile


def _emit(text: str, args: argparse.Namespace) -> None:
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _cmd_count(args: argparse.Namespace) -> ExitCode:
    project, profile = _profile_for(_load_project(args.project, args), args)
    _emit(render_ufp(project.name, compute_ufp(project.inventory, profile), args.format, decimal_strings=args.decimal_strings), args)
    return ExitCode.OK


def _estimate_one(path: Path, args: argparse.Namespace):
    project, profile = _profile_for(_load_project(path, args), args)
    return estimate(project, profile, threshold=args.threshold)


def _cmd_estimate(args: argparse.Namespace) -> ExitCode:
    if (args.project is None) == (args.dir is None):
        raise CliError("give exactly one of PROJECT or --dir", ExitCode.PARSE)
    if args.project is not None:
        report = _estimate_one(args.project, args)
        _emit(render_report(report, args.format, decimal_strings=args.decimal_strings), args)
        return ExitCode.OK

    reports, code = [], ExitCode.OK
    for path in sorted(args.dir.glob("*.json")):
        try:
            reports.append(_estimate_one(path, args))
        except Exception as exc:  # noqa: BLE001 - every per-file failure is reported and skipped
            failure = _classify(exc)
            print(f"fpnfr: skipping {path.name}: {exc}", file=sys.stderr)
            code = max(code, failure)
    _emit(render_csv(reports), args)
    return code


def _cmd_wizard(args: argparse.Namespace) -> ExitCode:
    project = run_wizard(
        sys.stdin,
        sys.stdout if args.out else sys.stderr,
        load_rubrics(args.rubrics),
        name=args.name,
        weight_profile=args.profile or DEFAULT_PROFILE,
    )
    _emit(dump_project(project), args)
    return ExitCode.OK


def _cmd_rubric(args: argparse.Namespace) -> ExitCode:
    _emit(render_rubric(load_rubrics(args.rubrics), NfrId(args.nfr), args.format), args)
    return ExitCode.OK


def _cmd_mapping(args: argparse.Namespace) -> ExitCode:
    _emit(render_mapping(default_mapping(), args.format), args)
    return ExitCode.OK


def _cmd_sensitivity(args: argparse.Namespace) -> ExitCode:
    project, profile = _profile_for(_load_project(args.project, args), args)
    if args.tornado:
        results = tornado(project, profile)
    else:
        try:
            factor = parse_factor(args.factor)
        except ValueError as exc:
            raise CliError(str(exc), ExitCode.PARSE) from None
        results = [one_way_sensitivity(project, profile, factor)]
    _emit(render_sensitivity(results, args.format, decimal_strings=args.decimal_strings), args)
    return ExitCode.OK


def _cmd_bounds(args: argparse.Namespace) -> ExitCode:
    project, profile = _profile_for(_load_project(args.project, args), args)
    bounds = fp_bounds(project, profile, Vary(args.vary))
    _emit(render_bounds(project.name, args.vary, bounds, args.format, decimal_strings=args.decimal_strings), args)
    return ExitCode.OK


def _cmd_calibrate(args: argparse.Namespace) -> ExitCode:
    try:
        records = parse_records_file(args.records, strict=args.strict)
    except OSError as exc:
        raise CliError(f"cannot read {args.records}: {exc.strerror}", ExitCode.PARSE) from None
    profile = resolve_profile(args.profile or DEFAULT_PROFILE)
    result = calibrate(records, profile, Model(args.model), pred_level=args.pred_level)
    _emit(render_calibration(result, args.format, decimal_strings=args.decimal_strings), args)
    return ExitCode.OK


COMMANDS = {
    "count": _cmd_count,
    "estimate": _cmd_estimate,
    "wizard": _cmd_wizard,
    "rubric": _cmd_rubric,
    "mapping": _cmd_mapping,
    "sensitivity": _cmd_sensitivity,
    "bounds": _cmd_bounds,
    "calibrate": _cmd_calibrate,
}


def _classify(exc: BaseException) -> ExitCode:
    if isinstance(exc, CliError):
        return exc.code
    if isinstance(exc, DocumentError):
        return ExitCode.PARSE
    if isinstance(exc, (ValidationError, ProfileMismatchError, PreconditionError, CalibrationError)):
        return ExitCode.VALIDATION
    if isinstance(exc, WizardAbort):
        return ExitCode.WIZARD_ABORT
    return ExitCode.INTERNAL


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="fpnfr: %(levelname)s: %(message)s")
    try:
        return int(COMMANDS[args.command](args))
    except Exception as exc:  # noqa: BLE001
        code = _classify(exc)
        if code is ExitCode.INTERNAL:
            logger.exception("internal error")
        elif isinstance(exc, ValidationError):
            for v in exc.violations:
                print(f"fpnfr: {v}", file=sys.stderr)
        else:
            print(f"fpnfr: {exc}", file=sys.stderr)
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
