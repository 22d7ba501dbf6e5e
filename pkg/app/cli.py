#!/usr/bin/env python3
"""
Command-line interface

    python -m app.cli gain scenario.txt
    python -m app.cli sweep --preset fig2 --out fig2.csv
    python -m app.cli pdf --alpha 0.3 --A 1e6 --points 201
    python -m app.cli tables
    python -m app.cli verify --level quick

Intensities on sweep axes are in dB relative to 1 W: value_dB = 10 log10(W / 1 W).
"""

import argparse
import contextlib
import csv
import math
import sys
from typing import Iterator, List, Optional, TextIO

import numpy as np
import structlog

from app.core.config import settings
from app.core.exceptions import DomainError, InvalidParameterError, SecrecyBoundsError
from app.core.logging import configure_logging
from app.models.channel import NoiseParams
from app.models.sweep import SweepAxis, SweepConfig, SweepMode
from app.services.bounds_peak import maxent_pdf
from app.services.scenario import load_scenario
from app.services.sweeps import PDF_PRESETS, PRESET_HELP, SWEEP_PRESETS, preset_configs, run_sweep, write_csv
from app.services.tables import compute_tables, format_tables
from app.services.verification import VerifyLevel, format_report, run_verification
from app.utils.helpers import build_model, format_float

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    try:
        handle = open(path, "w", newline="")
    except OSError as exc:
        raise InvalidParameterError(f"cannot write output file {path}: {exc.strerror}", {"path": path}) from exc
    with handle:
        yield handle


def cmd_gain(args: argparse.Namespace, out: TextIO) -> int:
    """Report LoS gains and derived channel quantities of a scenario."""
    ch = load_scenario(args.scenario).channel()
    report = [
        ("H_B", format_float(ch.H_B)),
        ("H_E", format_float(ch.H_E)),
        ("H_B/H_E", format_float(ch.gain_ratio)),
        ("M", format_float(ch.M)),
        ("N", format_float(ch.N)),
        ("degenerate_eavesdropper", str(ch.degenerate_eavesdropper).lower()),
        ("eavesdropper_dominates", str(ch.eavesdropper_dominates()).lower()),
    ]
    if args.csv:
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(["quantity", "value"])
        writer.writerows(report)
    else:
        for key, value in report:
            out.write(f"{key:<24} {value}\n")
        if ch.degenerate_eavesdropper:
            out.write("degenerate eavesdropper: Eve is outside the field of view; closed-form secrecy bounds do not apply\n")
    return EXIT_OK


def _manual_sweep(args: argparse.Namespace) -> List[SweepConfig]:
    values = {}
    if args.scenario:
        ch = load_scenario(args.scenario).channel()
        values.update(H_B=ch.H_B, ratio=ch.gain_ratio, noise_B=ch.noise_B, noise_E=ch.noise_E)
    for flag, key in (("xi", "xi"), ("p_db", "P_db"), ("a_db", "A_db"), ("peak_to_nominal", "peak_to_nominal"),
                      ("ratio", "ratio"), ("hb", "H_B")):
        value = getattr(args, flag)
        if value is not None:
            values[key] = value
    for side in ("B", "E"):
        key = f"noise_{side}"
        current = values.get(key, NoiseParams(sigma2=1.0, varsigma2=1.5))
        sigma2 = getattr(args, f"sigma2_{side.lower()}")
        varsigma2 = getattr(args, f"varsigma2_{side.lower()}")
        values[key] = build_model(
            NoiseParams,
            sigma2=current.sigma2 if sigma2 is None else sigma2,
            varsigma2=current.varsigma2 if varsigma2 is None else varsigma2,
        )
    if args.axis is None or args.start is None or args.stop is None:
        raise DomainError("manual sweeps need --axis, --start and --stop (or use --preset)")
    return [
        build_model(
            SweepConfig,
            axis=args.axis,
            start=args.start,
            stop=args.stop,
            steps=args.steps,
            mode=args.mode,
            peak_asymptotics=args.peak_asymptotics,
            **values,
        )
    ]


def cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    """Evaluate bounds over a grid and stream CSV rows."""
    if args.preset:
        if args.preset not in SWEEP_PRESETS:
            raise DomainError(f"preset '{args.preset}' is not a sweep preset (try the pdf command)")
        configs = preset_configs(args.preset)
    else:
        configs = _manual_sweep(args)
    logger.info("sweep_configured", preset=args.preset, series=len(configs))
    write_csv(run_sweep(configs, workers=args.workers), out)
    return EXIT_OK


def cmd_pdf(args: argparse.Namespace, out: TextIO) -> int:
    """Sample maxentropic input densities on a uniform x grid."""
    if args.preset:
        if args.preset not in PDF_PRESETS:
            raise DomainError(f"preset '{args.preset}' is not a pdf preset")
        preset = PDF_PRESETS[args.preset]
        peak, alphas = preset["A"], list(preset["alphas"])
    else:
        peak, alphas = args.A, [args.alpha]
    if args.points < 2:
        raise DomainError("--points must be at least 2", {"points": args.points})

    with_series = len(alphas) > 1
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(["x", "f"] + (["series"] if with_series else []))
    xs = np.linspace(0.0, peak, args.points)
    for alpha in alphas:
        density = maxent_pdf(alpha, peak).eval(xs)
        for x, f in zip(xs, density):
            row = [format_float(x), format_float(f)]
            if with_series:
                row.append(f"alpha={alpha:g}")
            writer.writerow(row)
    return EXIT_OK


def cmd_tables(args: argparse.Namespace, out: TextIO) -> int:
    """Recompute the high-intensity gap tables."""
    cells = compute_tables()
    if args.csv:
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(["table", "alpha", "intensity_db", "ratio", "computed", "reference", "status"])
        for cell in cells:
            writer.writerow([
                cell.table,
                format_float(cell.alpha) if cell.table == "peak" else "",
                format_float(cell.intensity_db),
                format_float(cell.ratio),
                format_float(cell.computed),
                format_float(cell.reference),
                "PASS" if cell.passed else "FAIL",
            ])
    else:
        out.write(format_tables(cells) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    """Run the oracle cross-check suite."""
    results = run_verification(VerifyLevel(args.level), seed=args.seed)
    if args.csv:
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(["check", "status", "value", "tolerance", "detail"])
        for result in results:
            writer.writerow([
                result.name,
                "PASS" if result.passed else "FAIL",
                "" if result.value is None else format_float(result.value),
                "" if result.tolerance is None else format_float(result.tolerance),
                result.detail,
            ])
    else:
        out.write(format_report(results) + "\n")
    return EXIT_OK if all(result.passed for result in results) else EXIT_VERIFY_FAILED


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text} is not a finite number")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="machine-readable CSV output")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="random seed for Monte Carlo checks")
    common.add_argument(
        "--preset",
        choices=sorted(PRESET_HELP),
        help="; ".join(f"{name}: {text}" for name, text in sorted(PRESET_HELP.items())),
    )
    common.add_argument("--workers", type=int, default=None, help="parallel worker processes")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="vlc-secrecy",
        description="Secrecy-capacity bounds for VLC wiretap channels with signal-dependent noise. "
        "Intensities on dB axes are 10*log10(W / 1 W).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gain = subparsers.add_parser("gain", parents=[common], help="LoS gains of a scenario file")
    gain.add_argument("scenario", help="key = number scenario file")
    gain.set_defaults(handler=cmd_gain)

    sweep = subparsers.add_parser("sweep", parents=[common], help="bounds over a parameter grid (CSV)")
    sweep.add_argument("--mode", type=SweepMode, choices=list(SweepMode), default=SweepMode.AVG)
    sweep.add_argument("--axis", type=SweepAxis, choices=list(SweepAxis))
    sweep.add_argument("--start", type=_finite_float)
    sweep.add_argument("--stop", type=_finite_float)
    sweep.add_argument("--steps", type=int, default=101)
    sweep.add_argument("--scenario", help="scenario file supplying gains and noise")
    sweep.add_argument("--xi", type=_finite_float)
    sweep.add_argument("--p-db", dest="p_db", type=_finite_float, help="nominal intensity P in dB")
    sweep.add_argument("--a-db", dest="a_db", type=_finite_float, help="peak intensity A in dB")
    sweep.add_argument("--peak-to-nominal", type=_finite_float, help="A / P")
    sweep.add_argument("--ratio", type=_finite_float, help="H_B / H_E")
    sweep.add_argument("--hb", type=_finite_float, help="main-channel gain H_B")
    sweep.add_argument("--sigma2-b", type=_finite_float)
    sweep.add_argument("--varsigma2-b", type=_finite_float)
    sweep.add_argument("--sigma2-e", type=_finite_float)
    sweep.add_argument("--varsigma2-e", type=_finite_float)
    sweep.add_argument("--peak-asymptotics", action="store_true", help="ASYMPTOTIC mode: peak-constraint limits")
    sweep.set_defaults(handler=cmd_sweep)

    pdf = subparsers.add_parser("pdf", parents=[common], help="maxentropic input PDF samples (CSV)")
    pdf.add_argument("--alpha", type=_finite_float, default=0.5)
    pdf.add_argument("--A", type=_finite_float, default=1e6, help="peak intensity (W)")
    pdf.add_argument("--points", type=int, default=101)
    pdf.set_defaults(handler=cmd_pdf)

    tables = subparsers.add_parser("tables", parents=[common], help="high-intensity gap tables")
    tables.set_defaults(handler=cmd_tables)

    verify = subparsers.add_parser("verify", parents=[common], help="oracle cross-check suite")
    verify.add_argument("--level", choices=[level.value for level in VerifyLevel], default=VerifyLevel.QUICK.value)
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        with _output(args.out) as out:
            return args.handler(args, out)
    except SecrecyBoundsError as exc:
        logger.error("command_failed", command=args.command, error=exc.code, detail=exc.detail)
        sys.stderr.write(f"error: {exc.detail}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
