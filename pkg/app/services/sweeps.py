#!/usr/bin/env python3
"""
Parameter sweeps and named presets

Grid points are independent, so they are evaluated in a process pool when
more than one worker is configured. Rows always come back in grid order.
"""

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

import numpy as np
import structlog

from app.core.config import settings
from app.core.exceptions import SecrecyBoundsError
from app.models.bounds import AvgConstraint, PeakConstraint, SecrecyBounds
from app.models.channel import WiretapChannel
from app.models.sweep import SweepAxis, SweepConfig, SweepMode, SweepRow
from app.services.bounds_avg import asymptotic_bounds_avg, secrecy_bounds_avg, secrecy_bounds_avg_si
from app.services.bounds_peak import asymptotic_bounds_peak, secrecy_bounds_peak, secrecy_bounds_peak_si
from app.services.channel import make_channel
from app.utils.helpers import build_model, db_to_watts, format_float

logger = structlog.get_logger(__name__)

CSV_COLUMNS = ["axis_value", "lower_raw", "upper_raw", "lower", "upper", "branch", "gap"]

DB_RANGE_AVG = (-20.0, 100.0, 121)
DB_RANGE_PEAK = (-20.0, 80.0, 101)
RATIO_RANGE = (0.1, 1e4, 101)
RATIOS = (10.0, 100.0, 1000.0)


def grid(config: SweepConfig) -> np.ndarray:
    """Axis values; exponents are rounded so that decades land exactly."""
    if config.axis is SweepAxis.RATIO_HB_HE:
        exponents = np.linspace(math.log10(config.start), math.log10(config.stop), config.steps)
        return 10.0 ** np.round(exponents, 12)
    return np.round(np.linspace(config.start, config.stop, config.steps), 12)


def _channel(config: SweepConfig, ratio: float) -> WiretapChannel:
    return make_channel(config.H_B, config.H_B / ratio, config.noise_B, config.noise_E)


def _asymptotic(config: SweepConfig, ch: WiretapChannel, xi: float) -> SecrecyBounds:
    if config.peak_asymptotics:
        limits = asymptotic_bounds_peak(ch, xi / config.peak_to_nominal)
    else:
        limits = asymptotic_bounds_avg(ch)
    lower_raw = limits.lower_inf if limits.lower_inf is not None else math.nan
    return SecrecyBounds.from_raw(lower_raw, limits.upper_inf, None, ch.eavesdropper_dominates())


def evaluate_point(config: SweepConfig, axis_value: float) -> SweepRow:
    """Bounds at one grid point; failures become error rows."""
    try:
        ratio = axis_value if config.axis is SweepAxis.RATIO_HB_HE else config.ratio
        xi = axis_value if config.axis is SweepAxis.XI else config.xi
        ch = _channel(config, ratio)

        if config.mode is SweepMode.ASYMPTOTIC:
            bounds = _asymptotic(config, ch, xi)
        elif config.mode in (SweepMode.AVG, SweepMode.AVG_SI):
            P = db_to_watts(axis_value if config.axis is SweepAxis.P_DB else config.P_db)
            con = build_model(AvgConstraint, xi=xi, P=P)
            bounds = (secrecy_bounds_avg if config.mode is SweepMode.AVG else secrecy_bounds_avg_si)(ch, con)
        else:
            if config.axis is SweepAxis.A_DB:
                A = db_to_watts(axis_value)
                P = A / config.peak_to_nominal
            elif config.axis is SweepAxis.P_DB:
                P = db_to_watts(axis_value)
                A = P * config.peak_to_nominal
            elif config.A_db is not None:
                A = db_to_watts(config.A_db)
                P = A / config.peak_to_nominal
            else:
                P = db_to_watts(config.P_db)
                A = P * config.peak_to_nominal
            con = build_model(PeakConstraint, xi=xi, P=P, A=A)
            bounds = (secrecy_bounds_peak if config.mode is SweepMode.PEAK else secrecy_bounds_peak_si)(ch, con)
    except SecrecyBoundsError as exc:
        logger.warning("sweep_point_failed", axis_value=axis_value, error=exc.code, detail=exc.detail)
        return SweepRow(axis_value=axis_value, series=config.label, error=exc.code)

    lower_raw = None if math.isnan(bounds.lower_raw) else bounds.lower_raw
    return SweepRow(
        axis_value=axis_value,
        lower_raw=lower_raw,
        upper_raw=bounds.upper_raw,
        lower=None if lower_raw is None else bounds.lower,
        upper=bounds.upper,
        branch=bounds.branch_upper.value if bounds.branch_upper else "",
        gap=None if lower_raw is None else bounds.gap,
        series=config.label,
    )


def _evaluate_task(task: Tuple[SweepConfig, float]) -> SweepRow:
    return evaluate_point(*task)


def run_sweep(configs: Iterable[SweepConfig], workers: Optional[int] = None) -> List[SweepRow]:
    """Evaluate every series; rows are returned series by series in grid order."""
    tasks = [(config, float(value)) for config in configs for value in grid(config)]
    workers = max(1, workers or settings.SWEEP_WORKERS)
    logger.info("sweep_started", points=len(tasks), workers=workers)
    if workers == 1:
        rows = [_evaluate_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    failed = sum(1 for row in rows if row.error)
    logger.info("sweep_finished", points=len(rows), failed=failed)
    return rows


def write_csv(rows: List[SweepRow], stream: TextIO, digits: Optional[int] = None) -> None:
    """RFC-4180 CSV with a header row; ``series`` is added for multi-series output."""
    with_series = len({row.series for row in rows}) > 1 or any(row.series for row in rows)
    header = CSV_COLUMNS + (["series"] if with_series else []) + ["error"]
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        record = [format_float(row.axis_value, digits)]
        for name in ("lower_raw", "upper_raw", "lower", "upper"):
            value = getattr(row, name)
            record.append("" if value is None else format_float(value, digits))
        record.append(row.branch)
        record.append("" if row.gap is None else format_float(row.gap, digits))
        if with_series:
            record.append(row.series)
        record.append(row.error)
        writer.writerow(record)


def _series(base: Dict, label: str, **overrides) -> SweepConfig:
    return SweepConfig(**{**base, **overrides, "label": label})


def _fig2() -> List[SweepConfig]:
    start, stop, steps = DB_RANGE_AVG
    base = dict(axis=SweepAxis.P_DB, start=start, stop=stop, steps=steps, mode=SweepMode.AVG, xi=0.3)
    return [_series(base, f"ratio={r:g}", ratio=r) for r in RATIOS]


def _fig3() -> List[SweepConfig]:
    start, stop, steps = RATIO_RANGE
    base = dict(axis=SweepAxis.RATIO_HB_HE, start=start, stop=stop, steps=steps, mode=SweepMode.AVG, xi=0.3)
    return [_series(base, f"P={p:g}dB", P_db=p) for p in (20.0, 30.0, 40.0)]


def _fig4() -> List[SweepConfig]:
    base = dict(axis=SweepAxis.XI, start=0.05, stop=1.0, steps=96, mode=SweepMode.AVG, ratio=1000.0)
    return [_series(base, f"P={p:g}dB", P_db=p) for p in (20.0, 40.0, 60.0)]


def _fig5() -> List[SweepConfig]:
    start, stop, steps = DB_RANGE_AVG
    base = dict(axis=SweepAxis.P_DB, start=start, stop=stop, steps=steps, xi=0.3, ratio=1000.0)
    return [
        _series(base, "signal-dependent", mode=SweepMode.AVG),
        _series(base, "signal-independent", mode=SweepMode.AVG_SI),
    ]


def _fig7() -> List[SweepConfig]:
    start, stop, steps = DB_RANGE_PEAK
    base = dict(axis=SweepAxis.A_DB, start=start, stop=stop, steps=steps, mode=SweepMode.PEAK)
    series = []
    for alpha, xi, peak_to_nominal in ((0.2, 0.3, 1.5), (0.5, 0.5, 1.0)):
        for r in RATIOS:
            series.append(
                _series(base, f"alpha={alpha:g},ratio={r:g}", xi=xi, peak_to_nominal=peak_to_nominal, ratio=r)
            )
    return series


def _fig8() -> List[SweepConfig]:
    start, stop, steps = RATIO_RANGE
    base = dict(
        axis=SweepAxis.RATIO_HB_HE, start=start, stop=stop, steps=steps,
        mode=SweepMode.PEAK, xi=0.3, peak_to_nominal=1.5,
    )
    return [_series(base, f"A={a:g}dB", A_db=a) for a in (20.0, 30.0, 40.0)]


def _fig9() -> List[SweepConfig]:
    start, stop, steps = DB_RANGE_PEAK
    base = dict(
        axis=SweepAxis.A_DB, start=start, stop=stop, steps=steps,
        xi=0.3, peak_to_nominal=1.0, ratio=1000.0,
    )
    return [
        _series(base, "signal-dependent", mode=SweepMode.PEAK),
        _series(base, "signal-independent", mode=SweepMode.PEAK_SI),
    ]


SWEEP_PRESETS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig7": _fig7,
    "fig8": _fig8,
    "fig9": _fig9,
}

PDF_PRESETS = {
    "fig6": {"A": 1e6, "alphas": (0.1, 0.3, 0.5, 0.7, 0.9)},
}

PRESET_HELP = {
    "fig2": "avg constraint vs P in [-20, 100] dB, xi=0.3, ratio in {10,100,1000}",
    "fig3": "avg constraint vs H_B/H_E in [0.1, 1e4], xi=0.3, P in {20,30,40} dB",
    "fig4": "avg constraint vs xi in [0.05, 1], ratio=1000, P in {20,40,60} dB",
    "fig5": "signal-dependent vs signal-independent avg bounds, xi=0.3, ratio=1000",
    "fig6": "maxentropic PDFs, A=1e6 W, alpha in {0.1,0.3,0.5,0.7,0.9}",
    "fig7": "peak constraint vs A in [-20, 80] dB, alpha in {0.2,0.5}, ratio in {10,100,1000}",
    "fig8": "peak constraint vs H_B/H_E, xi=0.3, A/P=1.5, A in {20,30,40} dB",
    "fig9": "signal-dependent vs signal-independent peak bounds, xi=0.3, A/P=1, ratio=1000",
}


def preset_configs(name: str) -> List[SweepConfig]:
    try:
        return SWEEP_PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown sweep preset '{name}'") from None
