"""Score formulas for graph validation, code quality, and whole games.

All arithmetic runs on ``Decimal`` with half-up rounding. The weighted
sums land on exact .5 boundaries often enough (for example 0.35 * 8.30 +
0.35 * 10.0 + 0.30 * 7.70) that binary floats would round the wrong way.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable

from gameforge.engine.validate import ValidationReport
from gameforge.errors import EmptyReport, RangeError

GCS_WEIGHTS = (Decimal("0.3"), Decimal("0.3"), Decimal("0.4"))
GAME_WEIGHTS = (Decimal("0.35"), Decimal("0.35"), Decimal("0.30"))

_QUANTA = {0: Decimal("1"), 1: Decimal("0.1"), 2: Decimal("0.01")}


def _decimal(value: float | int) -> Decimal:
    return Decimal(str(value))


def round_half_up(value: float, places: int = 2) -> float:
    return float(_decimal(value).quantize(_QUANTA[places], rounding=ROUND_HALF_UP))


def _rate(passing: int, total: int) -> float:
    value = Decimal(100 * passing) / Decimal(total)
    return float(value.quantize(_QUANTA[1], rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PcgSuccess:
    """Per-check pass rates over a validation report, in percent."""

    node_rate: float
    param_rate: float
    pin_rate: float

    def to_dict(self) -> dict:
        return {
            "node_rate": self.node_rate,
            "param_rate": self.param_rate,
            "pin_rate": self.pin_rate,
        }


def compute_pcg_success(report: ValidationReport) -> PcgSuccess:
    counts = report.counts()
    total = counts["nodes"]
    if total == 0:
        raise EmptyReport("validation report covers zero nodes")
    return PcgSuccess(
        node_rate=_rate(counts["type_known"], total),
        param_rate=_rate(counts["params_valid"], total),
        pin_rate=_rate(counts["pins_valid"], total),
    )


def merge_pcg_success(reports: Iterable[ValidationReport]) -> PcgSuccess:
    """Pooled rates over many reports, weighting every node equally."""
    total = type_known = params_valid = pins_valid = 0
    for report in reports:
        counts = report.counts()
        total += counts["nodes"]
        type_known += counts["type_known"]
        params_valid += counts["params_valid"]
        pins_valid += counts["pins_valid"]
    if total == 0:
        raise EmptyReport("no nodes across the supplied reports")
    return PcgSuccess(
        node_rate=_rate(type_known, total),
        param_rate=_rate(params_valid, total),
        pin_rate=_rate(pins_valid, total),
    )


def _check_range(name: str, value: float, low: float, high: float) -> None:
    if not low <= value <= high:
        raise RangeError(f"{name}={value} outside [{low}, {high}]")


def compute_gcs(mas: float, mcs: float, iis: float, compiled: bool = True) -> float:
    """Weighted code score; a compile failure zeroes the code-dependent parts."""
    for name, value in (("mas", mas), ("mcs", mcs), ("iis", iis)):
        _check_range(name, value, 0.0, 10.0)
    if not compiled:
        mcs = 0.0
        iis = 0.0
    total = sum(
        w * _decimal(v) for w, v in zip(GCS_WEIGHTS, (mas, mcs, iis))
    )
    return float(total.quantize(_QUANTA[2], rounding=ROUND_HALF_UP))


def aggregate_game_score(scene: float, gameplay: float, visual: float) -> float:
    for name, value in (("scene", scene), ("gameplay", gameplay), ("visual", visual)):
        _check_range(name, value, 0.0, 10.0)
    total = sum(
        w * _decimal(v) for w, v in zip(GAME_WEIGHTS, (scene, gameplay, visual))
    )
    return float(total.quantize(_QUANTA[2], rounding=ROUND_HALF_UP))


def mean_score(values: Iterable[float], places: int = 2) -> float:
    values = list(values)
    if not values:
        raise EmptyReport("mean of zero scores")
    total = sum((_decimal(v) for v in values), Decimal(0))
    mean = total / Decimal(len(values))
    return float(mean.quantize(_QUANTA[places], rounding=ROUND_HALF_UP))
