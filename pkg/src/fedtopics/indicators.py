"""Macroeconomic indicator helpers: the Taylor rule and crisis-window extremes.

All values are in percent.
"""
from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .corpus import parse_date
from .errors import EmptyWindow, NonPositiveCoefficient, UnparseableDate

__all__ = [
    "INDICATORS",
    "IndicatorSeries",
    "TaylorRuleParams",
    "Extreme",
    "taylor_rate",
    "extreme_summary",
    "load_series_csv",
    "write_summary_csv",
    "parse_window",
]

# indicator -> which extreme a crisis summary reports
INDICATORS = {
    "interest_rate": "min",
    "real_gdp_growth": "min",
    "unemployment": "max",
    "inflation": "min",
}


@dataclass(frozen=True)
class IndicatorSeries:
    name: str
    observations: tuple[tuple[dt.date, float], ...]

    def __post_init__(self):
        if self.name not in INDICATORS:
            raise ValueError(f"unknown indicator {self.name!r}; expected one of {sorted(INDICATORS)}")
        obs = tuple((parse_date(d), float(v)) for d, v in self.observations)
        for d, v in obs:
            if not math.isfinite(v):
                raise ValueError(f"{self.name}: non-finite value on {d}")
        for (a, _), (b, _) in zip(obs, obs[1:]):
            if not a < b:
                raise ValueError(f"{self.name}: dates not strictly increasing at {b}")
        object.__setattr__(self, "observations", obs)


@dataclass(frozen=True)
class TaylorRuleParams:
    pi_t: float
    pi_star: float = 2.0
    r_star: float = 2.0
    y_t: float = 0.0
    y_bar: float = 0.0
    a_pi: float = 0.5
    a_y: float = 0.5


def taylor_rate(p: TaylorRuleParams) -> float:
    """Nominal policy rate ``pi + r* + a_pi (pi - pi*) + a_y (y - y_bar)``."""
    if not p.a_pi > 0:
        raise NonPositiveCoefficient(f"inflation-gap coefficient must be positive, got {p.a_pi}")
    if not p.a_y > 0:
        raise NonPositiveCoefficient(f"output-gap coefficient must be positive, got {p.a_y}")
    return p.pi_t + p.r_star + p.a_pi * (p.pi_t - p.pi_star) + p.a_y * (p.y_t - p.y_bar)


class Extreme(NamedTuple):
    indicator: str
    extreme: str
    value: float
    date: dt.date


def extreme_summary(
    series: Sequence[IndicatorSeries],
    window: tuple[dt.date, dt.date],
) -> list[Extreme]:
    """Minimum inside ``window`` (inclusive) for every indicator except
    unemployment, which reports its maximum. The earliest date wins ties."""
    start, end = parse_date(window[0]), parse_date(window[1])
    rows = []
    for s in series:
        inside = [(d, v) for d, v in s.observations if start <= d <= end]
        if not inside:
            raise EmptyWindow(s.name)
        kind = INDICATORS[s.name]
        if kind == "min":
            d, v = min(inside, key=lambda o: (o[1], o[0]))
        else:
            d, v = min(inside, key=lambda o: (-o[1], o[0]))
        rows.append(Extreme(s.name, kind, v, d))
    return rows


def load_series_csv(name: str, path) -> IndicatorSeries:
    """Read a ``date,value`` CSV (header optional, ISO dates)."""
    obs = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            try:
                d = parse_date(row[0].strip())
            except UnparseableDate:
                if not obs:
                    continue  # header line
                raise
            if row[1].strip() in ("", "."):
                continue  # missing observation
            obs.append((d, float(row[1])))
    obs.sort()
    return IndicatorSeries(name, tuple(obs))


def write_summary_csv(rows: Sequence[Extreme], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["indicator", "extreme", "value", "date"])
        for r in rows:
            out.writerow([r.indicator, r.extreme, f"{r.value:g}", r.date.isoformat()])


def parse_window(text: str) -> tuple[dt.date, dt.date]:
    """``"2007-12-01:2010-06-30"`` -> pair of dates."""
    a, sep, b = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like START:END, got {text!r}")
    start, end = parse_date(a), parse_date(b)
    if end < start:
        raise ValueError("window end precedes its start")
    return start, end
