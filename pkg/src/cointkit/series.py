"""Annual time series, year-aligned panels, transforms and period statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadTransform,
    DuplicateName,
    EmptyOverlap,
    NonPositiveForLog,
    RangeOutOfBounds,
    TooShort,
)

__all__ = [
    "TimeSeries",
    "Panel",
    "TransformSpec",
    "PeriodStats",
    "align",
    "transform",
    "period_stats",
    "parse_periods",
]


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A named annual series; observation ``i`` belongs to ``start_year + i``."""

    name: str
    start_year: int
    values: np.ndarray
    unit: str = ""

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.ndim != 1 or values.size == 0:
            raise TooShort(f"series {self.name!r} must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(values)):
            raise BadTransform(f"series {self.name!r} contains missing or non-finite values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start_year", int(self.start_year))

    def __len__(self) -> int:
        return self.values.size

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.end_year + 1)

    def window(self, first: int, last: int) -> "TimeSeries":
        """Sub-series covering the inclusive year range ``[first, last]``."""
        if first < self.start_year or last > self.end_year or first > last:
            raise RangeOutOfBounds(
                f"{first}-{last} is outside {self.name!r} ({self.start_year}-{self.end_year})"
            )
        i0 = first - self.start_year
        return TimeSeries(self.name, first, self.values[i0 : i0 + last - first + 1], self.unit)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.name == other.name
            and self.start_year == other.start_year
            and self.unit == other.unit
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Panel:
    """Year-aligned collection of series in a declared variable order."""

    columns: tuple

    def __post_init__(self):
        cols = tuple(self.columns)
        if not cols:
            raise TooShort("a panel needs at least one column")
        names = [c.name for c in cols]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise DuplicateName(f"duplicate series names: {', '.join(dupes)}")
        first = cols[0]
        for c in cols[1:]:
            if c.start_year != first.start_year or len(c) != len(first):
                raise RangeOutOfBounds(
                    f"column {c.name!r} covers {c.start_year}-{c.end_year}, "
                    f"expected {first.start_year}-{first.end_year}"
                )
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_array(cls, data, names: Sequence[str] | None = None, start_year: int = 1):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise TooShort("panel data must be a 2-d array (observations x variables)")
        if names is None:
            names = [f"x{i + 1}" for i in range(data.shape[1])]
        return cls(tuple(TimeSeries(n, start_year, data[:, i]) for i, n in enumerate(names)))

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def order(self) -> list[str]:
        return self.names

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def start_year(self) -> int:
        return self.columns[0].start_year

    @property
    def end_year(self) -> int:
        return self.columns[0].end_year

    @property
    def years(self) -> np.ndarray:
        return self.columns[0].years

    @property
    def data(self) -> np.ndarray:
        """Observations as an ``(n, k)`` float array (a fresh copy)."""
        return np.column_stack([c.values for c in self.columns])

    def __len__(self) -> int:
        return len(self.columns[0])

    def __getitem__(self, name: str) -> TimeSeries:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __eq__(self, other):
        if not isinstance(other, Panel):
            return NotImplemented
        return self.columns == other.columns

    __hash__ = None


_TRANSFORM_RE = re.compile(r"^\s*([a-z\-_]+)\s*(?:[(:]\s*(-?\d+)\s*\)?)?\s*$")

_KIND_ALIASES = {
    "level": "level",
    "levels": "level",
    "log": "log",
    "first-difference": "first-difference",
    "diff": "first-difference",
    "d": "first-difference",
    "lag": "lag",
    "percent-growth": "percent-growth",
    "pct": "percent-growth",
    "growth": "percent-growth",
    "log-difference": "log-difference",
    "logdiff": "log-difference",
    "dlog": "log-difference",
    "index": "index",
}


@dataclass(frozen=True)
class TransformSpec:
    """One transform: ``kind`` plus the lag order or base year where relevant."""

    kind: str = "level"
    arg: int | None = None

    def __post_init__(self):
        kind = _KIND_ALIASES.get(self.kind)
        if kind is None:
            raise BadTransform(f"unknown transform {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "lag":
            if self.arg is None or self.arg < 1:
                raise BadTransform("lag transform needs an order n >= 1")
        elif kind == "index":
            if self.arg is None:
                raise BadTransform("index transform needs a base year")
        elif self.arg is not None:
            raise BadTransform(f"transform {kind!r} takes no argument")

    @classmethod
    def parse(cls, text: str) -> "TransformSpec":
        """Parse ``"level"``, ``"lag(2)"``, ``"lag:2"``, ``"index(2000)"`` and aliases."""
        m = _TRANSFORM_RE.match(text.lower())
        if not m:
            raise BadTransform(f"cannot parse transform {text!r}")
        kind, arg = m.group(1), m.group(2)
        return cls(kind, None if arg is None else int(arg))

    def __str__(self):
        return self.kind if self.arg is None else f"{self.kind}({self.arg})"


def transform(s: TimeSeries, spec: TransformSpec | str) -> TimeSeries:
    """Apply ``spec`` to ``s``; the start year advances by the observations consumed."""
    if isinstance(spec, str):
        spec = TransformSpec.parse(spec)
    x = s.values
    kind = spec.kind
    if kind == "level":
        return s
    if kind in ("log", "log-difference") and np.any(x <= 0):
        raise NonPositiveForLog(f"series {s.name!r} has non-positive values")

    consumed = {"first-difference": 1, "percent-growth": 1, "log-difference": 1}.get(kind, 0)
    if kind == "lag":
        consumed = spec.arg
    if len(s) <= consumed:
        raise TooShort(f"series {s.name!r} has {len(s)} observations, transform {spec} needs more")

    if kind == "log":
        out = np.log(x)
    elif kind == "first-difference":
        out = np.diff(x)
    elif kind == "percent-growth":
        if np.any(x[:-1] == 0):
            raise BadTransform(f"series {s.name!r} has zeros; percent growth undefined")
        out = 100.0 * (x[1:] - x[:-1]) / x[:-1]
    elif kind == "log-difference":
        out = np.diff(np.log(x))
    elif kind == "lag":
        out = x[: len(x) - consumed]
    else:  # index
        if not s.start_year <= spec.arg <= s.end_year:
            raise RangeOutOfBounds(f"base year {spec.arg} outside {s.start_year}-{s.end_year}")
        base = x[spec.arg - s.start_year]
        if base == 0:
            raise BadTransform(f"series {s.name!r} is zero in base year {spec.arg}")
        out = 100.0 * x / base
    return TimeSeries(s.name, s.start_year + consumed, out, s.unit)


def align(series: Iterable[TimeSeries]) -> Panel:
    """Restrict ``series`` to their common year range, keeping input order."""
    series = list(series.columns if isinstance(series, Panel) else series)
    if len(series) < 2:
        raise TooShort("align needs at least two series")
    names = [s.name for s in series]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise DuplicateName(f"duplicate series names: {', '.join(dupes)}")
    first = max(s.start_year for s in series)
    last = min(s.end_year for s in series)
    if first > last:
        raise EmptyOverlap("series year ranges do not overlap")
    return Panel(tuple(s.window(first, last) for s in series))


@dataclass(frozen=True)
class PeriodStats:
    period: str
    mean: float
    median: float
    max: float
    min: float
    n_obs: int = field(default=0)


def parse_periods(text: str) -> list[tuple[int, int]]:
    """``"1976-1990,1991-2001"`` -> ``[(1976, 1990), (1991, 2001)]``; a bare year is a one-year range."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.fullmatch(r"(\d{1,4})\s*(?:-|:|\.\.)\s*(\d{1,4})|(\d{1,4})", chunk)
        if not m:
            raise RangeOutOfBounds(f"cannot parse period {chunk!r}")
        if m.group(3):
            out.append((int(m.group(3)), int(m.group(3))))
        else:
            out.append((int(m.group(1)), int(m.group(2))))
    return out


def period_stats(s: TimeSeries, breakpoints: Sequence[tuple[int, int]]) -> list[PeriodStats]:
    """Mean, median, max and min of ``s`` over each inclusive year range."""
    out = []
    for first, last in breakpoints:
        w = s.window(int(first), int(last)).values
        label = f"{first}-{last}" if first != last else f"{first}"
        # np.median averages the two central order statistics on even counts
        lo, hi = float(np.min(w)), float(np.max(w))
        # summation rounding can push the mean of near-constant data past an extreme
        mean = min(max(float(np.mean(w)), lo), hi)
        out.append(
            PeriodStats(
                label,
                mean,
                float(np.median(w)),
                hi,
                lo,
                int(w.size),
            )
        )
    return out
