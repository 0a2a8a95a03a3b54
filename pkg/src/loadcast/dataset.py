"""Hourly load dataset: ingestion, validation, descriptive statistics.

A frame is a contiguous hourly series of electricity load plus temperature
and global horizontal irradiance from five sites. Load may be absent (the
test year ships exogenous data only); exogenous gaps are treated as data
corruption, never imputed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .calendars import CalendarInfo, infer_calendar
from .errors import ArgumentError, IntegrityError, ParseError, SchemaError

N_SITES = 5

TEMP_COLUMNS = tuple(f"temp_{i}" for i in range(1, N_SITES + 1))
GHI_COLUMNS = tuple(f"ghi_{i}" for i in range(1, N_SITES + 1))
SERIES_NAMES = ("load",) + TEMP_COLUMNS + GHI_COLUMNS

#: logical column -> default CSV header. Either `timestamp` or the
#: year/month/day/hour quadruple must resolve; `load` is optional.
DEFAULT_SCHEMA = {
    "timestamp": "timestamp",
    "year": "year",
    "month": "month",
    "day": "day",
    "hour": "hour",
    "load": "load",
    **{c: c for c in TEMP_COLUMNS},
    **{c: c for c in GHI_COLUMNS},
}


@dataclass(frozen=True)
class LoadFrame:
    """Validated hourly dataset; immutable after construction."""

    timestamps: np.ndarray        # datetime64[h], strictly increasing, 1h step
    temp: np.ndarray              # (n, 5) float64, degC
    ghi: np.ndarray               # (n, 5) float64, W/m^2, >= 0
    load: np.ndarray | None = None  # (n,) float64, absent for test-year frames

    def __post_init__(self):
        ts = np.asarray(self.timestamps).astype("datetime64[h]")
        temp = np.ascontiguousarray(np.asarray(self.temp, dtype=np.float64))
        ghi = np.ascontiguousarray(np.asarray(self.ghi, dtype=np.float64))
        load = self.load
        if load is not None:
            load = np.ascontiguousarray(np.asarray(load, dtype=np.float64))

        n = len(ts)
        if n == 0:
            raise IntegrityError("frame is empty")
        if temp.shape != (n, N_SITES) or ghi.shape != (n, N_SITES):
            raise IntegrityError(
                f"temp/ghi shapes {temp.shape}/{ghi.shape} do not match {n} rows x {N_SITES} sites")
        if load is not None and load.shape != (n,):
            raise IntegrityError(f"load length {load.shape} does not match {n} rows")

        steps = np.diff(ts.astype("int64"))
        bad = np.nonzero(steps != 1)[0]
        if bad.size:
            i = int(bad[0]) + 1
            kind = "duplicate" if steps[bad[0]] <= 0 else "gap before"
            raise IntegrityError(f"{kind} timestamp at row {i} ({ts[i]})")
        if n % 24 != 0:
            raise IntegrityError(f"frame length {n} is not a multiple of 24")
        if int(ts[0].astype("int64")) % 24 != 0:
            raise IntegrityError(f"frame starts at {ts[0]}, not hour 0 of a day")

        if not np.isfinite(temp).all():
            raise IntegrityError("non-finite temperature value (exogenous gaps are not allowed)")
        if not np.isfinite(ghi).all():
            raise IntegrityError("non-finite GHI value (exogenous gaps are not allowed)")
        if (ghi < 0).any():
            raise IntegrityError("negative GHI value")
        if load is not None and not np.isfinite(load).all():
            raise IntegrityError("non-finite load value")

        for arr in (ts, temp, ghi) + ((load,) if load is not None else ()):
            arr.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "temp", temp)
        object.__setattr__(self, "ghi", ghi)
        object.__setattr__(self, "load", load)

    @property
    def n_hours(self) -> int:
        return len(self.timestamps)

    @property
    def n_days(self) -> int:
        return self.n_hours // 24

    @property
    def has_load(self) -> bool:
        return self.load is not None

    def without_load(self) -> "LoadFrame":
        return LoadFrame(self.timestamps, self.temp, self.ghi, None)

    def hour_slice(self, start: int, stop: int) -> "LoadFrame":
        """Sub-frame over hour indices [start, stop); must stay day-aligned."""
        if start % 24 or stop % 24 or not 0 <= start < stop <= self.n_hours:
            raise ArgumentError(f"hour slice [{start}, {stop}) is not day-aligned")
        load = None if self.load is None else self.load[start:stop]
        return LoadFrame(self.timestamps[start:stop], self.temp[start:stop],
                         self.ghi[start:stop], load)


@dataclass(frozen=True)
class DescriptiveStats:
    """Summary of one series over one period (Table-1 style row)."""

    series: str
    period: str
    mean: float
    std: float       # sample, n-1 denominator
    median: float
    min: float
    max: float
    skew: float      # m3 / m2^1.5, biased moments
    kurt: float      # m4 / m2^2 - 3, biased moments


def _resolve_columns(header: list[str], schema: dict[str, str]):
    index = {name: i for i, name in enumerate(header)}
    mapping = dict(DEFAULT_SCHEMA)
    mapping.update(schema or {})

    def find(key):
        col = mapping[key]
        return index.get(col)

    ts_idx = find("timestamp")
    quad_idx = tuple(find(k) for k in ("year", "month", "day", "hour"))
    if ts_idx is None and any(i is None for i in quad_idx):
        raise SchemaError(
            f"no timestamp column: need {mapping['timestamp']!r} or "
            f"{[mapping[k] for k in ('year', 'month', 'day', 'hour')]}")
    series_idx = {}
    for key in TEMP_COLUMNS + GHI_COLUMNS:
        i = find(key)
        if i is None:
            raise SchemaError(f"missing required column {mapping[key]!r} (for {key})")
        series_idx[key] = i
    load_idx = find("load")
    return ts_idx, quad_idx, series_idx, load_idx


def load_csv(path, schema: dict[str, str] | None = None,
             drop_load: bool = False) -> LoadFrame:
    """Read a competition-format CSV into a validated LoadFrame.

    `schema` remaps logical column names to actual headers. Rows are sorted
    by timestamp before validation, so out-of-order files load fine but
    gaps and duplicates raise IntegrityError with the offending row index.
    With `drop_load` the load column is ignored even if present (forecast
    mode must never see test-year load).
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, no header row") from None
        header = [h.strip() for h in header]
        ts_idx, quad_idx, series_idx, load_idx = _resolve_columns(header, schema or {})
        if drop_load:
            load_idx = None

        ts_list, rows = [], []
        value_cols = list(series_idx.values()) + ([load_idx] if load_idx is not None else [])
        for r, row in enumerate(reader):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                if ts_idx is not None:
                    ts = np.datetime64(row[ts_idx].strip(), "h")
                else:
                    y, mo, d, h = (int(float(row[i])) for i in quad_idx)
                    ts = np.datetime64(f"{y:04d}-{mo:02d}-{d:02d}", "D").astype(
                        "datetime64[h]") + h
            except (ValueError, IndexError) as e:
                raise ParseError(f"{path}: row {r}: bad timestamp: {e}") from None
            vals = np.empty(len(value_cols))
            for k, i in enumerate(value_cols):
                try:
                    vals[k] = float(row[i])
                except (ValueError, IndexError):
                    raise ParseError(
                        f"{path}: row {r}, column {header[i] if i < len(header) else i!r}: "
                        f"non-numeric value {row[i] if i < len(row) else '<missing>'!r}") from None
            ts_list.append(ts)
            rows.append(vals)

    if not rows:
        raise IntegrityError(f"{path}: no data rows")
    ts = np.array(ts_list, dtype="datetime64[h]")
    order = np.argsort(ts, kind="stable")
    data = np.asarray(rows)[order]
    ts = ts[order]
    temp = data[:, 0:N_SITES]
    ghi = data[:, N_SITES:2 * N_SITES]
    load = data[:, 2 * N_SITES] if load_idx is not None else None
    return LoadFrame(timestamps=ts, temp=temp, ghi=ghi, load=load)


def write_csv(frame: LoadFrame, path, predictions: np.ndarray | None = None) -> None:
    """Write a frame back out; numeric formatting round-trips exactly.

    With `predictions`, writes a (timestamp, predicted_load) forecast file
    instead of the full frame.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if predictions is not None:
            if len(predictions) != frame.n_hours:
                raise ArgumentError("prediction length does not match frame")
            w.writerow(["timestamp", "predicted_load"])
            for i in range(frame.n_hours):
                w.writerow([str(frame.timestamps[i]), repr(float(predictions[i]))])
            return
        header = ["timestamp"] + (["load"] if frame.has_load else []) \
            + list(TEMP_COLUMNS) + list(GHI_COLUMNS)
        w.writerow(header)
        for i in range(frame.n_hours):
            row = [str(frame.timestamps[i])]
            if frame.has_load:
                row.append(repr(float(frame.load[i])))
            row += [repr(float(v)) for v in frame.temp[i]]
            row += [repr(float(v)) for v in frame.ghi[i]]
            w.writerow(row)


def _series_stats(x: np.ndarray, series: str, period: str) -> DescriptiveStats:
    n = len(x)
    mean = float(np.mean(x))
    d = x - mean
    m2 = float(np.mean(d * d))
    if m2 == 0.0:
        skew = kurt = 0.0  # zero-variance convention
        std = 0.0
    else:
        m3 = float(np.mean(d ** 3))
        m4 = float(np.mean(d ** 4))
        skew = m3 / m2 ** 1.5
        kurt = m4 / (m2 * m2) - 3.0
        std = math.sqrt(m2 * n / (n - 1)) if n > 1 else 0.0
    return DescriptiveStats(series=series, period=period, mean=mean, std=std,
                            median=float(np.median(x)), min=float(np.min(x)),
                            max=float(np.max(x)), skew=skew, kurt=kurt)


def describe(frame: LoadFrame, period: int | None = None,
             calendar: CalendarInfo | None = None) -> dict[str, DescriptiveStats]:
    """Per-series descriptive statistics over one inferred year (or all data).

    `period` is a 1-based year index from the calendar (None = whole frame).
    Std uses the sample (n-1) denominator; skewness and excess kurtosis use
    biased central moments.
    """
    if period is None:
        mask = np.ones(frame.n_hours, dtype=bool)
        label = "all"
    else:
        if calendar is None:
            calendar = infer_calendar(frame)
        day_mask = calendar.year_index == int(period)
        mask = np.repeat(day_mask, 24)
        label = f"year{int(period)}"
    if not mask.any():
        raise ArgumentError(f"period {period!r} selects no rows")

    out = {}
    if frame.has_load:
        out["load"] = _series_stats(frame.load[mask], "load", label)
    for j, name in enumerate(TEMP_COLUMNS):
        out[name] = _series_stats(frame.temp[mask, j], name, label)
    for j, name in enumerate(GHI_COLUMNS):
        out[name] = _series_stats(frame.ghi[mask, j], name, label)
    return out
