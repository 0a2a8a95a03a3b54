"""Per-hour design matrices with day-ahead provenance tracking.

Each hour h of the day gets its own design matrix (rows = days). Baseline
columns are the PCA-reduced temperature and GHI at (day, h), month dummies
(January is the reference), a holiday dummy and a weekend dummy. Lag
features index the full hourly series k hours back; lead features clamp at
hour 23 of the same day so no row ever sees day D+1. Every cell records
the hour index of the rawest input that produced it, which makes the
day-ahead audit an exact scan rather than a convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .calendars import CalendarInfo
from .dataset import LoadFrame
from .errors import ArgumentError, ConstraintError, IntegrityError
from .pca import PcaModel, pca_transform

MAX_OFFSET = 24


@dataclass(frozen=True)
class LagLeadSpec:
    """Hour offsets applied to the PCA columns; leads clamp at the day edge."""

    lags: tuple[int, ...] = ()
    leads: tuple[int, ...] = ()
    label: str = ""

    def __post_init__(self):
        lags = tuple(sorted(set(int(k) for k in self.lags)))
        leads = tuple(sorted(set(int(k) for k in self.leads)))
        for k in lags + leads:
            if not 1 <= k <= MAX_OFFSET:
                raise ConstraintError(f"offset {k} outside 1..{MAX_OFFSET}")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "leads", leads)
        if not self.label:
            object.__setattr__(self, "label", spec_label(lags, leads))


def spec_label(lags, leads) -> str:
    parts = []
    if lags:
        parts.append(f"lag{max(lags)}")
    if leads:
        parts.append(f"lead{max(leads)}")
    return "+".join(parts) if parts else "baseline"


def _preset(n_lags: int, n_leads: int) -> LagLeadSpec:
    return LagLeadSpec(lags=tuple(range(1, n_lags + 1)),
                       leads=tuple(range(1, n_leads + 1)))


#: The eleven ablation presets, in report column order. "lagN" includes all
#: hourly offsets 1..N (so "lag1" is the single one-hour lag of each PCA series).
PRESETS: dict[str, LagLeadSpec] = {
    "baseline": _preset(0, 0),
    "lag1": _preset(1, 0),
    "lag2": _preset(2, 0),
    "lead1": _preset(0, 1),
    "lag5": _preset(5, 0),
    "lag1+lead1": _preset(1, 1),
    "lag3": _preset(3, 0),
    "lag2+lead2": _preset(2, 2),
    "lead2": _preset(0, 2),
    "lag3+lead2": _preset(3, 2),
    "lag5+lead2": _preset(5, 2),
}


def get_preset(name: str) -> LagLeadSpec:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ArgumentError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


@dataclass(frozen=True)
class FeatureTable:
    """24 aligned design matrices plus per-cell provenance.

    X[h] is the hour-h matrix (n_days x n_columns); prov[h] holds, for each
    cell, the index into `timestamps` of the rawest input behind it.
    `day_index` maps rows back to days of the originating frame, so slices
    keep their provenance meaningful.
    """

    columns: tuple[str, ...]
    X: np.ndarray                    # (24, n_days, n_columns) float64
    prov: np.ndarray                 # (24, n_days, n_columns) int64 hour index
    day_index: np.ndarray            # (n_days,) day of the originating frame
    timestamps: np.ndarray           # full frame timestamps, datetime64[h]
    spec: LagLeadSpec
    y: np.ndarray | None = None      # (24, n_days) targets when load present
    backfilled: tuple = ()           # (hour, day, column) cells filled at series start

    def __post_init__(self):
        if self.X.shape != (24, len(self.day_index), len(self.columns)):
            raise IntegrityError(f"feature tensor shape {self.X.shape} inconsistent")
        if self.prov.shape != self.X.shape:
            raise IntegrityError("provenance shape mismatch")
        if self.y is not None and self.y.shape != self.X.shape[:2]:
            raise IntegrityError("target shape mismatch")
        for arr in (self.X, self.prov, self.day_index):
            arr.setflags(write=False)
        if self.y is not None:
            self.y.setflags(write=False)

    @property
    def n_days(self) -> int:
        return len(self.day_index)

    @property
    def has_targets(self) -> bool:
        return self.y is not None

    def matrix(self, hour: int) -> np.ndarray:
        return self.X[hour]

    def targets(self, hour: int) -> np.ndarray:
        if self.y is None:
            raise ArgumentError("table has no targets")
        return self.y[hour]

    def select_days(self, rows) -> "FeatureTable":
        """Sub-table over row positions (same day set for all 24 hours)."""
        rows = np.asarray(rows)
        return FeatureTable(
            columns=self.columns, X=self.X[:, rows, :].copy(),
            prov=self.prov[:, rows, :].copy(), day_index=self.day_index[rows].copy(),
            timestamps=self.timestamps, spec=self.spec,
            y=None if self.y is None else self.y[:, rows].copy(),
            backfilled=tuple((h, d, c) for (h, d, c) in self.backfilled
                             if d in set(self.day_index[rows].tolist())))

    def stacked_hours(self) -> np.ndarray:
        """Absolute hour index of every (day, hour) cell, day-major."""
        return (self.day_index[:, None] * 24 + np.arange(24)[None, :]).ravel()

    def stacked_targets(self) -> np.ndarray:
        """Targets in day-major hour order (the stacking order)."""
        if self.y is None:
            raise ArgumentError("table has no targets")
        return self.y.T.ravel()


def _pca_columns(prefix: str, model: PcaModel) -> list[str]:
    return [prefix if j == 0 else f"{prefix}{j + 1}" for j in range(model.n_components)]


def build_features(frame: LoadFrame, calendar: CalendarInfo, pca_temp: PcaModel,
                   pca_ghi: PcaModel, spec: LagLeadSpec) -> FeatureTable:
    """Assemble the 24 per-hour design matrices for a frame.

    The caller must fit the PCA models on training rows only; their
    fit_scope tags exist so downstream checks can verify that. Lags that
    reach before the first timestamp are back-filled with the earliest
    available value and flagged in `backfilled`.
    """
    if calendar.n_days != frame.n_days:
        raise ArgumentError(f"calendar covers {calendar.n_days} days, frame has {frame.n_days}")
    n_days, n_hours = frame.n_days, frame.n_hours

    z_temp = pca_transform(pca_temp, frame.temp)   # (n_hours, k_t)
    z_ghi = pca_transform(pca_ghi, frame.ghi)      # (n_hours, k_g)
    base = np.hstack([z_temp, z_ghi])
    base_names = _pca_columns("pca_temp", pca_temp) + _pca_columns("pca_ghi", pca_ghi)
    n_base = len(base_names)

    columns = list(base_names)
    columns += [f"month_{m:02d}" for m in range(2, 13)]
    columns += ["holiday", "weekend"]
    for k in spec.lags:
        columns += [f"{c}_lag{k}" for c in base_names]
    for k in spec.leads:
        columns += [f"{c}_lead{k}" for c in base_names]

    n_cols = len(columns)
    X = np.empty((24, n_days, n_cols))
    prov = np.empty((24, n_days, n_cols), dtype=np.int64)
    backfilled = []

    month = calendar.month
    month_dummies = np.stack([(month == m).astype(np.float64) for m in range(2, 13)], axis=1)
    holiday = calendar.holiday.astype(np.float64)
    weekend = calendar.weekend.astype(np.float64)
    days = np.arange(n_days)
    day_start = days * 24

    for h in range(24):
        t = day_start + h
        c = 0
        X[h, :, c:c + n_base] = base[t]
        prov[h, :, c:c + n_base] = t[:, None]
        c += n_base
        X[h, :, c:c + 11] = month_dummies
        X[h, :, c + 11] = holiday
        X[h, :, c + 12] = weekend
        prov[h, :, c:c + 13] = day_start[:, None]  # calendar is known in advance
        c += 13
        for k in spec.lags:
            src = t - k
            clipped = np.maximum(src, 0)
            X[h, :, c:c + n_base] = base[clipped]
            prov[h, :, c:c + n_base] = clipped[:, None]
            for d in np.nonzero(src < 0)[0]:
                for j in range(n_base):
                    backfilled.append((h, int(d), columns[c + j]))
            c += n_base
        for k in spec.leads:
            src = day_start + np.minimum(h + k, 23)  # clamp at the day boundary
            X[h, :, c:c + n_base] = base[src]
            prov[h, :, c:c + n_base] = src[:, None]
            c += n_base

    y = None
    if frame.has_load:
        y = frame.load.reshape(n_days, 24).T.copy()

    return FeatureTable(columns=tuple(columns), X=X, prov=prov, day_index=days,
                        timestamps=frame.timestamps, spec=spec, y=y,
                        backfilled=tuple(backfilled))


def audit_day_ahead(table: FeatureTable) -> list[tuple[int, int, str]]:
    """Scan every cell; return (day, hour, column) for each violation.

    A cell for day D violates the information rule when its provenance
    timestamp falls at or after hour 0 of day D+1. Empty list = pass.
    """
    limit = (table.day_index + 1) * 24  # first forbidden hour per row
    bad = table.prov >= limit[None, :, None]
    out = []
    for h, d, c in zip(*np.nonzero(bad)):
        out.append((int(table.day_index[d]), int(h), table.columns[c]))
    out.sort()
    return out


def export_tables(table: FeatureTable, out_dir) -> list[str]:
    """Write the 24 hourly CSVs plus a provenance sidecar; returns paths."""
    import csv
    from pathlib import Path

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for h in range(24):
        p = out_dir / f"hour_{h:02d}.csv"
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh)
            header = ["day"] + (["target"] if table.has_targets else []) + list(table.columns)
            w.writerow(header)
            for d in range(table.n_days):
                row = [int(table.day_index[d])]
                if table.has_targets:
                    row.append(repr(float(table.y[h, d])))
                row += [repr(float(v)) for v in table.X[h, d]]
                w.writerow(row)
        paths.append(str(p))

    sidecar = out_dir / "provenance.json"
    prov_ts = {
        f"hour_{h:02d}": {
            col: [str(table.timestamps[i]) for i in table.prov[h, :, c]]
            for c, col in enumerate(table.columns)
        } for h in range(24)
    }
    sidecar.write_text(json.dumps({
        "format": "loadcast-provenance", "version": 1,
        "spec": {"lags": list(table.spec.lags), "leads": list(table.spec.leads)},
        "backfilled": [list(b) for b in table.backfilled],
        "source_timestamp": prov_ts,
    }, indent=1))
    paths.append(str(sidecar))
    return paths
