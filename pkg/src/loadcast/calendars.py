"""Calendar inference from an anchored day count.

The competition files carry no trustworthy dates, but the first training
day is known to be January 1 of a leap year starting on a Wednesday, which
pins it to 2020-01-01. Dates, weekdays, weekend flags and US federal
holiday flags are therefore assigned by counting days from a configurable
anchor date rather than by parsing file timestamps.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date, timedelta
from importlib import resources

import numpy as np

from .errors import ArgumentError, IntegrityError

DEFAULT_ANCHOR = date(2020, 1, 1)

_HOLIDAY_FILE = "us_federal_holidays.csv"


@dataclass(frozen=True)
class CalendarInfo:
    """Per-day calendar attributes for a contiguous hourly frame."""

    dates: np.ndarray       # datetime64[D], one per day
    weekday: np.ndarray     # int, 0=Monday .. 6=Sunday
    weekend: np.ndarray     # bool
    holiday: np.ndarray     # bool
    month: np.ndarray       # int, 1..12
    year_index: np.ndarray  # int, 1-based relative to the anchor year

    def __post_init__(self):
        n = len(self.dates)
        for name in ("weekday", "weekend", "holiday", "month", "year_index"):
            if len(getattr(self, name)) != n:
                raise IntegrityError(f"calendar field {name} length mismatch")
        for arr in (self.dates, self.weekday, self.weekend, self.holiday,
                    self.month, self.year_index):
            arr.setflags(write=False)

    @property
    def n_days(self) -> int:
        return len(self.dates)

    def day_date(self, day: int) -> date:
        return self.dates[day].astype(object)


def _nth_weekday(year: int, month: int, weekday: int, n: int) -> date:
    """n-th (1-based) given weekday of a month; n=-1 means last."""
    if n > 0:
        first = date(year, month, 1)
        offset = (weekday - first.weekday()) % 7
        return first + timedelta(days=offset + 7 * (n - 1))
    if month == 12:
        nxt = date(year + 1, 1, 1)
    else:
        nxt = date(year, month + 1, 1)
    last = nxt - timedelta(days=1)
    return last - timedelta(days=(last.weekday() - weekday) % 7)


def _observed(d: date) -> date:
    # Saturday holidays are observed the Friday before, Sunday the Monday after
    if d.weekday() == 5:
        return d - timedelta(days=1)
    if d.weekday() == 6:
        return d + timedelta(days=1)
    return d


def us_federal_holidays(year: int) -> list[date]:
    """Observed US federal holidays falling within the given year.

    Juneteenth enters the list in 2021. A January 1 that shifts to
    December 31 of the previous year is reported under that previous year.
    """
    fixed = [date(year, 1, 1), date(year, 7, 4), date(year, 11, 11),
             date(year, 12, 25)]
    if year >= 2021:
        fixed.append(date(year, 6, 19))
    floating = [
        _nth_weekday(year, 1, 0, 3),    # Martin Luther King Jr. Day
        _nth_weekday(year, 2, 0, 3),    # Washington's Birthday
        _nth_weekday(year, 5, 0, -1),   # Memorial Day
        _nth_weekday(year, 9, 0, 1),    # Labor Day
        _nth_weekday(year, 10, 0, 2),   # Columbus Day
        _nth_weekday(year, 11, 3, 4),   # Thanksgiving
    ]
    observed = [_observed(d) for d in fixed] + floating
    # next year's Jan 1 can be observed on this year's Dec 31
    nyd_next = _observed(date(year + 1, 1, 1))
    if nyd_next.year == year:
        observed.append(nyd_next)
    return sorted(d for d in set(observed) if d.year == year)


def default_holidays() -> frozenset[date]:
    """Holiday dates shipped with the package (data/us_federal_holidays.csv)."""
    text = resources.files("loadcast").joinpath("data", _HOLIDAY_FILE).read_text()
    out = set()
    for row in csv.reader(text.splitlines()):
        if not row or row[0].startswith("#"):
            continue
        out.add(date.fromisoformat(row[0]))
    return frozenset(out)


def load_holiday_file(path) -> frozenset[date]:
    """Read a user-supplied holiday list: one ISO date per line (CSV col 1)."""
    out = set()
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            try:
                out.add(date.fromisoformat(row[0].strip()))
            except ValueError as e:
                raise ArgumentError(f"bad holiday date {row[0]!r} in {path}") from e
    return frozenset(out)


def infer_calendar(frame, anchor: date = DEFAULT_ANCHOR,
                   holidays=None) -> CalendarInfo:
    """Assign dates to a frame by counting days from the anchor.

    `frame` may be a LoadFrame or a plain hour count. Weekend flags mark
    Saturday/Sunday; holiday flags come from `holidays` (defaults to the
    packaged US federal list). The year index is 1 for the anchor year,
    2 for the next, and so on.
    """
    n_hours = frame if isinstance(frame, int) else frame.n_hours
    if n_hours <= 0 or n_hours % 24 != 0:
        raise IntegrityError(f"frame length {n_hours} is not a positive multiple of 24")
    n_days = n_hours // 24
    if holidays is None:
        holidays = default_holidays()
    else:
        holidays = frozenset(holidays)

    start = np.datetime64(anchor, "D")
    dates = start + np.arange(n_days)
    epoch_day = dates.astype("int64")
    weekday = (epoch_day + 3) % 7  # 1970-01-01 was a Thursday
    weekend = weekday >= 5
    pydates = dates.astype(object)
    holiday = np.array([d in holidays for d in pydates], dtype=bool)
    month = np.array([d.month for d in pydates], dtype=np.int64)
    year_index = np.array([d.year - anchor.year + 1 for d in pydates], dtype=np.int64)
    return CalendarInfo(dates=dates, weekday=weekday, weekend=weekend,
                        holiday=holiday, month=month, year_index=year_index)
