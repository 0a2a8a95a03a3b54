"""Physics-mimicking synthetic dataset generator.

Mimics the structure of the real data: five near-collinear temperature
sites (shared seasonal + diurnal driver, small per-site jitter), five
near-collinear GHI sites (clipped solar-elevation proxy, zero at night),
and a load built from a heating hinge on cold hours, a cooling hinge on
hot hours, a behind-the-meter solar term, an activity profile, a weekend
dip and iid noise.

All noise streams are keyed to absolute hours since the genesis date, so
generating [2022-01-01, 2023-01-01) with the same seed yields exactly the
continuation of a frame generated from 2020.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date

import numpy as np

from .calendars import DEFAULT_ANCHOR, infer_calendar
from .dataset import LoadFrame
from .errors import ArgumentError
from .rng import substream

_GENESIS = DEFAULT_ANCHOR  # noise streams are indexed from this date

# per-site couplings to the common drivers (fixed, not configurable)
_TEMP_GAIN = np.array([0.97, 1.00, 1.06, 0.94, 1.03])
_TEMP_OFFSET = np.array([-0.8, 0.0, 1.2, 0.5, -0.4])
_GHI_GAIN = np.array([0.99, 0.97, 1.01, 1.02, 1.03])


@dataclass(frozen=True)
class SynthConfig:
    n_days: int = 731
    start: date = _GENESIS
    seasonal_amp: float = 1.0        # 0 disables all day-to-day variation
    temp_mean: float = 16.0
    seasonal_temp_amp: float = 9.0   # degC swing of the yearly cycle
    diurnal_temp_amp: float = 4.5    # degC swing of the daily cycle
    site_temp_jitter: float = 0.4    # degC iid per-site noise
    ghi_peak: float = 950.0          # W/m^2 clear-sky midsummer noon
    ghi_site_jitter: float = 0.03    # multiplicative per-site noise
    base_load: float = 2000.0
    heating_coef: float = 55.0       # load per degC below heating_ref
    heating_ref: float = 12.0
    cooling_coef: float = 70.0       # load per degC above cooling_ref
    cooling_ref: float = 22.0
    solar_coef: float = -0.35        # load per W/m^2 (solar offsets demand)
    activity_amp: float = 180.0      # daily human-activity swing
    weekend_dip: float = 120.0
    noise_scale: float = 40.0

    def validate(self) -> None:
        if self.n_days < 2:
            raise ArgumentError("synth config needs n_days >= 2")
        if self.noise_scale < 0:
            raise ArgumentError("noise scale must be >= 0")
        if self.start < _GENESIS:
            raise ArgumentError(f"start date must not precede {_GENESIS}")

    def with_days(self, n_days: int, start: date | None = None) -> "SynthConfig":
        return replace(self, n_days=n_days, start=start or self.start)


def _noise(seed: int, stream: str, offset: int, n: int) -> np.ndarray:
    # draw from hour 0 and slice so overlapping windows share values
    return substream(seed, stream).standard_normal(offset + n)[offset:]


def synth_generate(config: SynthConfig, seed: int) -> LoadFrame:
    """Generate a deterministic synthetic LoadFrame."""
    config.validate()
    n_days, n = config.n_days, config.n_days * 24
    start_ts = np.datetime64(config.start, "D").astype("datetime64[h]")
    timestamps = start_ts + np.arange(n)
    offset = int((np.datetime64(config.start, "D")
                  - np.datetime64(_GENESIS, "D")).astype(int)) * 24

    dates = np.datetime64(config.start, "D") + np.arange(n_days)
    doy = (dates - dates.astype("datetime64[Y]")).astype(int)  # 0-based day of year
    # yearly cycle: -1 in mid-January, +1 in mid-July
    season_day = config.seasonal_amp * -np.cos(2 * np.pi * (doy - 14) / 365.25)
    season = np.repeat(season_day, 24)
    hour = np.tile(np.arange(24.0), n_days)
    diurnal = -np.cos(2 * np.pi * (hour - 3.0) / 24.0)  # coldest 3am, warmest 3pm

    t_common = (config.temp_mean + config.seasonal_temp_amp * season
                + config.diurnal_temp_amp * diurnal)
    temp = np.empty((n, 5))
    for i in range(5):
        jit = config.site_temp_jitter * _noise(seed, f"synth-temp-{i}", offset, n)
        temp[:, i] = _TEMP_OFFSET[i] + _TEMP_GAIN[i] * t_common + jit

    # day length stretches with the season; elevation is a half-sine, 0 at night
    half_len = 6.0 + 2.0 * season
    elev = np.sin(np.pi * (hour - (12.0 - half_len)) / (2.0 * half_len))
    elev[(hour <= 12.0 - half_len) | (hour >= 12.0 + half_len)] = 0.0
    elev = np.maximum(elev, 0.0)
    irr_scale = 0.8 + 0.2 * season
    ghi_common = config.ghi_peak * irr_scale * elev
    ghi = np.empty((n, 5))
    for i in range(5):
        jit = config.ghi_site_jitter * _noise(seed, f"synth-ghi-{i}", offset, n)
        ghi[:, i] = np.maximum(_GHI_GAIN[i] * ghi_common * (1.0 + jit), 0.0)

    cal = infer_calendar(n, anchor=config.start)
    weekend = np.repeat(cal.weekend, 24)
    t_agg = temp.mean(axis=1)
    ghi_agg = ghi.mean(axis=1)
    activity = -np.cos(2 * np.pi * (hour - 14.0) / 24.0)  # peak 2pm, trough 2am
    load = (config.base_load
            + config.heating_coef * np.maximum(config.heating_ref - t_agg, 0.0)
            + config.cooling_coef * np.maximum(t_agg - config.cooling_ref, 0.0)
            + config.solar_coef * ghi_agg
            + config.activity_amp * activity
            - config.weekend_dip * weekend
            + config.noise_scale * _noise(seed, "synth-load", offset, n))

    return LoadFrame(timestamps=timestamps, temp=temp, ghi=ghi, load=load)
