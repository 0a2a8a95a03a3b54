"""Variance inflation factor diagnostics.

VIF_i = 1 / (1 - R_i^2), with R_i^2 from regressing column i on all the
other columns plus an intercept. Values above ~10 flag problematic
multicollinearity; exact collinearity reports the +inf sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

_EXACT_R2 = 1.0 - 1e-12


@dataclass(frozen=True)
class VifReport:
    names: tuple[str, ...]
    values: np.ndarray  # aligned with names; +inf marks exact collinearity

    def __post_init__(self):
        self.values.setflags(write=False)

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.names.index(name)])

    def as_rows(self) -> list[tuple[str, float]]:
        return list(zip(self.names, (float(v) for v in self.values)))


def vif(matrix: np.ndarray, names=None) -> VifReport:
    """Per-column VIF over an observations x features matrix."""
    X = np.asarray(matrix, dtype=np.float64)
    if X.ndim != 2:
        raise ArgumentError("vif expects a 2-D matrix")
    n, p = X.shape
    if n < p + 2:
        raise ArgumentError(f"vif needs at least {p + 2} observations for {p} features, got {n}")
    if not np.isfinite(X).all():
        raise ArgumentError("matrix contains non-finite values")
    if names is None:
        names = tuple(f"x{i}" for i in range(p))
    else:
        names = tuple(names)
        if len(names) != p:
            raise ArgumentError("names length does not match feature count")

    values = np.empty(p)
    ones = np.ones((n, 1))
    for i in range(p):
        xi = X[:, i]
        sst = float(np.sum((xi - xi.mean()) ** 2))
        if sst <= 0.0:
            values[i] = np.inf  # constant column: collinear with the intercept
            continue
        others = np.hstack([ones, np.delete(X, i, axis=1)])
        beta, *_ = np.linalg.lstsq(others, xi, rcond=None)
        ssr = float(np.sum((xi - others @ beta) ** 2))
        r2 = 1.0 - ssr / sst
        values[i] = np.inf if r2 >= _EXACT_R2 else 1.0 / (1.0 - r2)
    return VifReport(names=names, values=values)
