"""PCA over a homogeneous block of series (the 5 temperature or 5 GHI sites).

Centered but not scaled: the block shares one physical unit, and the
headline explained-variance figures depend on that choice. Components come
from the SVD of the centered matrix; each loading column is sign-fixed so
its entry-sum is non-negative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError


@dataclass(frozen=True)
class PcaModel:
    center: np.ndarray                    # (p,)
    loadings: np.ndarray                  # (p, k), orthonormal columns
    explained_variance_ratio: np.ndarray  # (k,) descending, of total variance
    fit_scope: str = "unscoped"           # provenance tag: what rows fitted this

    def __post_init__(self):
        for arr in (self.center, self.loadings, self.explained_variance_ratio):
            arr.setflags(write=False)

    @property
    def n_features(self) -> int:
        return len(self.center)

    @property
    def n_components(self) -> int:
        return self.loadings.shape[1]

    def to_json(self) -> str:
        return json.dumps({
            "format": "loadcast-pca",
            "version": 1,
            "fit_scope": self.fit_scope,
            "center": self.center.tolist(),
            "loadings": self.loadings.tolist(),
            "explained_variance_ratio": self.explained_variance_ratio.tolist(),
        }, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "PcaModel":
        d = json.loads(text)
        if d.get("format") != "loadcast-pca":
            raise ArgumentError("not a PCA model file")
        return PcaModel(center=np.asarray(d["center"], dtype=np.float64),
                        loadings=np.asarray(d["loadings"], dtype=np.float64),
                        explained_variance_ratio=np.asarray(
                            d["explained_variance_ratio"], dtype=np.float64),
                        fit_scope=d.get("fit_scope", "unscoped"))


def pca_fit(matrix: np.ndarray, n_components: int | float = 1,
            scope: str = "unscoped") -> PcaModel:
    """Fit PCA by SVD of the centered matrix.

    `n_components` is a component count when int, or a cumulative
    explained-variance threshold in (0, 1] when float (the minimal number
    of components reaching it is retained). Ratios are always relative to
    the total variance of all features.
    """
    X = np.asarray(matrix, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2 or X.shape[1] < 1:
        raise ArgumentError(f"need a 2-D matrix with >= 2 rows, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ArgumentError("matrix contains non-finite values")
    n, p = X.shape

    center = X.mean(axis=0)
    _, s, vt = np.linalg.svd(X - center, full_matrices=False)
    variances = s * s / (n - 1)
    total = variances.sum()
    ratios = variances / total if total > 0 else np.zeros_like(variances)

    if isinstance(n_components, float) and not isinstance(n_components, bool):
        tau = n_components
        if not 0.0 < tau <= 1.0:
            raise ArgumentError(f"variance threshold {tau} outside (0, 1]")
        cum = np.cumsum(ratios)
        k = int(np.searchsorted(cum, tau - 1e-9) + 1)
        k = min(k, len(ratios))
    else:
        k = int(n_components)
        if not 1 <= k <= min(n, p):
            raise ArgumentError(f"n_components {k} outside 1..{min(n, p)}")

    loadings = vt[:k].T.copy()
    flip = loadings.sum(axis=0) < 0
    loadings[:, flip] *= -1.0
    return PcaModel(center=center, loadings=loadings,
                    explained_variance_ratio=ratios[:k].copy(), fit_scope=scope)


def pca_transform(model: PcaModel, matrix: np.ndarray) -> np.ndarray:
    """Project rows onto the retained components: (X - center) @ loadings."""
    X = np.asarray(matrix, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != model.n_features:
        raise ArgumentError(
            f"matrix has {X.shape[1]} features, model expects {model.n_features}")
    return (X - model.center) @ model.loadings
