"""Hyperparameter configs for the four model families."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import ClassVar, Union

from ..errors import ArgumentError


@dataclass(frozen=True)
class PiecewiseConfig:
    """Continuous two-segment (hinge) linear model with a searched breakpoint."""

    family: ClassVar[str] = "piecewise"
    breakpoint_column: str = "pca_temp"
    grid_size: int = 25          # quantile grid resolution for the breakpoint

    def __post_init__(self):
        if self.grid_size < 1:
            raise ArgumentError("grid_size must be >= 1")


@dataclass(frozen=True)
class PolynomialConfig:
    """OLS/ridge on a polynomial expansion of the two PCA columns."""

    family: ClassVar[str] = "polynomial"
    degree: int = 2
    ridge: float = 0.0
    expand_columns: tuple[str, str] = ("pca_temp", "pca_ghi")

    def __post_init__(self):
        object.__setattr__(self, "expand_columns", tuple(self.expand_columns))
        if self.degree < 1:
            raise ArgumentError("degree must be >= 1")
        if self.ridge < 0:
            raise ArgumentError("ridge penalty must be >= 0")
        if len(self.expand_columns) != 2:
            raise ArgumentError("expand_columns must name exactly two columns")


@dataclass(frozen=True)
class GBTreeConfig:
    """Second-order gradient-boosted trees for squared error."""

    family: ClassVar[str] = "gbtree"
    rounds: int = 300
    learning_rate: float = 0.1
    max_depth: int = 5
    min_child_weight: float = 1.0
    reg_lambda: float = 1.0      # L2 penalty on leaf weights
    gamma: float = 0.0           # minimum gain to accept a split
    subsample: float = 1.0       # per-round row fraction, without replacement

    def __post_init__(self):
        if self.rounds < 0:
            raise ArgumentError("rounds must be >= 0")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ArgumentError("learning_rate must be in (0, 1]")
        if self.max_depth < 0:
            raise ArgumentError("max_depth must be >= 0")
        if self.min_child_weight < 0 or self.reg_lambda < 0 or self.gamma < 0:
            raise ArgumentError("min_child_weight, reg_lambda, gamma must be >= 0")
        if not 0.0 < self.subsample <= 1.0:
            raise ArgumentError("subsample must be in (0, 1]")


@dataclass(frozen=True)
class ForestConfig:
    """Bagged CART regression trees with per-node feature subsampling."""

    family: ClassVar[str] = "rforest"
    n_trees: int = 100
    max_depth: int | None = None  # None = unlimited
    min_samples_leaf: int = 1
    feature_fraction: float = 1.0
    bootstrap: bool = True

    def __post_init__(self):
        if self.n_trees < 1:
            raise ArgumentError("n_trees must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ArgumentError("max_depth must be >= 1 or None")
        if self.min_samples_leaf < 1:
            raise ArgumentError("min_samples_leaf must be >= 1")
        if not 0.0 < self.feature_fraction <= 1.0:
            raise ArgumentError("feature_fraction must be in (0, 1]")


RegressorConfig = Union[PiecewiseConfig, PolynomialConfig, GBTreeConfig, ForestConfig]

FAMILIES: dict[str, type] = {
    c.family: c for c in (PiecewiseConfig, PolynomialConfig, GBTreeConfig, ForestConfig)
}


def config_to_dict(config: RegressorConfig) -> dict:
    d = dataclasses.asdict(config)
    d["family"] = config.family
    return d


def config_from_dict(d: dict) -> RegressorConfig:
    d = dict(d)
    family = d.pop("family", None)
    cls = FAMILIES.get(family)
    if cls is None:
        raise ArgumentError(f"unknown model family {family!r}; choose from {sorted(FAMILIES)}")
    try:
        return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in d.items()})
    except TypeError as e:
        raise ArgumentError(f"bad {family} config: {e}") from None
