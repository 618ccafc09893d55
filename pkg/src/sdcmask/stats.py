"""Sample-moment and association statistics.

All moments are population style (divide by n), and every function here is
a deterministic pure function of its inputs. Masked/original column pairs
are compared with these same definitions, so no n-1 estimator appears
anywhere in the toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import EmptyColumn, LengthMismatch, ZeroVariance


def as_column(values: ArrayLike) -> np.ndarray:
    """Validate a one-dimensional sequence of finite reals.

    Returns a read-only float64 copy, detached from the caller's buffer,
    so downstream code can rely on immutability.
    """
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d column, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyColumn("column has no observations")
    finite = np.isfinite(arr)
    if not finite.all():
        idx = int(np.flatnonzero(~finite)[0])
        raise ValueError(f"non-finite value at index {idx}: {arr[idx]}")
    arr.flags.writeable = False
    return arr


def paired_columns(x: ArrayLike, y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Validate two columns and require equal lengths."""
    xa = as_column(x)
    ya = as_column(y)
    if xa.size != ya.size:
        raise LengthMismatch(f"column lengths differ: {xa.size} vs {ya.size}")
    return xa, ya


@dataclass(frozen=True)
class MomentSummary:
    """Mean and population variance of a column of n observations."""

    mean: float
    variance: float
    n: int


def mean(x: ArrayLike) -> float:
    """Arithmetic mean."""
    return float(as_column(x).mean())


def variance(x: ArrayLike) -> float:
    """Population variance, (1/n) * sum((x_i - mean)^2)."""
    xa = as_column(x)
    d = xa - xa.mean()
    return float(np.mean(d * d))


def covariance(x: ArrayLike, s: ArrayLike) -> float:
    """Population covariance, (1/n) * sum((x_i - xbar) * (s_i - sbar))."""
    xa, sa = paired_columns(x, s)
    return float(np.mean((xa - xa.mean()) * (sa - sa.mean())))


def moment_summary(x: ArrayLike) -> MomentSummary:
    xa = as_column(x)
    d = xa - xa.mean()
    return MomentSummary(float(xa.mean()), float(np.mean(d * d)), int(xa.size))


def pearson(x: ArrayLike, y: ArrayLike) -> float:
    """Pearson correlation, clamped to [-1, 1] against rounding excess."""
    xa, ya = paired_columns(x, y)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    var_x = float(np.mean(dx * dx))
    var_y = float(np.mean(dy * dy))
    if var_x <= 0.0:
        raise ZeroVariance("first column has zero variance")
    if var_y <= 0.0:
        raise ZeroVariance("second column has zero variance")
    r = float(np.mean(dx * dy)) / np.sqrt(var_x * var_y)
    return min(1.0, max(-1.0, r))


def ranks(x: ArrayLike) -> np.ndarray:
    """1-based ascending ranks; ties broken by original index (stable)."""
    xa = as_column(x)
    order = np.argsort(xa, kind="stable")
    out = np.empty(xa.size, dtype=np.int64)
    out[order] = np.arange(1, xa.size + 1)
    return out


def spearman(x: ArrayLike, y: ArrayLike) -> float:
    """Rank correlation: Pearson correlation of the two rank sequences."""
    xa, ya = paired_columns(x, y)
    return pearson(ranks(xa).astype(np.float64), ranks(ya).astype(np.float64))


def rank_swap_count(x: ArrayLike, y: ArrayLike) -> int:
    """Number of positions whose rank differs between the two columns."""
    xa, ya = paired_columns(x, y)
    return int(np.count_nonzero(ranks(xa) != ranks(ya)))


def skewness(x: ArrayLike) -> float:
    """Third standardized population moment, (1/n) * sum(((x_i - xbar)/sd)^3)."""
    xa = as_column(x)
    d = xa - xa.mean()
    var = float(np.mean(d * d))
    if var <= 0.0:
        raise ZeroVariance("skewness undefined for constant data")
    return float(np.mean(d * d * d)) / var**1.5
