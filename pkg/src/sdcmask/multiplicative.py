"""Skewness-preserving multiplicative masking for positive, lognormal-like data.

The release is Y = X^alpha * U^(1-alpha) with lognormal noise U calibrated on
the log scale so that Y ends up with exactly the lognormal law fitted to X:
matching the log-scale mean and variance is sufficient for matching the whole
distribution, skewness included. Additive Gaussian schemes cannot do this for
skewed data; the multiplicative structure also concentrates perturbation on
the large values, which are the ones at highest disclosure risk.

Sufficiency calibration: with X ~ LN(mu, sigma_sq) on the log scale, the
noise must follow LN(mu, (1 - alpha^2) / (1 - alpha)^2 * sigma_sq). The
noise variance diverges as alpha -> 1, so masking is computed in log space
through the algebraically identical bounded form

    ln y_i = alpha * ln x_i + (1 - alpha) * mu + sqrt(1 - alpha^2) * sigma * z_i

with z standard normal. alpha = 1 short-circuits to the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .additive import check_alpha
from .errors import AlphaOutOfRange, NonPositiveValue
from .rng import MODE_EXACT, check_mode, standard_normals, standardize_exact
from .stats import as_column


@dataclass(frozen=True)
class LognormalParams:
    """Log-scale mean and log-scale population variance of a lognormal law."""

    mu: float
    sigma_sq: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma_sq)):
            raise ValueError("lognormal parameters must be finite")
        if self.sigma_sq < 0.0:
            raise ValueError(f"sigma_sq must be >= 0, got {self.sigma_sq}")


@dataclass(frozen=True)
class MultiplicativeNoiseSpec:
    """Source law and the calibrated noise law for one multiplicative run."""

    alpha: float
    source_params: LognormalParams
    noise_params: LognormalParams


def _require_positive(xa: np.ndarray) -> None:
    bad = np.flatnonzero(xa <= 0.0)
    if bad.size:
        idx = int(bad[0])
        raise NonPositiveValue(
            f"value {xa[idx]} at index {idx} is not strictly positive", index=idx
        )


def estimate_log_params(x: ArrayLike) -> LognormalParams:
    """Fit (mu, sigma_sq) as mean and population variance of the logs.

    Only strictly positive data is accepted; shifting non-positive data
    would silently change the law being preserved, so it is rejected with
    the offending index instead.
    """
    xa = as_column(x)
    _require_positive(xa)
    logs = np.log(xa)
    return LognormalParams(float(logs.mean()), float(logs.var()))


def lognormal_moments(p: LognormalParams) -> tuple[float, float]:
    """Mean and variance of LN(mu, sigma_sq):
    E = exp(mu + sigma_sq/2), V = (exp(sigma_sq) - 1) * exp(2*mu + sigma_sq).
    """
    m = math.exp(p.mu + p.sigma_sq / 2.0)
    v = math.expm1(p.sigma_sq) * math.exp(2.0 * p.mu + p.sigma_sq)
    return m, v


def lognormal_skewness(p: LognormalParams) -> float:
    """Closed-form skewness (exp(sigma_sq) + 2) * sqrt(exp(sigma_sq) - 1);
    independent of mu."""
    g = math.exp(p.sigma_sq)
    return (g + 2.0) * math.sqrt(math.expm1(p.sigma_sq))


def noise_variance_multiplicative(alpha: float, sigma_sq: float) -> float:
    """Log-scale noise variance (1 - alpha^2)/(1 - alpha)^2 * sigma_sq.

    Implemented in the simplified form (1 + alpha)/(1 - alpha) * sigma_sq,
    which is stable as alpha -> 1. alpha = 1 itself diverges and is never
    calibrated (the masker short-circuits it).
    """
    if not np.isfinite(alpha) or not 0.0 <= alpha < 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1) for calibration, got {alpha}")
    if sigma_sq < 0.0:
        raise ValueError(f"sigma_sq must be >= 0, got {sigma_sq}")
    return (1.0 + alpha) / (1.0 - alpha) * sigma_sq


def calibrate_multiplicative(x: ArrayLike, alpha: float) -> MultiplicativeNoiseSpec:
    """Fit the source law and derive the sufficiency-matching noise law.

    The noise keeps the source's log-scale mean and inflates its variance by
    (1 + alpha)/(1 - alpha); only alpha < 1 is calibratable.
    """
    source = estimate_log_params(x)
    noise = LognormalParams(
        source.mu, noise_variance_multiplicative(alpha, source.sigma_sq)
    )
    return MultiplicativeNoiseSpec(float(alpha), source, noise)


def power_law_params(p: LognormalParams, exponent: float) -> LognormalParams:
    """Law of X^exponent for X ~ LN(p): LN(exponent*mu, exponent^2*sigma_sq)."""
    return LognormalParams(exponent * p.mu, exponent**2 * p.sigma_sq)


def product_law_params(p: LognormalParams, q: LognormalParams) -> LognormalParams:
    """Law of the product of independent lognormals: parameters add."""
    return LognormalParams(p.mu + q.mu, p.sigma_sq + q.sigma_sq)


def mask_multiplicative(
    x: ArrayLike,
    alpha: float,
    seed: int,
    mode: str = MODE_EXACT,
    *,
    stream_label: str = "multiplicative.z",
    z: np.ndarray | None = None,
) -> np.ndarray:
    """Mask a strictly positive column with similarity alpha.

    Computation runs entirely in log space via the bounded collapsed form
    (see module docstring); outputs are strictly positive by construction.

    In exact mode z is standardized to sample mean 0, variance 1, and zero
    covariance with ln x, which makes the fitted log-scale parameters of the
    output equal those of the input as sample identities, and makes the
    log-scale correlation between input and output equal alpha exactly.

    Degenerate input (constant positive column) is returned unchanged for
    any alpha: the calibrated noise collapses to the point mass at the
    shared value.

    ``z`` is a test hook: a caller-supplied standard-normal vector is used
    as-is, skipping both generation and standardization. Not reachable from
    the CLI.
    """
    check_alpha(alpha)
    check_mode(mode)
    xa = as_column(x)
    _require_positive(xa)
    if alpha == 1.0:
        return xa.copy()
    if np.all(xa == xa[0]):
        # constant column: the calibrated noise is the point mass at the
        # shared value, so the release is the input (degenerate success)
        return xa.copy()

    source = estimate_log_params(xa)
    if source.sigma_sq == 0.0:
        return xa.copy()
    logs = np.log(xa)
    sigma = math.sqrt(source.sigma_sq)

    if z is not None:
        za = as_column(z)
        if za.size != xa.size:
            raise ValueError(f"supplied z length {za.size} != n = {xa.size}")
    elif mode == MODE_EXACT:
        draw = standard_normals(seed, stream_label, xa.size)
        za = standardize_exact(draw, 0.0, 1.0, orthogonal_to=(logs,))
    else:
        za = standard_normals(seed, stream_label, xa.size)

    log_y = alpha * logs + (1.0 - alpha) * source.mu
    log_y += math.sqrt(1.0 - alpha**2) * sigma * za
    return np.exp(log_y)
