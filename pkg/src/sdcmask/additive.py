"""Additive hybrid masking of a confidential column against a key column.

The released value mixes the confidential column X, a non-confidential key
column S, and Gaussian noise U:

    y_i = [(1 - alpha) * xbar - beta * sbar] + alpha * x_i + beta * s_i + u_i

with beta and the noise variance calibrated from sample moments so that the
mean, the variance, and the covariance with S are carried over from X to Y.
The similarity parameter alpha in [0, 1] selects how much of each record
survives: alpha = 1 releases X unchanged, alpha = 0 releases a blend of the
key column and noise that touches X only through its sample moments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import AlphaOutOfRange, NegativeNoiseVariance, ZeroVariance
from .rng import MODE_EXACT, check_mode, standard_normals, standardize_exact
from .stats import MomentSummary, as_column, moment_summary, paired_columns


@dataclass(frozen=True)
class AdditiveNoiseSpec:
    """Calibrated coefficients for one additive masking run.

    ``sigma_uu`` is the variance of the noise term u.
    """

    alpha: float
    beta: float
    sigma_uu: float
    x_moments: MomentSummary
    s_moments: MomentSummary
    cov_sx: float


def check_alpha(alpha: float) -> float:
    """Similarity parameter must lie in [0, 1]; negative values are rejected
    because they anti-correlate the release with the original."""
    if not np.isfinite(alpha) or not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    return float(alpha)


def calibrate_additive(x: ArrayLike, s: ArrayLike, alpha: float) -> AdditiveNoiseSpec:
    """Derive beta and the noise variance from sample moments of X and S.

    beta = (1 - alpha) * cov(s, x) / var(s)
    sigma_uu = (1 - alpha^2) * (var(x) - cov(s, x)^2 / var(s))

    The bracketed term is nonnegative by Cauchy-Schwarz; tiny negatives from
    rounding (within 1e-12 relative to var(x)) are floored to zero, anything
    lower raises NegativeNoiseVariance.
    """
    alpha = check_alpha(alpha)
    xa, sa = paired_columns(x, s)
    x_moments = moment_summary(xa)
    s_moments = moment_summary(sa)
    if s_moments.variance <= 0.0:
        raise ZeroVariance("key column has zero variance; cannot calibrate beta")
    cov_sx = float(np.mean((xa - x_moments.mean) * (sa - s_moments.mean)))
    beta = (1.0 - alpha) * cov_sx / s_moments.variance
    sigma_uu = (1.0 - alpha**2) * (x_moments.variance - cov_sx**2 / s_moments.variance)
    if sigma_uu < 0.0:
        if sigma_uu >= -1e-12 * max(1.0, x_moments.variance):
            sigma_uu = 0.0
        else:
            raise NegativeNoiseVariance(
                f"calibrated noise variance {sigma_uu} is negative beyond the "
                "rounding floor; inputs are inconsistent"
            )
    return AdditiveNoiseSpec(alpha, beta, sigma_uu, x_moments, s_moments, cov_sx)


def mask_additive(
    x: ArrayLike,
    s: ArrayLike,
    alpha: float,
    seed: int,
    mode: str = MODE_EXACT,
    *,
    stream_label: str = "additive.u",
    u: np.ndarray | None = None,
) -> np.ndarray:
    """Mask x against key column s with similarity alpha.

    In exact mode the noise draw is standardized to sample mean 0, variance
    sigma_uu, and zero covariance with both x and s, which turns the three
    preservation statements (mean, variance, covariance with S) into sample
    identities rather than expectations. Stochastic mode uses the i.i.d.
    draw unmodified, so they hold in expectation only.

    ``u`` is a test hook: a caller-supplied noise vector bypasses generation
    entirely. It is not reachable from the CLI.
    """
    check_mode(mode)
    spec = calibrate_additive(x, s, alpha)
    xa, sa = paired_columns(x, s)
    if u is not None:
        ua = as_column(u)
        if ua.size != xa.size:
            raise ValueError(f"supplied noise length {ua.size} != n = {xa.size}")
    elif spec.sigma_uu == 0.0:
        ua = np.zeros(xa.size)
    elif mode == MODE_EXACT:
        draw = standard_normals(seed, stream_label, xa.size)
        ua = standardize_exact(draw, 0.0, spec.sigma_uu, orthogonal_to=(xa, sa))
    else:
        ua = np.sqrt(spec.sigma_uu) * standard_normals(seed, stream_label, xa.size)

    const = (1.0 - spec.alpha) * spec.x_moments.mean - spec.beta * spec.s_moments.mean
    return const + spec.alpha * xa + spec.beta * sa + ua
