"""Deterministic, label-keyed normal deviate streams and exact standardization.

Generator contract (frozen):

* Bit source: numpy's Philox 4x64-10 counter-based generator.
* Keying: ``SeedSequence([seed, h0, h1])`` where ``(h0, h1)`` are the two
  little-endian 64-bit words of ``BLAKE2b-128(stream_label)``.
* Normal transform: ``Generator.standard_normal`` (ziggurat).

Identical ``(seed, stream_label, n)`` requests therefore reproduce the same
vector on any platform and under any thread schedule; distinct labels give
independent streams for the same seed. Each call builds a fresh generator,
so the API is stateless and safe to use concurrently.
"""

from __future__ import annotations

import hashlib

import numpy as np
from numpy.typing import ArrayLike

from .errors import DegenerateResidual, EmptyRequest, LengthMismatch
from .stats import as_column

MODE_EXACT = "exact"
MODE_STOCHASTIC = "stochastic"
MODES = (MODE_EXACT, MODE_STOCHASTIC)

_SEED_MAX = 2**64 - 1

# Residual smaller than this fraction of the draw's variance is treated as
# numerically zero (a clean draw loses at most ~(n*eps)^2 ~ 1e-27 of its
# variance to the projection; an in-span draw keeps only rounding noise).
_RESIDUAL_FLOOR = 1e-24


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed <= _SEED_MAX:
        raise ValueError(f"seed must be in [0, 2^64), got {seed}")
    return int(seed)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def _stream(seed: int, stream_label: str) -> np.random.Generator:
    digest = hashlib.blake2b(stream_label.encode("utf-8"), digest_size=16).digest()
    words = [int.from_bytes(digest[i : i + 8], "little") for i in (0, 8)]
    ss = np.random.SeedSequence([check_seed(seed), *words])
    return np.random.Generator(np.random.Philox(ss))


def standard_normals(seed: int, stream_label: str, n: int) -> np.ndarray:
    """Draw n unit-normal deviates from the stream keyed by (seed, label)."""
    if n < 1:
        raise EmptyRequest(f"requested {n} deviates; need n >= 1")
    return _stream(seed, stream_label).standard_normal(int(n))


def standardize_exact(
    z: ArrayLike,
    target_mean: float,
    target_var: float,
    orthogonal_to: tuple = (),
) -> np.ndarray:
    """Rescale a draw so its sample moments hit the targets exactly.

    The returned vector u satisfies, up to ~1e-15 relative rounding:

    * sample mean(u) == target_mean
    * population variance(u) == target_var
    * covariance(u, v) == 0 for every constraint vector v

    Orthogonality is enforced in the covariance sense (against centered
    constraint vectors), since every downstream preservation identity
    consumes covariances. The draw is projected onto the orthogonal
    complement of span{ones, centered constraints} (twice, to absorb
    rounding) and then affinely rescaled.

    Raises DegenerateResidual when no usable residual direction remains:
    the projected draw is numerically zero, or n < 2 + #constraints.
    """
    za = as_column(z)
    n = za.size
    if target_var < 0.0:
        raise ValueError(f"target variance must be >= 0, got {target_var}")
    constraints = []
    for v in orthogonal_to:
        va = as_column(v)
        if va.size != n:
            raise LengthMismatch(f"constraint length {va.size} != draw length {n}")
        constraints.append(va)

    if target_var == 0.0:
        return np.full(n, float(target_mean))

    if n < 2 + len(constraints):
        raise DegenerateResidual(
            f"need n >= {2 + len(constraints)} observations to meet mean, variance "
            f"and {len(constraints)} orthogonality condition(s); got n = {n}"
        )

    cols = [np.ones(n)]
    cols.extend(v - v.mean() for v in constraints)
    basis_input = np.column_stack(cols)
    # SVD rather than QR: collinear or constant constraints must not leak
    # arbitrary extra directions into the projector.
    u_svd, sv, _ = np.linalg.svd(basis_input, full_matrices=False)
    q = u_svd[:, sv > sv[0] * 1e-12]

    r = za - q @ (q.T @ za)
    r -= q @ (q.T @ r)
    r -= r.mean()

    var_z = float(za.var())
    var_r = float(np.mean(r * r))
    if var_r <= 0.0 or var_r <= var_z * _RESIDUAL_FLOOR:
        raise DegenerateResidual(
            "draw lies numerically in the span of the constraint vectors"
        )
    return float(target_mean) + np.sqrt(float(target_var) / var_r) * r
