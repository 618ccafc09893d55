"""Run configuration for a single masking job."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .additive import check_alpha
from .errors import ConfigError
from .rng import MODE_EXACT, check_mode, check_seed

METHOD_ADDITIVE = "additive"
METHOD_MULTIPLICATIVE = "multiplicative"
METHODS = (METHOD_ADDITIVE, METHOD_MULTIPLICATIVE)


@dataclass
class MaskConfig:
    """Validated settings for one mask run.

    Validation happens at construction, before any data is read: the
    additive method requires a key column, the multiplicative method
    forbids one, and alpha/mode/seed must be in range.
    """

    method: str
    alpha: float
    mode: str = MODE_EXACT
    seed: int = 0
    target_column: str = ""
    key_column: str | None = None
    out_path: Path | None = None
    report_path: Path | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        self.alpha = check_alpha(self.alpha)
        try:
            self.mode = check_mode(self.mode)
            self.seed = check_seed(self.seed)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if self.method == METHOD_ADDITIVE and not self.key_column:
            raise ConfigError("additive masking requires a key column")
        if self.method == METHOD_MULTIPLICATIVE and self.key_column:
            raise ConfigError("multiplicative masking does not take a key column")
        if self.key_column is not None and self.key_column == self.target_column:
            raise ConfigError("key column must differ from the target column")
