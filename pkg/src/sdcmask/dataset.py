"""CSV-backed tabular data with byte-preserving pass-through columns.

Only targeted columns are ever parsed or rewritten; everything else is
carried as the raw cell strings the reader produced, so non-target columns
survive a load/save round trip byte-identically. Masked values are rendered
with 17 significant digits, enough for a lossless float64 round trip.

Writes go through OutputStage: files are produced under temporary names and
renamed into place only after every output of a run has been produced, so an
erroring run never leaves partial files behind.
"""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path

import numpy as np

from .errors import ConfigError, IoError, MalformedHeader, ParseError, RaggedRows

FLOAT_FORMAT = ".17g"


class Dataset:
    """Equal-length named columns; cells held as raw strings."""

    def __init__(self, header: list[str], columns: dict[str, list[str]]):
        self.header = list(header)
        self.columns = columns
        lengths = {len(v) for v in columns.values()}
        if len(lengths) > 1:
            raise RaggedRows(f"columns have differing lengths: {sorted(lengths)}")
        self.n_rows = lengths.pop() if lengths else 0

    def numeric_column(self, name: str) -> np.ndarray:
        """Parse one column strictly as finite floats.

        Raises ParseError with the 1-based physical file row (header = row 1)
        and column name of the first offending cell.
        """
        if name not in self.columns:
            raise ConfigError(
                f"column {name!r} not found; available: {', '.join(self.header)}"
            )
        cells = self.columns[name]
        values = np.empty(len(cells))
        for i, cell in enumerate(cells):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(
                    f"cell {cell!r} at row {i + 2}, column {name!r} is not numeric",
                    row=i + 2,
                    column=name,
                ) from None
            if not math.isfinite(v):
                raise ParseError(
                    f"cell {cell!r} at row {i + 2}, column {name!r} is not finite",
                    row=i + 2,
                    column=name,
                )
            values[i] = v
        return values

    def replace_column(self, name: str, values: np.ndarray) -> None:
        """Overwrite a column with freshly rendered numeric cells."""
        if name not in self.columns:
            raise ConfigError(f"column {name!r} not found")
        if len(values) != self.n_rows:
            raise ConfigError(
                f"replacement column has {len(values)} rows, dataset has {self.n_rows}"
            )
        self.columns[name] = [format(float(v), FLOAT_FORMAT) for v in values]


def load_csv(path: str | Path) -> Dataset:
    """Read a comma-delimited file with a header row.

    Header names must be non-empty and unique; all rows must match the
    header's width. Raises the builtin FileNotFoundError for missing paths.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedHeader(f"{path}: file is empty, expected a header row") from None
        if not header or any(not name for name in header):
            raise MalformedHeader(f"{path}: header has empty column names")
        if len(set(header)) != len(header):
            dupes = sorted({h for h in header if header.count(h) > 1})
            raise MalformedHeader(f"{path}: duplicate column names {dupes}")
        columns: dict[str, list[str]] = {name: [] for name in header}
        for rownum, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise RaggedRows(
                    f"{path}: row {rownum} has {len(row)} cells, header has {len(header)}"
                )
            for name, cell in zip(header, row):
                columns[name].append(cell)
    return Dataset(header, columns)


def _render_csv(dataset: Dataset) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(dataset.header)
    cols = [dataset.columns[name] for name in dataset.header]
    for row in zip(*cols):
        writer.writerow(row)
    return buf.getvalue()


class OutputStage:
    """Write-all-then-rename-all staging for a run's output files.

    Usage::

        with OutputStage() as stage:
            stage.write_bytes(path, payload)
            ...
    # every file appears, atomically, only when the block exits cleanly
    """

    def __init__(self):
        self._staged: list[tuple[Path, Path]] = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.commit()
        else:
            self.abort()
        return False

    def temp_path(self, final: str | Path) -> Path:
        final = Path(final)
        tmp = final.with_name(f".{final.name}.{os.getpid()}.tmp")
        self._staged.append((tmp, final))
        return tmp

    def write_bytes(self, final: str | Path, payload: bytes) -> None:
        tmp = self.temp_path(final)
        try:
            tmp.write_bytes(payload)
        except OSError as exc:
            raise IoError(f"cannot write {final}: {exc}") from exc

    def write_text(self, final: str | Path, payload: str) -> None:
        self.write_bytes(final, payload.encode("utf-8"))

    def commit(self) -> None:
        try:
            for tmp, final in self._staged:
                os.replace(tmp, final)
        except OSError as exc:
            self.abort()
            raise IoError(f"cannot finalize outputs: {exc}") from exc
        self._staged.clear()

    def abort(self) -> None:
        for tmp, _ in self._staged:
            try:
                tmp.unlink(missing_ok=True)
            except OSError:
                pass
        self._staged.clear()


def save_csv(dataset: Dataset, path: str | Path, stage: OutputStage | None = None) -> None:
    """Write the dataset; atomic on its own when no shared stage is given."""
    payload = _render_csv(dataset)
    if stage is not None:
        stage.write_text(path, payload)
    else:
        with OutputStage() as own:
            own.write_text(path, payload)
