"""Serializers for reports and plot-ready series files.

The JSON report uses the MaskReport field names verbatim; series files are
small headered CSVs with floats rendered at 17 significant digits, the same
lossless rendering the dataset writer uses.
"""

from __future__ import annotations

import io
import csv
import json

import numpy as np

from .dataset import FLOAT_FORMAT
from .report import MaskReport


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), FLOAT_FORMAT)


def series_csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def report_json_text(report: MaskReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def absdiff_csv_text(report: MaskReport) -> str:
    return series_csv_text(["original_rank_index", "abs_diff"], report.abs_diff_series)


def rank_pairs_csv_text(pairs: np.ndarray) -> str:
    return series_csv_text(["original_rank", "masked_rank"], pairs)


def density_csv_text(
    edges: np.ndarray, density: np.ndarray, density_masked: np.ndarray | None = None
) -> str:
    if density_masked is None:
        header = ["bin_left", "bin_right", "density"]
        rows = zip(edges[:-1], edges[1:], density)
    else:
        header = ["bin_left", "bin_right", "density_original", "density_masked"]
        rows = zip(edges[:-1], edges[1:], density, density_masked)
    return series_csv_text(header, rows)
