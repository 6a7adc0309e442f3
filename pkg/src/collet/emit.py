"""Deterministic CSV/JSON writers.  Files are written atomically."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Sequence

from .designspace import DesignSpaceGrid
from .solver import DeflectionCurve

CURVE_HEADER = ["delta_mm", "delta_tip_mm", "b_mm", "beta_rad", "phi_rad", "fx_n", "fy_n"]
GRID_HEADER = ["value_mm"] + CURVE_HEADER
OUTPUT_DIR_ENV = "COLLET_OUTPUT_DIR"


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".9g")
    return str(x)


def round9(x: float) -> float | None:
    if not math.isfinite(x):
        return None
    return float(format(x, ".9g"))


def resolve_output(path: str | Path) -> Path:
    """Relative output paths go under ``$COLLET_OUTPUT_DIR`` when it is set."""
    path = Path(path)
    root = os.environ.get(OUTPUT_DIR_ENV)
    if root and not path.is_absolute():
        return Path(root) / path
    return path


def write_atomic(path: str | Path, text: str) -> Path:
    path = resolve_output(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def curve_csv(curve: DeflectionCurve) -> str:
    return csv_text(CURVE_HEADER, curve.rows)


def grid_csv(grid: DesignSpaceGrid) -> str:
    rows = ([value, *row] for value, curve in zip(grid.swept_values, grid.curves)
            for row in curve.rows)
    return csv_text(GRID_HEADER, rows)


def grid_json(grid: DesignSpaceGrid) -> dict[str, Any]:
    resampled = grid.resampled()
    return {
        "scenario": grid.scenario.value,
        "swept_values_mm": [round9(v) for v in grid.swept_values],
        "common_delta_mm": [round9(float(v)) for v in grid.common_delta_grid],
        "curves": [
            {
                "value_mm": round9(value),
                "stop_reason": curve.stop_reason.value,
                "failure": curve.failure,
                "final_delta_mm": round9(curve.final_delta),
                "max_tip_mm": round9(curve.max_tip),
                "tip_on_common_grid_mm": [round9(float(v)) for v in tips],
            }
            for value, curve, tips in zip(grid.swept_values, grid.curves, resampled)
        ],
    }


def json_text(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"
