"""
Writers for run artifacts.

Numbers are written as shortest round-trip decimals (``repr(float)``), and
nothing run-specific (time, host, output path, thread count) enters a file, so
identical runs produce byte-identical files.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
import scipy

from haarsvie import __version__
from haarsvie.schemas.ensemble import McSummary, SummaryRow, SurfaceRow
from haarsvie.schemas.run import EnsembleParams

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["J", "M", "2M", "x", "y", "mean", "ci_low", "ci_high"]
SURFACE_COLUMNS = ["x", "y", "mean"]

# Parameters that do not change the numbers
_NON_NUMERIC_FIELDS = {"workers", "output", "grid_out", "format"}


def _table_record(row: SummaryRow) -> Dict[str, Any]:
    return row.model_dump(by_alias=True)


def run_metadata(params: EnsembleParams, summary: McSummary) -> Dict[str, Any]:
    """Provenance block of the JSON output."""
    config = params.model_dump(mode="json", exclude=_NON_NUMERIC_FIELDS)
    return {
        "config": config,
        "versions": {
            "haarsvie": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "R": summary.R,
        "R_effective": summary.R_effective,
        "failures": [f.model_dump() for f in summary.failures],
        "confidence": summary.confidence,
        "z": summary.z,
    }


def write_table_csv(rows: Sequence[SummaryRow], destination: Path) -> None:
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for row in rows:
            record = _table_record(row)
            writer.writerow(
                [
                    record["J"],
                    record["M"],
                    record["2M"],
                    *(repr(float(record[k])) for k in TABLE_COLUMNS[3:]),
                ]
            )
    logger.info(f"wrote {len(rows)} table rows to {destination}")


def write_table_json(
    rows: Sequence[SummaryRow], metadata: Dict[str, Any], destination: Path
) -> None:
    payload = {"metadata": metadata, "rows": [_table_record(r) for r in rows]}
    with open(destination, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    logger.info(f"wrote {len(rows)} table rows to {destination}")


def write_surface_csv(rows: List[SurfaceRow], destination: Path) -> None:
    """Long-format surface file with columns x, y, mean."""
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SURFACE_COLUMNS)
        for row in rows:
            writer.writerow([repr(row.x), repr(row.y), repr(row.mean)])
    logger.info(f"wrote {len(rows)} surface rows to {destination}")
