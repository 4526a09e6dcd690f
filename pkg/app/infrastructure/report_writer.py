"""
Writer for report files: JSON reports, level and plot-data CSV, timing sidecars.

Every file is written to a temporary sibling first and renamed into place.
Wall time never enters a report; it goes to `<report>.timing.json`.
"""
import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

import app
from app.domain.models import FunctionalReport, RunConfig, SuiteSummary, jsonable


class ReportWriter:
    """Writes deterministic report artifacts under one output directory."""

    def __init__(self, out_dir: str, config: RunConfig):
        self.out_dir = Path(out_dir)
        self.config = config
        self.logger = logging.getLogger(__name__)

    def envelope(self, body: Dict[str, Any]) -> Dict[str, Any]:
        """Report body with the canonical config and toolkit version attached."""
        return {"config": self.config.canonical(), "version": app.__version__, **body}

    # reports

    def write_functional(self, stem: str, report: FunctionalReport) -> Path:
        """JSON report, per-level CSV and plot-data CSV of a functional."""
        path = self.write_json(f"{stem}.json", self.envelope({"report": report.to_dict()}))
        header = ["level", "value"]
        rows = [[i, v] for i, v in enumerate(report.levels)]
        if report.normalized_levels:
            header.append("normalized")
            rows = [row + [report.normalized_levels[i] if i < len(report.normalized_levels) else ""]
                    for i, row in enumerate(rows)]
        self.write_csv(f"{stem}.levels.csv", header, rows)
        self.write_csv(f"{stem}.plot.csv", ["x", "y"], _plot_rows(report))
        self.write_timing(path, report.wall_time)
        return path

    def write_weight(self, stem: str, summary: Dict[str, Any], table: List[Dict[str, float]],
                     wall_time: float = 0.0) -> Path:
        """Classification JSON and the r / omega / ratio table as CSV."""
        path = self.write_json(f"{stem}.json", self.envelope({"weight": summary, "table": table}))
        header = list(table[0]) if table else []
        self.write_csv(f"{stem}.csv", header, [[row[k] for k in header] for row in table])
        self.write_timing(path, wall_time)
        return path

    def write_summary(self, stem: str, summaries: Sequence[SuiteSummary], timings: Dict[str, Any]) -> Path:
        """Machine-readable verification summary."""
        body = {
            "passed": all(s.passed for s in summaries),
            "suites": [s.to_dict() for s in summaries],
        }
        path = self.write_json(f"{stem}.json", self.envelope(body))
        self.write_timing(path, timings)
        return path

    def write_timing(self, report_path: Path, wall_time: Any) -> Path:
        sidecar = report_path.with_name(report_path.stem + ".timing.json")
        return self._write_text(sidecar, json.dumps({"wall_time": jsonable(wall_time)}, indent=2, sort_keys=True))

    # primitives

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        text = json.dumps(jsonable(data), indent=2, sort_keys=True, allow_nan=True)
        return self._write_text(self.out_dir / name, text + "\n")

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return self._write_text(self.out_dir / name, buffer.getvalue())

    def _write_text(self, path: Path, text: str) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp = tempfile.mkstemp(prefix=f".{path.name}.", dir=str(path.parent))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(temp, path)
        except OSError:
            if os.path.exists(temp):
                os.remove(temp)
            raise
        self.logger.debug(f"Wrote {path}")
        return path


def _plot_rows(report: FunctionalReport) -> List[List[Any]]:
    """(|w|, ratio) when the diagnostics carry per-radius records, else (level, value)."""
    records: Optional[list] = report.diagnostics.get("records")
    if records:
        return [[r["w"], r["ratio"]] for r in records]
    return [[i, v] for i, v in enumerate(report.levels)]


def _cell(value: Any) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{float(value.real)!r}{float(value.imag):+}j"
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value
