"""Report serialisation: canonical JSON and CSV histogram export."""

from __future__ import annotations

import csv
import io
import json


def dumps_report(report: dict) -> str:
    # sorted keys and fixed separators keep the bytes stable across runs
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def histogram_csv(report: dict) -> str:
    """Flatten every ``*_histogram`` table in the statistics into ``table,value,count`` rows."""
    stats = report.get("statistics", {})
    tables = {k: v for k, v in sorted(stats.items()) if k.endswith("_histogram")}
    if not tables:
        raise ValueError("this report has no histogram tables to export")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table", "value", "count"])
    for name, table in tables.items():
        for value, count in table.items():
            writer.writerow([name, value, count])
    return buf.getvalue()
