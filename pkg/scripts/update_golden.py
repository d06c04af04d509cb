#!/usr/bin/env python3
"""Regenerate tests/golden/initial.json from the `initial` check."""
import json
from pathlib import Path

from qsuper.checks import DEFAULT_GRID, Options, plan, run_task

rows = []
for task in plan("initial", DEFAULT_GRID, Options()):
    for r in run_task(task):
        p = r.params
        rows.append({"M": p["M"], "N": p["N"], "convention": p["convention"],
                     "outcome": r.as_dict()["witness"]})
rows.sort(key=lambda d: (d["M"], d["N"], d["convention"]))
path = Path(__file__).resolve().parent.parent / "tests" / "golden" / "initial.json"
path.write_text(json.dumps(rows, indent=1, sort_keys=True) + "\n")
print("wrote %d rows to %s" % (len(rows), path))
