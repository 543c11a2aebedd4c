#!/usr/bin/env python3
"""Run `copent select` once per measure and rule type and check the outputs.

usage: validate_report.py COPENT_BINARY DATA_DIR SCHEMA WORK_DIR
"""
import csv
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def main(argv):
    binary, data_dir, schema_path, work = argv[1:5]
    schema = json.loads(Path(schema_path).read_text())
    data = str(Path(data_dir) / "heart_fixture.csv")
    rules = {
        "tv": ["--threshold-var", "fbs"],
        "min": ["--min-strength", "0.01"],
        "top": ["--top", "5"],
    }
    failures = 0
    for measure in ("ce", "dcor", "dhsic"):
        for tag, rule in rules.items():
            out = Path(work) / f"{measure}_{tag}"
            cmd = [binary, "select", "--input", data, "--response", "num", "--exclude", "id,name",
                   "--measure", measure, "--out", str(out)] + rule
            subprocess.run(cmd, check=True, capture_output=True)
            report = json.loads((out / "report.json").read_text())
            try:
                jsonschema.validate(report, schema)
            except jsonschema.ValidationError as e:
                print(f"{measure}/{tag}: schema violation: {e.message}")
                failures += 1
                continue
            with open(out / "strengths.csv", newline="") as f:
                rows = list(csv.DictReader(f))
            predictors = report["manifest"]["predictors"]
            flagged = {r["variable"] for r in rows if r["selected"] == "1"}
            if [r["variable"] for r in rows] != predictors:
                print(f"{measure}/{tag}: strengths.csv rows do not follow the predictor list")
                failures += 1
            elif flagged != set(report["selection"]["selected"]):
                print(f"{measure}/{tag}: selected flags disagree with report.json")
                failures += 1
            else:
                print(f"{measure}/{tag}: ok ({len(flagged)} of {len(predictors)} selected)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
