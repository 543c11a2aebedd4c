#!/usr/bin/env python3
"""Writes tests/data/heart_fixture.csv: 30 synthetic rows with the 76-column
heart-disease schema. Two rows carry a '?' in an analysis column, so 28 rows
survive complete cases. The 'name' column is empty as in flattened data."""
import os
import numpy as np

from flatten_heart import NAMES

rng = np.random.default_rng(20201)
n = 30
cols = {}
for name in NAMES:
    cols[name] = rng.integers(0, 4, n).astype(float)
cols["id"] = np.arange(1, n + 1, dtype=float)
cols["age"] = rng.integers(29, 78, n).astype(float)
cols["trestbps"] = rng.integers(94, 200, n).astype(float)
cols["chol"] = rng.integers(126, 564, n).astype(float)
cols["thalach"] = rng.integers(71, 202, n).astype(float)
cols["oldpeak"] = np.round(rng.uniform(0, 6, n), 1)
cols["fbs"] = rng.integers(0, 2, n).astype(float)
cols["sex"] = rng.integers(0, 2, n).astype(float)
risk = (cols["age"] - 50) / 10 + cols["cp"] + cols["oldpeak"] - (cols["thalach"] - 150) / 30
cols["num"] = np.clip(np.round(risk / 2 + rng.normal(0, 0.5, n)), 0, 4)
for name in ["lmt", "ladprox", "laddist", "cxmain", "om1", "rcaprox"]:
    cols[name] = np.where(cols["num"] > 0, rng.integers(1, 3, n), 1).astype(float)

out = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "heart_fixture.csv")
with open(out, "w") as fh:
    fh.write(",".join(NAMES) + "\n")
    for i in range(n):
        row = []
        for name in NAMES:
            if name == "name":
                row.append("")
            elif (i == 4 and name == "chol") or (i == 17 and name == "ca"):
                row.append("?")
            else:
                v = cols[name][i]
                row.append(str(int(v)) if float(v).is_integer() else repr(float(v)))
        fh.write(",".join(row) + "\n")
