#!/usr/bin/env python3
"""Fetch the five UCI datasets the acceptance suite evaluates against.

Downloads the raw files from the UCI Machine Learning Repository, normalizes
them to the layout this toolkit reads (header row, class label in the last
column, '?' for missing values) and writes them under the given data
directory. Requires network access to archive.ics.uci.edu.

Usage: python3 tools/fetch_uci.py [data_dir]
"""

import csv
import io
import sys
import urllib.request

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

VOTE_COLUMNS = [
    "handicapped-infants", "water-project-cost-sharing",
    "adoption-of-the-budget-resolution", "physician-fee-freeze",
    "el-salvador-aid", "religious-groups-in-schools",
    "anti-satellite-test-ban", "aid-to-nicaraguan-contras", "mx-missile",
    "immigration", "synfuels-corporation-cutback", "education-spending",
    "superfund-right-to-sue", "crime", "duty-free-exports",
    "export-administration-act-south-africa",
]

MUSHROOM_COLUMNS = [
    "cap-shape", "cap-surface", "cap-color", "bruises", "odor",
    "gill-attachment", "gill-spacing", "gill-size", "gill-color",
    "stalk-shape", "stalk-root", "stalk-surface-above-ring",
    "stalk-surface-below-ring", "stalk-color-above-ring",
    "stalk-color-below-ring", "veil-type", "veil-color", "ring-number",
    "ring-type", "spore-print-color", "population", "habitat",
]

DATASETS = {
    "vote": {
        "url": f"{BASE}/voting-records/house-votes-84.data",
        "columns": VOTE_COLUMNS,
        "class_first": True,
        "rows": 435,
    },
    "car": {
        "url": f"{BASE}/car/car.data",
        "columns": ["buying", "maint", "doors", "persons", "lug_boot", "safety"],
        "class_first": False,
        "rows": 1728,
    },
    "mushroom": {
        "url": f"{BASE}/mushroom/agaricus-lepiota.data",
        "columns": MUSHROOM_COLUMNS,
        "class_first": True,
        "rows": 8124,
    },
    "chess": {
        "url": f"{BASE}/chess/king-rook-vs-king-pawn/kr-vs-kp.data",
        "columns": [f"f{i:02d}" for i in range(1, 37)],
        "class_first": False,
        "rows": 3196,
    },
    "nursery": {
        "url": f"{BASE}/nursery/nursery.data",
        "columns": ["parents", "has_nurs", "form", "children", "housing",
                     "finance", "social", "health"],
        "class_first": False,
        "rows": 12960,
    },
}


def fetch(name, spec, data_dir):
    print(f"fetching {name} from {spec['url']}")
    with urllib.request.urlopen(spec["url"]) as response:
        raw = response.read().decode("utf-8")

    rows = []
    for line in io.StringIO(raw):
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if spec["class_first"]:
            fields = fields[1:] + fields[:1]
        rows.append(fields)

    expected_width = len(spec["columns"]) + 1
    for i, row in enumerate(rows):
        if len(row) != expected_width:
            raise SystemExit(f"{name}: row {i + 1} has {len(row)} fields, "
                             f"expected {expected_width}")
    if len(rows) != spec["rows"]:
        raise SystemExit(f"{name}: got {len(rows)} rows, expected {spec['rows']}")

    path = f"{data_dir}/{name}.csv"
    with open(path, "w", newline="") as out:
        writer = csv.writer(out)
        writer.writerow(spec["columns"] + ["class"])
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    data_dir = sys.argv[1] if len(sys.argv) > 1 else "data"
    for name, spec in DATASETS.items():
        fetch(name, spec, data_dir)


if __name__ == "__main__":
    main()
