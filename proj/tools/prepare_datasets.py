#!/usr/bin/env python3
"""Fetch the benchmark datasets and write them as CSV files under data/.

Each CSV has a header row, numeric feature columns and the class label in the
last column. Sources are tried in order: the UCI repository, then the raw
files shipped inside the keel_ds wheel (fetched with pip download). The
keel_ds "monk-2" file encodes a different MONK problem, so Monks2 falls back to
the full attribute grid instead.

Robot (multi-view) has no public mirror we can reach; pass --robot-dir with a
directory holding lp1.data and lp4.data to convert it (the two subsets are
merged into 6 views of 15 readings).
"""

import argparse
import csv
import itertools
import subprocess
import sys
import tempfile
import urllib.request
import zipfile
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
SOURCES = {
    "ionosphere": {
        "uci": f"{UCI}/ionosphere/ionosphere.data",
        "keel": "keel_ds/data/balanced/raw/ionosphere.dat",
    },
    "pima": {
        "uci": None,
        "keel": "keel_ds/data/balanced/raw/pima.dat",
    },
    "monks2": {
        "uci": f"{UCI}/monks-problems/monks-2.train",
        "keel": None,
    },
}


def parse_comma(text):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@") or line.startswith("%"):
            continue
        rows.append([f.strip() for f in line.split(",")])
    return rows


def parse_monks(text):
    # class a1 .. a6 id
    rows = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 7:
            rows.append(parts[1:7] + [parts[0]])
    return rows


def monks2_grid():
    # Same rows as UCI monks-2.test: every attribute combination, positive
    # when exactly two attributes take their first value.
    rows = []
    for a in itertools.product(range(1, 4), range(1, 4), range(1, 3), range(1, 4), range(1, 5), range(1, 3)):
        rows.append([str(v) for v in a] + ["1" if sum(v == 1 for v in a) == 2 else "0"])
    return rows


def fetch_uci(name, url):
    if name == "monks2":
        url = url.replace(".train", ".test")
    with urllib.request.urlopen(url, timeout=20) as r:
        text = r.read().decode()
    return parse_monks(text) if name == "monks2" else parse_comma(text)


def keel_wheel(cache):
    wheels = list(cache.glob("keel_ds-*.whl"))
    if not wheels:
        subprocess.run([sys.executable, "-m", "pip", "download", "keel_ds", "--no-deps", "-q", "-d", str(cache)],
                       check=True)
        wheels = list(cache.glob("keel_ds-*.whl"))
    return zipfile.ZipFile(wheels[0])


def write_csv(path, rows):
    d = len(rows[0]) - 1
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow([f"x{j}" for j in range(d)] + ["label"])
        w.writerows(rows)


def convert_robot(src, out):
    # lpN.data: a label line followed by 15 lines of "Fx Fy Fz Tx Ty Tz".
    views = [[] for _ in range(6)]
    labels = []
    for path in (Path(src) / "lp1.data", Path(src) / "lp4.data"):
        lines = [l.split() for l in path.read_text().splitlines()]
        i = 0
        while i < len(lines):
            if len(lines[i]) == 1:
                label = lines[i][0]
                block = [list(map(float, l)) for l in lines[i + 1:i + 16]]
                for v in range(6):
                    views[v].append([row[v] for row in block])
                labels.append(label)
                i += 16
            else:
                i += 1
    out.mkdir(parents=True, exist_ok=True)
    names = ["fx", "fy", "fz", "tx", "ty", "tz"]
    for v, name in enumerate(names):
        with open(out / f"{name}.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow([f"t{j}" for j in range(15)])
            w.writerows(views[v])
    (out / "labels.txt").write_text("\n".join(labels) + "\n")
    (out / "manifest.txt").write_text(
        "".join(f"view {n} {n}.csv\n" for n in names) + "labels labels.txt\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="data", type=Path)
    ap.add_argument("--offline", action="store_true", help="skip the UCI download")
    ap.add_argument("--robot-dir", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        wheel = None
        for name, src in SOURCES.items():
            rows = None
            if src["uci"] and not args.offline:
                try:
                    rows = fetch_uci(name, src["uci"])
                    origin = "uci"
                except Exception as e:  # noqa: BLE001
                    print(f"{name}: UCI download failed ({e}); using keel_ds", file=sys.stderr)
            if rows is None and name == "monks2":
                rows = monks2_grid()
                origin = "attribute grid"
            if rows is None:
                wheel = wheel or keel_wheel(Path(tmp))
                rows = parse_comma(wheel.read(src["keel"]).decode())
                origin = "keel_ds"
            write_csv(args.out / f"{name}.csv", rows)
            print(f"{name}: {len(rows)} samples, {len(rows[0]) - 1} features ({origin})")

    if args.robot_dir:
        convert_robot(args.robot_dir, args.out / "robot")
        print(f"robot: wrote {args.out / 'robot'}")
    else:
        print("robot: skipped (no --robot-dir)")


if __name__ == "__main__":
    main()
