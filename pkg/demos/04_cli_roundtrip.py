"""
Command-line round trip: rerank, measure, simulate
==================================================

The same toolkit drives a CLI. rerank output feeds measure directly.
"""

import json
import subprocess
import sys
from pathlib import Path
from tempfile import TemporaryDirectory


def cli(*args):
    result = subprocess.run(
        [sys.executable, "-m", "fairrank", *args],
        capture_output=True, text=True, check=True,
    )
    return result.stdout


task = {
    "k": 8,
    "desired": {"x": 0.6, "y": 0.4},
    "pools": {
        "x": [0.91, 0.84, 0.77, 0.64, 0.52, 0.41],
        "y": [0.88, 0.79, 0.70, 0.55, 0.43, 0.30],
    },
}

with TemporaryDirectory() as scratch:
    root = Path(scratch)
    task_path = root / "task.json"
    desired_path = root / "desired.json"
    ranked_path = root / "ranked.json"
    task_path.write_text(json.dumps(task))
    desired_path.write_text(json.dumps(task["desired"]))

    # rerank: task JSON in, ranked JSON out
    cli("rerank", "--input", str(task_path), "--algorithm", "detconstsort",
        "--output", str(ranked_path))
    ranked = json.loads(ranked_path.read_text())
    print("ranked slate:")
    for row in ranked:
        print(f"  {row['position']:2d}. {row['attribute']}  {row['score']:.2f}")

    # measure: the rerank output is already in the right shape
    report = json.loads(cli(
        "measure", "--input", str(ranked_path), "--desired", str(desired_path)))
    print("\nreport:", json.dumps(report, indent=2))

    # simulate: a tiny seeded sweep into CSV
    csv_path = root / "sweep.csv"
    cli("simulate", "--attr-min", "2", "--attr-max", "3",
        "--num-distributions", "50", "--pool-size", "40", "--k", "40",
        "--seed", "5", "--output", str(csv_path))
    print("\nsweep head:")
    for line in csv_path.read_text().splitlines()[:5]:
        print(" ", line)
