#!/usr/bin/env python3
"""End-to-end checks of the ccopt command line interface."""
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

CCOPT = sys.argv[1] if len(sys.argv) > 1 else "ccopt"
failures = 0


def run(*args, expect_code=0):
    global failures
    proc = subprocess.run([CCOPT, *args], capture_output=True, text=True)
    if proc.returncode != expect_code:
        failures += 1
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}, expected {expect_code}\n{proc.stderr}")
    return proc


def check(cond, what):
    global failures
    if not cond:
        failures += 1
        print(f"FAIL {what}")


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    config = tmp / "config.json"
    config.write_text(json.dumps({"K": 2, "N": 2, "M": 1.0, "popularity": {"type": "zipf", "gamma": 0.0}}))
    partition = tmp / "z.json"
    partition.write_text(json.dumps({"type": "uniform", "z": [0.0, 0.5, 0.0]}))

    out = json.loads(run("optimize", "--config", str(config)).stdout)
    check(math.isclose(out["value"], 0.5, abs_tol=1e-8), f"optimize value {out['value']} != 0.5")
    check(out["partition"]["type"] == "symmetric", "optimize emits a symmetric partition")

    for method, expected in [("bruteforce", 0.5), ("symmetric", 0.5), ("monotone", 0.5), ("uniform", 0.5)]:
        out = json.loads(run("evaluate", "--config", str(config), "--partition", str(partition),
                             "--method", method).stdout)
        check(math.isclose(out["load"], expected, abs_tol=1e-9), f"evaluate {method}: {out['load']}")

    out = json.loads(run("bound", "--config", str(config)).stdout)
    check(out["lb_genie"] == out["lb_uniform"], "uniform popularity: genie == uniform bound")
    check(0.0 <= out["lb_genie"] <= 0.5 + 1e-9, f"bound {out['lb_genie']} outside [0, optimum]")
    check(max(out["lb_uniform_terms"]) == out["lb_uniform"], "per-l terms maximize to the bound")
    check(out["argmax_nprime"] == 2, "uniform argmax at the full library")

    out = json.loads(run("simulate", "--config", str(config), "--partition", str(partition),
                         "--F", "4", "--seed", "7", "--demands", "all").stdout)
    check(out["all_decoded"], "simulate: every demand decodes")
    check(math.isclose(out["weighted_load"], 0.5, abs_tol=1e-9), f"simulate load {out['weighted_load']}")
    check(all(r["coloring_ok"] for r in out["results"]), "simulate: proper coloring")

    out = json.loads(run("simulate", "--config", str(config), "--partition", str(partition),
                         "--F", "4", "--seed", "7", "--demands", "1,2;2,2", "--delivery", "hcd").stdout)
    check(len(out["results"]) == 2, "explicit demand list")

    csv_path = tmp / "curve.csv"
    run("sweep", "--config", str(config), "--var", "M", "--from", "1", "--to", "2", "--steps", "3",
        "--out", str(csv_path), "--jobs", "2")
    lines = csv_path.read_text().strip().splitlines()
    check(lines[0] == "var,optimized_load,baseline_mn_load,lb_genie,lb_uniform", "sweep header")
    check(len(lines) == 4, f"sweep rows: {len(lines) - 1}")
    first = [float(v) for v in lines[1].split(",")]
    check(math.isclose(first[1], 0.5, abs_tol=1e-8), f"sweep optimized at M=1: {first[1]}")
    last = [float(v) for v in lines[3].split(",")]
    check(math.isclose(last[1], 0.0, abs_tol=1e-8), f"sweep optimized at M=N: {last[1]}")
    for row in lines[1:]:
        v = [float(t) for t in row.split(",")]
        check(v[3] <= v[1] + 1e-7 <= v[2] + 2e-7, f"bound sandwich violated in row {row}")

    # Determinism: identical invocation, byte-identical CSV.
    csv2 = tmp / "curve2.csv"
    run("sweep", "--config", str(config), "--var", "M", "--from", "1", "--to", "2", "--steps", "3",
        "--out", str(csv2))
    check(csv_path.read_text() == csv2.read_text(), "sweep output is deterministic")

    gamma_csv = tmp / "gamma.csv"
    run("sweep", "--config", str(config), "--var", "gamma", "--from", "0", "--to", "2", "--steps", "3",
        "--out", str(gamma_csv))
    rows = [r.split(",") for r in gamma_csv.read_text().strip().splitlines()[1:]]
    baselines = {r[2] for r in rows}
    check(len(baselines) == 1, "baseline column is constant in gamma")

    n_csv = tmp / "n.csv"
    run("sweep", "--config", str(config), "--var", "N", "--from", "2", "--to", "4", "--steps", "3",
        "--out", str(n_csv))
    n_rows = [r.split(",") for r in n_csv.read_text().strip().splitlines()[1:]]
    check([r[0] for r in n_rows] == ["2", "3", "4"], "N sweep grid")
    check(all(float(r[1]) <= float(r[2]) + 1e-7 for r in n_rows), "N sweep: optimizer beats baseline")

    bad = tmp / "bad.json"
    bad.write_text("{\"K\": 2}")
    run("optimize", "--config", str(bad), expect_code=2)

    fullp = tmp / "full.json"
    fullp.write_text(json.dumps({"type": "full", "K": 2, "N": 2, "x": [[1, 0, 1.0], [2, 0, 1.0]]}))
    run("evaluate", "--config", str(config), "--partition", str(fullp), "--method", "uniform",
        expect_code=2)

    big = tmp / "big.json"
    big.write_text(json.dumps({"K": 10, "N": 10, "M": 5.0, "popularity": {"type": "zipf", "gamma": 1.0}}))
    bigz = tmp / "bigz.json"
    bigz.write_text(json.dumps({"type": "uniform", "z": [1.0] + [0.0] * 10}))
    run("evaluate", "--config", str(big), "--partition", str(bigz), "--method", "bruteforce", expect_code=3)

    run("selftest", "1", "9")

if failures:
    print(f"{failures} CLI check(s) failed")
    sys.exit(1)
print("cli ok")
