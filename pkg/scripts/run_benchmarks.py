"""
Benchmark runner
Runs the commutation, architecture and placement comparisons and saves tables and plots

Suite: the shipped Steane encoder, a seeded set of random Clifford+T
circuits, and every *.qasm file under --qasm-dir.

Usage:
    python scripts/run_benchmarks.py
    python scripts/run_benchmarks.py --qasm-dir benchmarks/ -d 3 -d 7 --jobs 4
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
import polars as pl

from lsmap.circuit.benchmarks import random_suite, steane_encoder
from lsmap.circuit.ir import Circuit
from lsmap.circuit.qasm import read_qasm
from lsmap.config import OUTPUT_DIR, RANDOM_STATE
from lsmap.pipeline.experiments import EXPERIMENT_MODES, compare_experiment, write_comparison
from lsmap.utils.logging import setup_logging
from lsmap.utils.visualization import plot_comparison

# ============================================================================
# CONFIGURATION
# ============================================================================


PLOT_METRICS = {
    "commutation": ["reduction_pct"],
    "arch": ["latency_reduction_pct", "operation_reduction_pct"],
    "placement": ["swap_reduction_pct", "latency_reduction_pct"],
}


def build_suite(qasm_dir: "Path | None", seed: int) -> dict[str, Circuit]:
    print("\n[1/3] Building benchmark suite...")
    suite = {"steane_encoder": steane_encoder()}
    suite.update(random_suite(np.random.default_rng(seed)))
    if qasm_dir is not None:
        for path in sorted(Path(qasm_dir).glob("*.qasm")):
            suite[path.stem] = read_qasm(path)
    print(f"   [OK] {len(suite)} benchmarks")
    return suite


def _one(job: tuple) -> pl.DataFrame:
    mode, name, circuit, distances, overrides = job
    return compare_experiment(mode, {name: circuit}, distances, **overrides)


def run_mode(mode: str, suite: dict[str, Circuit], distances: tuple[int, ...], jobs: int,
             overrides: dict) -> pl.DataFrame:
    work = [(mode, name, c, distances, overrides) for name, c in suite.items()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            frames = list(pool.map(_one, work))
    else:
        frames = [_one(job) for job in work]
    return pl.concat(frames, how="vertical")


def main():
    parser = argparse.ArgumentParser(description="Run lsmap comparison experiments")
    parser.add_argument("--qasm-dir", type=Path, default=None)
    parser.add_argument("-d", "--distance", type=int, action="append", dest="distances")
    parser.add_argument("--modes", nargs="+", choices=EXPERIMENT_MODES, default=list(EXPERIMENT_MODES))
    parser.add_argument("--window", type=int, default=10)
    parser.add_argument("--solver", choices=("exact", "list"), default="list")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=RANDOM_STATE)
    parser.add_argument("--out", type=Path, default=OUTPUT_DIR)
    args = parser.parse_args()
    setup_logging()

    print("=" * 80)
    print("LSMAP BENCHMARKS")
    print("=" * 80)

    suite = build_suite(args.qasm_dir, args.seed)
    distances = tuple(args.distances or (3,))
    overrides = {"window": args.window, "solver": args.solver}

    print(f"\n[2/3] Running {', '.join(args.modes)} at d={distances}...")
    results = {}
    for mode in args.modes:
        results[mode] = run_mode(mode, suite, distances, args.jobs, overrides)
        print(f"   [OK] {mode}: {results[mode].height} rows")

    print("\n[3/3] Saving results...")
    for mode, df in results.items():
        write_comparison(df, args.out / f"{mode}.csv", args.out / f"{mode}.txt",
                         title=f"{mode.upper()} COMPARISON")
        hue = "arch" if "arch" in df.columns else None
        plot_comparison(df, PLOT_METRICS[mode], args.out / f"{mode}.png", hue=hue)
        print(f"   [OK] Saved plot: {args.out / f'{mode}.png'}")

    print("\n" + "=" * 80)
    print("SUMMARY (mean over the suite)")
    print("-" * 80)
    for mode, df in results.items():
        for col in PLOT_METRICS[mode]:
            print(f"   {mode:<12} {col:<26} {df[col].mean():>8.2f}%")
    print("=" * 80)


if __name__ == "__main__":
    main()
