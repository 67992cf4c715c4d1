"""Throughput comparison: compiled integration kernel vs pure Python.

Runs the same driven two-copy and single-copy scenarios through both
backends and reports steps per second and the speedup. Usage:

    python3 benchmarks/bench_backends.py [--dt 1e-4] [--repeat 3]
"""
import argparse
import time

import numpy as np

from lhdef import backend, deform, make_class
from lhdef.dynamics import assemble, assemble_two_copy, integrate_rk4
from lhdef.presets import PRESET_CURVES, SINGLE_START, TWO_COPY_START


def time_run(field, start, dt, backend_name, repeat):
    best = float("inf")
    traj = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        traj = integrate_rk4(field, start, 0.0, 1.0, dt,
                             backend_name=backend_name)
        best = min(best, time.perf_counter() - t0)
    steps = len(traj.times) - 1
    return steps / best, traj


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dt", type=float, default=1e-4)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not backend.compiled_available():
        print("compiled kernel not built; nothing to compare "
              "(pure Python is the active backend)")
        return

    dsys = deform(make_class("P2"), 0.2)
    curves = PRESET_CURVES["wave"]
    scenarios = [
        ("single copy, P2, z=0.2", assemble(dsys, curves),
         SINGLE_START[dsys.base.tag]),
        ("two copy,   P2, z=0.2", assemble_two_copy(dsys, curves),
         TWO_COPY_START[dsys.base.tag]),
    ]
    print(f"dt={args.dt:g}, interval [0, 1], best of {args.repeat}\n")
    print(f"{'scenario':<24}{'python steps/s':>16}{'compiled steps/s':>18}"
          f"{'speedup':>10}{'max |diff|':>12}")
    for name, field, start in scenarios:
        py_rate, py_traj = time_run(field, start, args.dt, "python", args.repeat)
        c_rate, c_traj = time_run(field, start, args.dt, "compiled", args.repeat)
        diff = float(np.max(np.abs(py_traj.states - c_traj.states)))
        print(f"{name:<24}{py_rate:>16.0f}{c_rate:>18.0f}"
              f"{c_rate / py_rate:>9.1f}x{diff:>12.2e}")


if __name__ == "__main__":
    main()
