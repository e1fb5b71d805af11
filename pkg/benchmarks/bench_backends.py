"""Timing comparison of the jitted and pure-python curvature backends.

Runs the batched scalar-curvature sweep for the Eguchi-Hanson family
on both backends and prints per-point times plus the speedup.  The
jitted path is exercised on a single point first so compilation cost
shows up in the setup column, not in the sweep numbers.
"""

import argparse
import time

from sfkale import curvature
from sfkale._engine import EGUCHI_HANSON, builtin_engine, resolve_backend


def best_of(engine, pts, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        engine.scalar_curvature_batch(EGUCHI_HANSON, 1.0, pts, 1e-2, 4)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=2000, help="sweep size")
    ap.add_argument("--repeats", type=int, default=3, help="take the best of N sweeps")
    args = ap.parse_args()

    pts = curvature.sample_points(1.0, 8.0, args.samples)
    sweeps = {}
    for backend in ("numpy", "numba"):
        try:
            resolve_backend(backend)
        except RuntimeError as exc:
            print(f"{backend:<8} skipped ({exc})")
            continue
        engine = builtin_engine(backend)
        t0 = time.perf_counter()
        engine.scalar_curvature_batch(EGUCHI_HANSON, 1.0, pts[:1], 1e-2, 4)
        setup = time.perf_counter() - t0
        sweeps[backend] = best_of(engine, pts, args.repeats)
        per_point = 1e6 * sweeps[backend] / args.samples
        print(
            f"{backend:<8} setup {setup:7.2f} s   "
            f"sweep {sweeps[backend]:8.4f} s   {per_point:9.2f} us/point"
        )

    if len(sweeps) == 2:
        print(f"speedup  {sweeps['numpy'] / sweeps['numba']:.1f}x (numba over numpy)")


if __name__ == "__main__":
    main()
