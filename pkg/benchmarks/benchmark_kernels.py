#!/usr/bin/env python3
"""Compare the compiled scan kernels against the pure-Python reference.

Runs the three scan kinds (inequality, equation, audit) on matched inputs
with both backends, checks the results agree, and prints a timing table.

    python benchmarks/benchmark_kernels.py [--bound N]
"""

import argparse
import time
from fractions import Fraction

from semiforms import _exact, kernels
from semiforms.heights import PlaceSet
from semiforms.poly import parse_poly

F = Fraction


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return time.perf_counter() - start, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=400,
                        help="height bound for every scan (default 400)")
    args = parser.parse_args()
    bound = args.bound

    if "compiled" not in kernels.available_backends():
        print("compiled backend not built; nothing to compare")
        return 1

    pell = parse_poly("x0^2 - 2*x1^2", 2)
    one = parse_poly("1", 2)
    lines = [parse_poly(t, 2) for t in ("x0", "x1", "x0 + x1")]
    audit_data = _exact.make_audit_data(lines, [], PlaceSet([2]), F(9, 4))

    jobs = [
        ("inequality S={inf}",
         kernels.inequality_scan, (pell, PlaceSet([]), F(2), F(1, 2), bound),
         {"max_points": 10_000_000}),
        ("inequality S={inf,2,3}",
         kernels.inequality_scan, (pell, PlaceSet([2, 3]), F(2), F(1, 2), bound),
         {"max_points": 10_000_000}),
        ("equation F=1",
         kernels.equation_scan, (pell, one, bound),
         {"max_points": 10_000_000}),
        ("audit rho=9/4",
         kernels.audit_scan, (audit_data, bound),
         {"max_points": 10_000_000}),
    ]

    print(f"{'scan':<24} {'pure':>10} {'compiled':>10} {'speedup':>9}   result")
    print("-" * 72)
    for name, fn, fargs, fkwargs in jobs:
        t_pure, r_pure = timed(fn, *fargs, backend="pure", **fkwargs)
        t_comp, r_comp = timed(fn, *fargs, backend="compiled", **fkwargs)
        if name.startswith("audit"):
            agree = (r_pure[0] == r_comp[0]
                     and [v[0] for v in r_pure[1]] == [v[0] for v in r_comp[1]])
            summary = f"{r_comp[0]} checked, {len(r_comp[1])} violators"
        else:
            agree = r_pure == r_comp
            summary = f"{r_comp[0]} scanned, {len(r_comp[1])} hits"
        flag = "" if agree else "  <-- MISMATCH"
        print(f"{name:<24} {t_pure:>9.3f}s {t_comp:>9.3f}s {t_pure / t_comp:>8.1f}x"
              f"   {summary}{flag}")
        if not agree:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
