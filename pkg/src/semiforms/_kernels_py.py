"""Pure-Python scan backend.

Reference implementation of the grid scans: every point is decided with
exact arithmetic, so the "candidates" it reports are already the true
hits.  The compiled backend in ``_kernels`` must produce supersets of
these candidate sets (the caller confirms candidates exactly either
way); equality of the final results is what the backend tests assert.

Slow but obviously correct; intended for small bounds and as the oracle
for the compiled kernel.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from . import _exact

BACKEND_NAME = "pure"


def scan_inequality(f, s, c, lam, bound, sprimes, max_out):
    """Scan canonical points with H_S <= bound for
    0 < prod_{v in S} |F(x)|_v <= c * H_S(x)^lam.

    Returns (points_scanned, budget_hit, candidates); candidates here are
    exactly the solutions.
    """
    scanned = 0
    out = []
    budget_hit = False
    for xs in _exact.canonical_points(f.num_vars, bound, sprimes):
        scanned += 1
        ok, _, _ = _exact.check_point(f, xs, s, c, lam)
        if ok:
            if len(out) >= max_out:
                budget_hit = True
                break
            out.append(xs)
    return scanned, budget_hit, out


def scan_equation(f, rhs, bound, max_out):
    """Scan the full integer box max|x_i| <= bound (all signs, no
    canonicalization) for F(x) = rhs(x) != 0."""
    scanned = 0
    out = []
    budget_hit = False
    for xs in itertools.product(range(-bound, bound + 1), repeat=f.num_vars):
        if not any(xs):
            continue
        scanned += 1
        solves, _ = _exact.check_equation_point(f, rhs, xs)
        if solves:
            if len(out) >= max_out:
                budget_hit = True
                break
            out.append(xs)
    return scanned, budget_hit, out


def scan_audit(data, bound, sprimes, max_out):
    """Audit canonical points against the exact verdict in
    :func:`semiforms._exact.audit_point`.

    Returns (points_checked, budget_hit, candidates) where candidates are
    exactly the violators.
    """
    checked = 0
    out = []
    budget_hit = False
    for xs in _exact.canonical_points(data.num_vars, bound, sprimes):
        result = _exact.audit_point(data, xs)
        if result is None:
            continue
        checked += 1
        if result[0]:
            if len(out) >= max_out:
                budget_hit = True
                break
            out.append(xs)
    return checked, budget_hit, out
