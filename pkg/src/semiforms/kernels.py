"""Backend selection and exact confirmation for the grid scans.

The scans (inequality search, equation search, Weil-sum audit) walk large
integer boxes.  A compiled extension (``semiforms._kernels``) walks them
in C when it was built; otherwise the pure-Python reference backend
(``semiforms._kernels_py``) is used.  Either way the fast path only
produces *candidates*; every candidate is re-decided here with exact
rational arithmetic, so both backends return identical results and the
compiled one is purely an accelerator.

Mode selection for the compiled backend:

* ``int64`` -- used when every Horner intermediate of the integer-scaled
  polynomials is guaranteed below 2^62 on the box (see
  :meth:`semiforms._exact.ScaledPoly.term_bound`); values are then exact
  in C.
* ``float`` -- falls back to float64 evaluation with a rigorous error
  margin; only sound when no finite places are involved, since p-adic
  valuations cannot be read off a float.
* anything else routes to the pure backend.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import _exact
from .errors import BudgetExceededError, SpecError
from .heights import PlaceSet, log_exact, ord_at
from .poly import Polynomial

try:  # pragma: no cover - exercised via whichever backend is present
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

from . import _kernels_py as _pure

#: Name of the backend used by default.
BACKEND = _compiled.BACKEND_NAME if _compiled is not None else _pure.BACKEND_NAME

#: Exclusive bound for exact int64 kernel arithmetic.
INT64_LIMIT = 2**62


def available_backends() -> Tuple[str, ...]:
    """Names of the usable backends, preferred first."""
    if _compiled is not None:
        return ("compiled", "pure")
    return ("pure",)


def _resolve(backend: Optional[str]) -> str:
    if backend is None:
        return available_backends()[0]
    if backend not in ("compiled", "pure"):
        raise SpecError(f"unknown backend {backend!r}")
    if backend == "compiled" and _compiled is None:
        raise SpecError("compiled backend requested but the extension is not built")
    return backend


def _flatten(scaled: _exact.ScaledPoly) -> Tuple[List[int], List[int], int]:
    exps = [e for term in scaled.exps for e in term]
    return exps, list(scaled.coefs), scaled.den


def _fits_int64(scaled: _exact.ScaledPoly, bound: int) -> bool:
    return scaled.term_bound(bound) < INT64_LIMIT and scaled.den < INT64_LIMIT


def _pick_mode(fits: bool, sprimes: Sequence[int], force_mode: Optional[str]) -> str:
    if force_mode is not None:
        if force_mode not in ("int64", "float"):
            raise SpecError(f"unknown kernel mode {force_mode!r}")
        if force_mode == "float" and sprimes:
            raise SpecError("float kernel mode is unsound with finite places")
        return force_mode
    if fits:
        return "int64"
    if not sprimes:
        return "float"
    return "pure"


def _budget(kind: str, **context) -> BudgetExceededError:
    return BudgetExceededError(f"{kind} hit the result budget", **context)


def inequality_scan(
    f: Polynomial,
    s: PlaceSet,
    c: Fraction,
    lam: Fraction,
    bound: int,
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
    force_mode: Optional[str] = None,
) -> Tuple[int, List[Tuple[Tuple[int, ...], Fraction, Fraction]]]:
    """Find all canonical S-integer points with ``H_S(x) <= bound`` and
    ``0 < prod_{v in S} |F(x)|_v <= c * H_S(x)^lam``.

    Returns ``(points_scanned, solutions)`` with solutions as
    ``(point, H_S, F_S)`` triples sorted by height then lexicographically.
    Raises :class:`BudgetExceededError` when more than ``max_points``
    candidates turn up.
    """
    if bound < 1:
        return 0, []
    name = _resolve(backend)
    sprimes = list(s.primes)
    if name == "pure":
        scanned, hit, cands = _pure.scan_inequality(
            f, s, c, lam, bound, sprimes, max_points
        )
    else:
        scaled = _exact.scale_to_integers(f)
        mode = _pick_mode(_fits_int64(scaled, bound), sprimes, force_mode)
        if mode == "pure":
            scanned, hit, cands = _pure.scan_inequality(
                f, s, c, lam, bound, sprimes, max_points
            )
        else:
            exps, coefs, den = _flatten(scaled)
            scanned, hit, cands = _compiled.scan_inequality(
                f.num_vars,
                bound,
                sprimes,
                exps,
                coefs,
                den,
                float(c),
                float(lam),
                mode == "int64",
                max_points,
            )
    if hit:
        raise _budget("inequality scan", bound=bound, max_points=max_points)
    solutions = []
    for xs in cands:
        point = tuple(int(v) for v in xs)
        ok, fs_value, hs_value = _exact.check_point(f, point, s, c, lam)
        if ok:
            solutions.append((point, hs_value, fs_value))
    solutions.sort(key=lambda item: (item[1], item[0]))
    return scanned, solutions


def equation_scan(
    f: Polynomial,
    rhs: Polynomial,
    bound: int,
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
    force_mode: Optional[str] = None,
) -> Tuple[int, List[Tuple[int, ...]]]:
    """Find all nonzero integer points in the box ``max|x_i| <= bound``
    with ``F(x) = rhs(x)`` and ``F(x) != 0``.

    Returns ``(points_scanned, solutions)`` with solutions sorted
    lexicographically.
    """
    if bound < 1:
        return 0, []
    name = _resolve(backend)
    if name == "pure":
        scanned, hit, cands = _pure.scan_equation(f, rhs, bound, max_points)
    else:
        diff = f - rhs
        scaled_d = _exact.scale_to_integers(diff)
        scaled_f = _exact.scale_to_integers(f)
        fits = _fits_int64(scaled_d, bound) and _fits_int64(scaled_f, bound)
        mode = _pick_mode(fits, [], force_mode)
        d_exps, d_coefs, d_den = _flatten(scaled_d)
        f_exps, f_coefs, f_den = _flatten(scaled_f)
        scanned, hit, cands = _compiled.scan_equation(
            f.num_vars,
            bound,
            d_exps,
            d_coefs,
            d_den,
            f_exps,
            f_coefs,
            f_den,
            mode == "int64",
            max_points,
        )
    if hit:
        raise _budget("equation scan", bound=bound, max_points=max_points)
    solutions = []
    for xs in cands:
        point = tuple(int(v) for v in xs)
        solves, _ = _exact.check_equation_point(f, rhs, point)
        if solves:
            solutions.append(point)
    solutions.sort()
    return scanned, solutions


def _audit_consts(data: _exact.AuditData) -> List[float]:
    """Per-member float constant K_j folding the place-wise norms of Q_j
    and its integer scaling into one number (see the kernel docstring)."""
    consts = []
    primes = data.s.primes
    for j, norms in enumerate(data.norms):
        den = data.scaled[j].den
        value = log_exact(norms[0]) + log_exact(Fraction(den))
        for i, p in enumerate(primes):
            value += log_exact(norms[i + 1])
            value -= ord_at(Fraction(den), p) * log_exact(Fraction(p))
        consts.append(value)
    return consts


def audit_scan(
    data: _exact.AuditData,
    bound: int,
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
) -> Tuple[int, List[Tuple[Tuple[int, ...], float, float]]]:
    """Audit every canonical point on the variety with ``H_S <= bound``
    against the Weil-sum inequality encoded in ``data``.

    Returns ``(points_checked, violators)`` with violators as
    ``(point, lhs_log, rhs_log)`` sorted by height then lexicographically.
    """
    if bound < 1:
        return 0, []
    name = _resolve(backend)
    sprimes = list(data.s.primes)
    use_compiled = name == "compiled" and all(
        _fits_int64(sc, bound) for sc in (*data.scaled, *data.v_scaled)
    )
    if use_compiled:
        fam_exps, fam_coefs, fam_dens = [], [], []
        for sc in data.scaled:
            exps, coefs, den = _flatten(sc)
            fam_exps.append(exps)
            fam_coefs.append(coefs)
            fam_dens.append(den)
        v_exps, v_coefs, v_dens = [], [], []
        for sc in data.v_scaled:
            exps, coefs, den = _flatten(sc)
            v_exps.append(exps)
            v_coefs.append(coefs)
            v_dens.append(den)
        checked, hit, cands = _compiled.scan_audit(
            data.num_vars,
            bound,
            sprimes,
            fam_exps,
            fam_coefs,
            fam_dens,
            list(data.degrees),
            _audit_consts(data),
            v_exps,
            v_coefs,
            v_dens,
            float(data.rho),
            max_points,
        )
    else:
        checked, hit, cands = _pure.scan_audit(data, bound, sprimes, max_points)
    if hit:
        raise _budget("audit scan", bound=bound, max_points=max_points)
    violators = []
    for xs in cands:
        point = tuple(int(v) for v in xs)
        result = _exact.audit_point(data, point)
        if result is None:  # pragma: no cover - kernels only emit audited points
            raise SpecError("kernel reported a point outside the audit domain")
        violates, lhs_log, rhs_log = result
        if violates:
            violators.append((point, lhs_log, rhs_log))
    violators.sort(key=lambda item: (max(abs(v) for v in item[0]), item[0]))
    return checked, violators
