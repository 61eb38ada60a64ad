"""Bounded-height searches and desk-scale evidence gathering.

Everything here is exact where a verdict is at stake:

* solution and equation searches decide their inequalities in rational
  arithmetic (floats never influence membership),
* hypothesis verdicts compare exact fractions,
* audits classify violators exactly and only report log values as floats.

Enumeration is by canonical S-unit class representatives in increasing
S-height, ties broken lexicographically, so reports are deterministic
and resumable.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from . import _exact, kernels
from .delta import INFINITE, DeltaReport, Ratio, distributive_constant
from .errors import BudgetExceededError, SpecError
from .groebner import Budget, ProjectiveVariety
from .heights import (
    PlaceSet,
    canonical_rep,
    log_exact,
    poly_height_exact,
    proj_height_exact,
)
from .poly import HomogeneousPoly, Polynomial, PolyFamily

Rational = Union[int, Fraction]


def _fraction(value: Rational, what: str) -> Fraction:
    if isinstance(value, float):
        raise SpecError(f"{what} must be an exact rational, not a float")
    return Fraction(value)


@dataclass(frozen=True)
class SearchParams:
    """Parameters of an inequality search: find S-integer points with
    ``0 < prod_{v in S} |F(x)|_v <= c * H_S(x)^lam`` and ``H_S <= bound``."""

    s: PlaceSet
    c: Fraction
    lam: Fraction
    height_bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", _fraction(self.c, "c"))
        object.__setattr__(self, "lam", _fraction(self.lam, "lambda"))
        object.__setattr__(
            self, "height_bound", _fraction(self.height_bound, "height bound")
        )
        if self.c <= 0:
            raise SpecError("c must be positive")
        if self.height_bound <= 0:
            raise SpecError("the height bound must be positive")


@dataclass(frozen=True)
class HypothesisVerdict:
    """Exact check of the finiteness hypotheses for a factored form.

    For a family of q forms of degrees d_j on a variety of dimension m
    with distributive constant delta, the critical bound is
    ``d * delta * (m + 2)^2 / 4`` where ``d = max d_j`` and
    ``ell = sum d_j`` is the total degree.  ``degree_ok`` requires
    ``ell > bound`` and ``lambda_ok`` requires ``lam < ell - bound``.
    An infinite delta fails both flags.
    """

    ell: int
    d: int
    q: int
    delta: Ratio
    m: int
    bound: Ratio
    lam: Fraction
    degree_ok: bool
    lambda_ok: bool


def hypothesis_verdict(
    family: PolyFamily,
    variety: ProjectiveVariety,
    lam: Rational,
    *,
    budget: Optional[Budget] = None,
    workers: int = 1,
) -> HypothesisVerdict:
    """Evaluate the degree and exponent hypotheses exactly."""
    lam = _fraction(lam, "lambda")
    report = distributive_constant(family, variety, budget=budget, workers=workers)
    degrees = family.degrees
    ell = sum(degrees)
    d = max(degrees)
    m = variety.dim
    if variety.is_empty:
        raise SpecError("the variety is empty; the hypotheses are undefined")
    if report.delta is INFINITE:
        return HypothesisVerdict(
            ell=ell,
            d=d,
            q=len(family),
            delta=INFINITE,
            m=m,
            bound=INFINITE,
            lam=lam,
            degree_ok=False,
            lambda_ok=False,
        )
    bound = d * report.delta * Fraction((m + 2) ** 2, 4)
    return HypothesisVerdict(
        ell=ell,
        d=d,
        q=len(family),
        delta=report.delta,
        m=m,
        bound=bound,
        lam=lam,
        degree_ok=ell > bound,
        lambda_ok=lam < ell - bound,
    )


@dataclass(frozen=True)
class SolutionClass:
    """One S-unit class of solutions: a canonical representative, the
    members actually found, and the exact product of S-norms of F at the
    representative."""

    representative: Tuple[int, ...]
    members_found: Tuple[Tuple[int, ...], ...]
    fs_value: Fraction
    height_s: Fraction


def enumerate_s_points(
    s: PlaceSet,
    ncoords: int,
    bound: Rational,
    *,
    max_points: Optional[int] = None,
) -> Iterator[Tuple[int, ...]]:
    """Stream one canonical representative per S-unit class of nonzero
    S-integer tuples with ``H_S <= bound``, in increasing height then
    lexicographic order.  Bounds below 1 yield an empty stream."""
    if ncoords < 1:
        raise SpecError("ncoords must be positive")
    bound = _fraction(bound, "bound")
    if bound < 1:
        return
    emitted = 0
    for point in _exact.canonical_points(ncoords, math.floor(bound), s.primes):
        if max_points is not None and emitted >= max_points:
            raise BudgetExceededError(
                "enumeration budget exceeded",
                max_points=max_points,
                bound=str(bound),
            )
        emitted += 1
        yield point


def check_inequality(f: HomogeneousPoly, x: Sequence, params: SearchParams) -> bool:
    """Exact verdict of ``0 < prod_{v in S} |F(x)|_v <= c * H_S(x)^lam``."""
    if f.num_vars != len(x):
        raise SpecError("point length does not match the number of variables")
    ok, _, _ = _exact.check_point(f, tuple(x), params.s, params.c, params.lam)
    return ok


def search_solutions(
    f: HomogeneousPoly,
    params: SearchParams,
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
) -> List[SolutionClass]:
    """All S-unit solution classes with a canonical representative of
    ``H_S <= height_bound``, sorted by height then lexicographically."""
    if f.is_zero:
        raise SpecError("the searched form must be nonzero")
    _, solutions = kernels.inequality_scan(
        f,
        params.s,
        params.c,
        params.lam,
        math.floor(params.height_bound),
        max_points=max_points,
        backend=backend,
    )
    return [
        SolutionClass(
            representative=point,
            members_found=(point,),
            fs_value=fs_value,
            height_s=hs_value,
        )
        for point, hs_value, fs_value in solutions
    ]


def equation_search(
    f: HomogeneousPoly,
    rhs: Union[Polynomial, Rational],
    s: PlaceSet,
    bound: Rational,
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
) -> List[SolutionClass]:
    """All integer points in the box ``max|x_i| <= bound`` with
    ``F(x) = rhs(x) != 0``, grouped by S-unit proportionality for
    reporting (equation solutions themselves are not S-unit invariant).

    Classes are sorted by the S-height of the canonical representative,
    then lexicographically; members within a class sort lexicographically.
    """
    if f.is_zero:
        raise SpecError("the searched form must be nonzero")
    if not isinstance(rhs, Polynomial):
        rhs = Polynomial.constant(f.num_vars, _fraction(rhs, "rhs"))
    if rhs.is_zero:
        raise SpecError("the right-hand side must be nonzero")
    if rhs.num_vars != f.num_vars:
        raise SpecError("F and rhs variable counts differ")
    bound = _fraction(bound, "bound")
    if bound < 1:
        return []
    _, solutions = kernels.equation_scan(
        f, rhs, math.floor(bound), max_points=max_points, backend=backend
    )
    grouped = {}
    for point in solutions:
        rep = canonical_rep(point, s)
        grouped.setdefault(rep, []).append(point)
    classes = []
    for rep, members in grouped.items():
        value = f.evaluate(rep)
        classes.append(
            SolutionClass(
                representative=rep,
                members_found=tuple(sorted(members)),
                fs_value=_exact.s_norm_product(value, s),
                height_s=Fraction(max(abs(v) for v in rep)),
            )
        )
    classes.sort(key=lambda cls: (cls.height_s, cls.representative))
    return classes


class AuditMode(enum.Enum):
    """Which right-hand-side coefficient the Weil-sum audit uses.

    LINEAR audits against ``(delta*(m+1) + eps) * h(x)`` (the bound that
    holds outside a finite union of proper subvarieties); SQUARE audits
    against ``(delta*(m/2+1)^2 + eps) * h(x)`` (the bound that holds for
    all but finitely many points).
    """

    LINEAR = "linear"
    SQUARE = "square"


@dataclass(frozen=True)
class AuditRung:
    """Audit outcome at one height bound."""

    bound: Fraction
    points_checked: int
    violators: Tuple[Tuple[Tuple[int, ...], float, float], ...]


@dataclass(frozen=True)
class AuditReport:
    """Weil-sum audit across a ladder of height bounds.

    ``violators`` and ``points_checked`` describe the top rung;
    ``stabilized`` is true when the violator sets of the top two rungs
    coincide (evidence that the exceptional set is finite).
    """

    epsilon: Fraction
    mode: AuditMode
    rho: Fraction
    delta: Fraction
    m: int
    points_checked: int
    violators: Tuple[Tuple[Tuple[int, ...], float, float], ...]
    stabilized: bool
    rungs: Tuple[AuditRung, ...]


def audit_coefficient(delta: Fraction, m: int, epsilon: Fraction, mode: AuditMode) -> Fraction:
    """The exact right-hand-side coefficient rho for the audit mode."""
    if mode is AuditMode.LINEAR:
        return delta * (m + 1) + epsilon
    return delta * Fraction((m + 2) ** 2, 4) + epsilon


def subspace_audit(
    family: PolyFamily,
    variety: ProjectiveVariety,
    s: PlaceSet,
    epsilon: Rational,
    mode: AuditMode,
    bound_ladder: Sequence[Rational],
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
    budget: Optional[Budget] = None,
    workers: int = 1,
) -> AuditReport:
    """Audit the Weil-sum inequality
    ``sum_j sum_{v in S} lambda_{Q_j,v}(x)/deg Q_j <= rho * h(x)``
    over all canonical points on the variety up to each ladder bound,
    skipping points on any member's zero set.

    Violators are decided exactly; the reported lhs/rhs are logs.
    """
    epsilon = _fraction(epsilon, "epsilon")
    if epsilon <= 0:
        raise SpecError("epsilon must be positive")
    ladder = [_fraction(b, "ladder bound") for b in bound_ladder]
    if not ladder:
        raise SpecError("the bound ladder must be nonempty")
    if any(b2 <= b1 for b1, b2 in zip(ladder, ladder[1:])):
        raise SpecError("the bound ladder must be strictly increasing")
    if variety.is_empty:
        raise SpecError("the variety is empty; the audit domain is empty")
    report = distributive_constant(family, variety, budget=budget, workers=workers)
    if report.delta is INFINITE:
        raise SpecError(
            "a family member vanishes identically on the variety; "
            "Weil functions are undefined on all of it"
        )
    m = variety.dim
    rho = audit_coefficient(report.delta, m, epsilon, mode)
    data = _exact.make_audit_data(family, variety.ideal.generators, s, rho)
    rungs = []
    for b in ladder:
        checked, violators = kernels.audit_scan(
            data, math.floor(b), max_points=max_points, backend=backend
        )
        rungs.append(
            AuditRung(bound=b, points_checked=checked, violators=tuple(violators))
        )
    if len(rungs) >= 2:
        top_points = {v[0] for v in rungs[-1].violators}
        prev_points = {v[0] for v in rungs[-2].violators}
        stabilized = top_points == prev_points
    else:
        stabilized = False
    return AuditReport(
        epsilon=epsilon,
        mode=mode,
        rho=rho,
        delta=report.delta,
        m=m,
        points_checked=rungs[-1].points_checked,
        violators=rungs[-1].violators,
        stabilized=stabilized,
        rungs=tuple(rungs),
    )


@dataclass(frozen=True)
class RatioReport:
    """Height ratios h(F_n)/h(x_n) with a trend summary.

    The summary classifies consecutive differences ("decreasing",
    "increasing", "constant", or "mixed"); no limit claim is made, since
    a finite table cannot decide an asymptotic statement.
    """

    ratios: Tuple[float, ...]
    summary: str


def height_ratio_report(
    pairs: Sequence[Tuple[Polynomial, Sequence]],
) -> RatioReport:
    """Ratio h(F_n)/h(x_n) per pair; rejects pairs with h(x_n) = 0."""
    ratios = []
    for index, (poly, point) in enumerate(pairs):
        height = proj_height_exact(point)
        if height == 1:
            raise SpecError(
                f"pair {index}: h(x) = 0 (the point is a unit-coordinate "
                "point), so the ratio is undefined"
            )
        num = poly_height_exact(poly)
        ratios.append(log_exact(num) / math.log(height) if num != 1 else 0.0)
    summary = "constant"
    if any(b > a for a, b in zip(ratios, ratios[1:])):
        if any(b < a for a, b in zip(ratios, ratios[1:])):
            summary = "mixed"
        else:
            summary = "increasing"
    elif any(b < a for a, b in zip(ratios, ratios[1:])):
        summary = "decreasing"
    return RatioReport(ratios=tuple(ratios), summary=summary)


@dataclass(frozen=True)
class StabilityTable:
    """Solution-class counts along a ladder of height bounds."""

    bounds: Tuple[Fraction, ...]
    counts: Tuple[int, ...]
    stable: bool


def growth_stability(
    f: HomogeneousPoly,
    params: SearchParams,
    bound_ladder: Sequence[Rational],
    *,
    max_points: int = 1_000_000,
    backend: Optional[str] = None,
) -> StabilityTable:
    """Class counts at each ladder rung (one scan at the top rung,
    bucketed by height).  ``stable`` is true when the last two counts
    agree; a single-rung ladder is trivially stable."""
    ladder = [_fraction(b, "ladder bound") for b in bound_ladder]
    if not ladder:
        raise SpecError("the bound ladder must be nonempty")
    if any(b2 <= b1 for b1, b2 in zip(ladder, ladder[1:])):
        raise SpecError("the bound ladder must be strictly increasing")
    top = SearchParams(
        s=params.s, c=params.c, lam=params.lam, height_bound=ladder[-1]
    )
    classes = search_solutions(f, top, max_points=max_points, backend=backend)
    counts = tuple(
        sum(1 for cls in classes if cls.height_s <= b) for b in ladder
    )
    stable = counts[-1] == counts[-2] if len(counts) >= 2 else True
    return StabilityTable(bounds=tuple(ladder), counts=counts, stable=stable)
