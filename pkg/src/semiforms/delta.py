"""Distributive constant of a family of forms with respect to a variety.

For a family Q_1, ..., Q_q of nonzero forms and a projective variety V of
dimension m >= 0, the distributive constant is

    delta = max over nonempty subsets G of {1..q} of
            #G / (m - dim(intersection of the Q_j* for j in G, with V))

where an empty intersection contributes ratio 0 (the denominator is
+infinity) and an intersection of full dimension m contributes the
:data:`INFINITE` marker (some member vanishes identically on a top
dimensional component of V; the constant is then infinite).

Subsets are enumerated by increasing size.  With pruning enabled, a
subset whose intersection is empty, or whose best conceivable superset
ratio q / (m - dim) cannot beat the current maximum, cuts all of its
supersets: intersection dimension only drops as members are added, so the
skipped ratios are provably dominated.  Full enumeration (``prune=False``)
evaluates all 2^q - 1 subsets and is kept as the reference oracle.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import BudgetExceededError, SpecError
from .groebner import (EMPTY, Budget, Ideal, ProjectiveVariety, groebner_basis,
                       normal_form, proj_dim, vanishes_on)
from .poly import PolyFamily


class _Infinite:
    """Marker for an infinite ratio or distributive constant."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
Ratio = Union[Fraction, _Infinite]


def ratio_le(a: Ratio, b: Ratio) -> bool:
    """a <= b with INFINITE as the top element."""
    if b is INFINITE:
        return True
    if a is INFINITE:
        return False
    return a <= b


@dataclass(frozen=True)
class SubsetRecord:
    """One evaluated subset: 1-based member indices, the projective
    dimension of the joint zero set inside V, and the resulting ratio."""

    gamma: tuple
    intersection_dim: object  # int or EMPTY
    ratio: Ratio


@dataclass(frozen=True)
class DeltaReport:
    """Result of a distributive-constant computation.

    ``witness`` is the subset achieving the maximum, smallest by size and
    then lexicographically.  ``records`` lists evaluated subsets sorted by
    (size, lex); ``complete`` is True when every nonempty subset was
    evaluated (no pruning or early exit fired).
    """

    delta: Ratio
    witness: tuple
    records: tuple
    complete: bool
    dim_v: int
    q: int


def _subset_dim(args):
    """Worker: projective dimension of V cut by the members named in gamma."""
    v_ideal, members, gamma, budget = args
    gens = tuple(members[j - 1] for j in gamma)
    try:
        return gamma, proj_dim(v_ideal.extended_by(gens), budget)
    except BudgetExceededError as exc:
        return gamma, exc


def _subset_ratio(size: int, dim, dim_v: int) -> Ratio:
    if dim is EMPTY:
        return Fraction(0)
    if dim == dim_v:
        return INFINITE
    return Fraction(size, dim_v - dim)


def distributive_constant(family: PolyFamily, variety: ProjectiveVariety,
                          *, prune: bool = True, budget: Optional[Budget] = None,
                          workers: int = 1) -> DeltaReport:
    """Compute the distributive constant of ``family`` with respect to
    ``variety``, with a witness subset and per-subset records.

    Pruned and full enumeration always agree on ``delta`` and ``witness``;
    pruning only omits provably dominated records (``complete`` False).
    """
    if family.num_vars != variety.num_vars:
        raise SpecError("family and variety variable counts differ")
    if variety.is_empty:
        raise SpecError("variety is empty; the distributive constant is undefined")
    dim_v = variety.dim
    q = len(family)
    members = family.members

    best: Optional[Ratio] = None
    witness = None
    records = []
    dead = set()
    evaluated = 0
    total = 2 ** q - 1

    for size in range(1, q + 1):
        wave = []
        for gamma in itertools.combinations(range(1, q + 1), size):
            if prune and any(frozenset(gamma) - {j} in dead for j in gamma):
                dead.add(frozenset(gamma))
                continue
            wave.append(gamma)
        if not wave:
            continue
        tasks = [(variety.ideal, members, gamma, budget) for gamma in wave]
        if workers > 1 and len(wave) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_subset_dim, tasks))
        else:
            results = [_subset_dim(t) for t in tasks]
        for gamma, dim in results:
            if isinstance(dim, BudgetExceededError):
                raise BudgetExceededError("budget exceeded while intersecting",
                                          gamma=gamma, **dim.context)
            evaluated += 1
            ratio = _subset_ratio(len(gamma), dim, dim_v)
            records.append(SubsetRecord(gamma, dim, ratio))
            if best is None or not ratio_le(ratio, best):
                best = ratio
                witness = gamma
            if prune:
                if dim is EMPTY:
                    dead.add(frozenset(gamma))
                elif dim != dim_v and ratio_le(Fraction(q, dim_v - dim), best):
                    dead.add(frozenset(gamma))
        if best is INFINITE:
            break

    complete = evaluated == total
    return DeltaReport(delta=best, witness=witness, records=tuple(records),
                       complete=complete, dim_v=dim_v, q=q)


@dataclass(frozen=True)
class RestrictionBound:
    """Comparison of the constant on a subvariety against the ambient bound
    (dim V - dim V' + 1) * delta."""

    delta_sub: Ratio
    delta_ambient: Ratio
    bound: Ratio
    holds: bool
    dim_v: int
    dim_sub: int


def check_subvariety_bound(family: PolyFamily, variety: ProjectiveVariety,
                           subvariety: ProjectiveVariety, *,
                           budget: Optional[Budget] = None,
                           workers: int = 1) -> RestrictionBound:
    """Verify delta_{Q,V'} <= (dim V - dim V' + 1) * delta_{Q,V} for V' in V.

    Preconditions checked exactly: V' is contained in V (every generator of
    V's ideal reduces to zero modulo V''s basis) and no member vanishes
    identically on V'.
    """
    if subvariety.num_vars != variety.num_vars:
        raise SpecError("variety and subvariety variable counts differ")
    if subvariety.is_empty:
        raise SpecError("subvariety is empty")
    gb_sub = groebner_basis(subvariety.ideal, budget)
    for g in variety.ideal.generators:
        if not normal_form(g, gb_sub, budget).is_zero:
            raise SpecError(f"subvariety is not contained in the variety: "
                            f"{g} does not vanish on it")
    for j, member in enumerate(family, start=1):
        if vanishes_on(member, subvariety, budget):
            raise SpecError(f"member {j} ({member}) vanishes identically "
                            "on the subvariety")
    delta_sub = distributive_constant(family, subvariety,
                                      budget=budget, workers=workers).delta
    delta_amb = distributive_constant(family, variety,
                                      budget=budget, workers=workers).delta
    factor = variety.dim - subvariety.dim + 1
    bound = INFINITE if delta_amb is INFINITE else factor * delta_amb
    return RestrictionBound(delta_sub=delta_sub, delta_ambient=delta_amb,
                            bound=bound, holds=ratio_le(delta_sub, bound),
                            dim_v=variety.dim, dim_sub=subvariety.dim)


def is_subgeneral_position(family: PolyFamily, variety: ProjectiveVariety,
                           position: int, *, budget: Optional[Budget] = None) -> bool:
    """Is the family in l-subgeneral position (l = ``position``) with
    respect to V: does every choice of l + 1 members meet V in the empty
    set?  Requires q >= l + 1."""
    if variety.is_empty:
        raise SpecError("variety is empty")
    if family.num_vars != variety.num_vars:
        raise SpecError("family and variety variable counts differ")
    q = len(family)
    if q <= position:
        raise SpecError(f"subgeneral position needs at least {position + 1} "
                        f"members, family has {q}")
    for gamma in itertools.combinations(range(q), position + 1):
        gens = tuple(family.members[j] for j in gamma)
        if proj_dim(variety.ideal.extended_by(gens), budget) is not EMPTY:
            return False
    return True


@dataclass(frozen=True)
class PositionBound:
    """Bounds on delta implied by l-subgeneral position:
    1 <= delta <= l - dim V + 1."""

    delta: Ratio
    lower: Fraction
    upper: Fraction
    holds: bool
    position: int
    dim_v: int


def check_subgeneral_bound(family: PolyFamily, variety: ProjectiveVariety,
                           position: int, *, budget: Optional[Budget] = None,
                           workers: int = 1) -> PositionBound:
    """For a family in l-subgeneral position, verify
    1 <= delta <= l - dim V + 1.  Errors if the family is not in
    l-subgeneral position."""
    if not is_subgeneral_position(family, variety, position, budget=budget):
        raise SpecError(f"family is not in {position}-subgeneral position")
    delta = distributive_constant(family, variety,
                                  budget=budget, workers=workers).delta
    lower = Fraction(1)
    upper = Fraction(position - variety.dim + 1)
    holds = ratio_le(lower, delta) and ratio_le(delta, upper)
    return PositionBound(delta=delta, lower=lower, upper=upper, holds=holds,
                         position=position, dim_v=variety.dim)
