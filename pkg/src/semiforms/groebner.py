"""Groebner bases over Q and the projective geometry built on them.

The engine is a budgeted Buchberger loop in the package-wide grevlex
order.  Intermediate polynomials are content-normalized (coprime integer
coefficients, positive leading coefficient) to keep numbers small; the
returned basis is the unique reduced monic Groebner basis, sorted by
increasing leading monomial, so results are deterministic.

Projective dimension is read off the reduced basis combinatorially:
the affine cone dimension equals the largest number of variables U such
that no leading monomial involves only variables from U, and the
projective dimension is that count minus one.  A cone of dimension zero
(or the unit ideal) means the projective set is empty, reported with the
distinct :data:`EMPTY` marker, never an integer.

``vanishes_on`` decides whether a form vanishes identically on a variety
by radical membership via the Rabinowitsch trick: Q vanishes on V(I)
over the algebraic closure iff 1 lies in the ideal I + (1 - t*Q) after
adjoining a fresh variable t.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import BudgetExceededError, SpecError
from .poly import Exponents, HomogeneousPoly, Polynomial, grevlex_key


class _Empty:
    """Marker for the empty projective set (never confused with an int)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()
ProjDim = Union[int, _Empty]


@dataclass(frozen=True)
class Budget:
    """Caps for the Buchberger loop.  ``max_steps`` counts reduction steps
    and pair selections across a single call."""

    max_steps: int = 2_000_000
    max_basis: int = 1_000


DEFAULT_BUDGET = Budget()


class _StepCounter:
    __slots__ = ("steps", "budget", "stage")

    def __init__(self, budget: Budget, stage: str):
        self.steps = 0
        self.budget = budget
        self.stage = stage

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.budget.max_steps:
            raise BudgetExceededError("computation budget exceeded",
                                      stage=self.stage, steps=self.steps,
                                      max_steps=self.budget.max_steps)


class Ideal:
    """Homogeneous ideal given by generating forms.  An empty generator
    list is the zero ideal (the full projective space)."""

    __slots__ = ("num_vars", "generators")

    def __init__(self, num_vars: int, generators: Iterable[HomogeneousPoly] = ()):
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, HomogeneousPoly):
                raise SpecError("ideal generators must be forms (HomogeneousPoly)")
            if g.num_vars != num_vars:
                raise SpecError(f"generator in {g.num_vars} variables added to an "
                                f"ideal in {num_vars}")
            if g.is_zero:
                raise SpecError("zero polynomial is not a valid generator")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "generators", generators)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    def __reduce__(self):
        return (Ideal, (self.num_vars, self.generators))

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return (self.num_vars, self.generators) == (other.num_vars, other.generators)

    def __hash__(self):
        return hash((self.num_vars, self.generators))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Ideal({self.num_vars}, [{gens}])"

    def extended_by(self, extra: Iterable[HomogeneousPoly]) -> "Ideal":
        return Ideal(self.num_vars, self.generators + tuple(extra))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic grevlex Groebner basis.  ``basis`` is sorted by
    increasing leading monomial; the unit ideal is represented by the
    single constant 1 and the zero ideal by an empty basis."""

    num_vars: int
    basis: tuple

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.total_degree == 0 for g in self.basis)

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.basis]


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce_full(p: Polynomial, reducers: Sequence[Polynomial],
                 counter: _StepCounter) -> Polynomial:
    """Full multivariate division remainder: no remainder term is
    divisible by any reducer's leading monomial."""
    lead = [(g.leading_monomial(), g.leading_coefficient(), g) for g in reducers]
    remainder = {}
    work = p
    while not work.is_zero:
        exps, coeff = work.leading_term()
        hit = None
        for lm, lc, g in lead:
            if _divides(lm, exps):
                hit = (lm, lc, g)
                break
        if hit is None:
            remainder[exps] = coeff
            work = Polynomial(work.num_vars,
                              {e: c for e, c in work.terms.items() if e != exps})
            continue
        lm, lc, g = hit
        counter.tick()
        work = work - g.term_mul(_exp_sub(exps, lm), coeff / lc)
    return Polynomial(p.num_vars, remainder)


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, cf = f.leading_term()
    lg, cg = g.leading_term()
    lcm = _exp_lcm(lf, lg)
    return (f.term_mul(_exp_sub(lcm, lf), 1 / cf)
            - g.term_mul(_exp_sub(lcm, lg), 1 / cg))


def _buchberger(polys: Iterable[Polynomial], counter: _StepCounter) -> list:
    """Reduced monic Groebner basis of the given polynomials."""
    polys = list(polys)
    basis = []
    for p in sorted((q.primitive() for q in polys if not q.is_zero),
                    key=lambda q: grevlex_key(q.leading_monomial())):
        if p not in basis:
            basis.append(p)
    if not basis:
        return []
    num_vars = basis[0].num_vars
    if any(p.total_degree == 0 for p in basis):
        return [Polynomial.constant(num_vars, 1)]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        # normal strategy: smallest lcm of leading monomials first
        i, j = min(pairs, key=lambda ij: (grevlex_key(
            _exp_lcm(basis[ij[0]].leading_monomial(),
                     basis[ij[1]].leading_monomial())), ij))
        pairs.discard((i, j))
        counter.tick()
        lmi = basis[i].leading_monomial()
        lmj = basis[j].leading_monomial()
        lcm = _exp_lcm(lmi, lmj)
        if lcm == tuple(a + b for a, b in zip(lmi, lmj)):
            continue  # coprime leading monomials reduce to zero
        rem = _reduce_full(_spoly(basis[i], basis[j]), basis, counter)
        if rem.is_zero:
            continue
        if rem.total_degree == 0:
            return [Polynomial.constant(num_vars, 1)]
        rem = rem.primitive()
        k = len(basis)
        if k + 1 > counter.budget.max_basis:
            raise BudgetExceededError("basis size budget exceeded",
                                      stage=counter.stage, basis=k + 1,
                                      max_basis=counter.budget.max_basis)
        basis.append(rem)
        pairs.update((t, k) for t in range(k))

    # minimalize: drop members whose leading monomial is divisible by another's
    lead = [g.leading_monomial() for g in basis]
    keep = []
    for idx, lm in enumerate(lead):
        if not any(i != idx and _divides(lead[i], lm)
                   and (lead[i] != lm or i < idx) for i in range(len(lead))):
            keep.append(basis[idx])
    # interreduce tails and normalize to monic
    reduced = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        r = _reduce_full(g, others, counter) if others else g
        if not r.is_zero:
            reduced.append(r.monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return reduced


def groebner_basis(source: Union[Ideal, Iterable[Polynomial]],
                   budget: Optional[Budget] = None) -> GroebnerBasis:
    """Reduced grevlex Groebner basis of an ideal (or raw polynomial list).

    Deterministic for a given input.  Raises
    :class:`BudgetExceededError` when the step or basis-size budget runs
    out, which is a distinct outcome from any mathematical answer.
    """
    if isinstance(source, Ideal):
        polys = list(source.generators)
        num_vars = source.num_vars
    else:
        polys = [p for p in source]
        if not polys:
            raise SpecError("cannot infer variables from an empty polynomial list")
        num_vars = polys[0].num_vars
        if any(p.num_vars != num_vars for p in polys):
            raise SpecError("polynomials must share the same variables")
    counter = _StepCounter(budget or DEFAULT_BUDGET, "groebner")
    return GroebnerBasis(num_vars, tuple(_buchberger(polys, counter)))


def normal_form(p: Polynomial, basis: Union[GroebnerBasis, Sequence[Polynomial]],
                budget: Optional[Budget] = None) -> Polynomial:
    """Remainder of p under full division by the (Groebner) basis.

    For a reduced Groebner basis this is the canonical representative of
    p modulo the ideal; p lies in the ideal iff the result is zero.
    """
    reducers = basis.basis if isinstance(basis, GroebnerBasis) else tuple(basis)
    counter = _StepCounter(budget or DEFAULT_BUDGET, "normal_form")
    if not reducers:
        return p
    if any(r.num_vars != p.num_vars for r in reducers):
        raise SpecError("polynomial and basis variable counts differ")
    return _reduce_full(p, reducers, counter)


def _max_independent_set(leading: Sequence[Exponents], num_vars: int) -> int:
    """Largest |U|, U a set of variables, such that no leading monomial is
    supported entirely inside U.  This is the Krull dimension of the
    quotient by the leading-term ideal, hence of the affine cone."""
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in leading]
    if any(not s for s in supports):
        return -1  # a constant leading term: unit ideal, empty cone
    for size in range(num_vars, -1, -1):
        for combo in itertools.combinations(range(num_vars), size):
            u = set(combo)
            if all(not s <= u for s in supports):
                return size
    return -1


def proj_dim(source: Union[Ideal, GroebnerBasis],
             budget: Optional[Budget] = None) -> ProjDim:
    """Projective dimension of the zero set of a homogeneous ideal.

    Returns an integer >= 0, or :data:`EMPTY` when the projective set has
    no points (cone dimension <= 0).  The zero ideal in n variables gives
    n - 1, the whole projective space.
    """
    gb = source if isinstance(source, GroebnerBasis) else groebner_basis(source, budget)
    if gb.is_unit_ideal:
        return EMPTY
    cone = _max_independent_set(gb.leading_monomials(), gb.num_vars)
    if cone <= 0:
        return EMPTY
    return cone - 1


class ProjectiveVariety:
    """Zero set of a homogeneous ideal with its dimension cached.

    Irreducibility is not verified; callers that reason about irreducible
    varieties treat it as an input assertion.
    """

    __slots__ = ("ideal", "dim")

    def __init__(self, ideal: Ideal, budget: Optional[Budget] = None):
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "dim", proj_dim(ideal, budget))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveVariety is immutable")

    def __reduce__(self):
        # Ship the cached dimension instead of recomputing it on unpickle.
        return (_rebuild_variety, (self.ideal, self.dim))

    @property
    def num_vars(self) -> int:
        return self.ideal.num_vars

    @property
    def is_empty(self) -> bool:
        return self.dim is EMPTY

    @classmethod
    def full_space(cls, num_vars: int) -> "ProjectiveVariety":
        """The whole projective space P^(num_vars - 1)."""
        return cls(Ideal(num_vars))

    def __eq__(self, other):
        if not isinstance(other, ProjectiveVariety):
            return NotImplemented
        return self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def __repr__(self):
        return f"ProjectiveVariety({self.ideal!r}, dim={self.dim!r})"


def _rebuild_variety(ideal: Ideal, dim) -> ProjectiveVariety:
    v = object.__new__(ProjectiveVariety)
    object.__setattr__(v, "ideal", ideal)
    object.__setattr__(v, "dim", dim)
    return v


def vanishes_on(q: Polynomial, variety: Union[ProjectiveVariety, Ideal],
                budget: Optional[Budget] = None) -> bool:
    """Does q vanish identically on the variety (over the closure)?

    Radical membership via Rabinowitsch: adjoin t and test whether
    1 lies in I + (1 - t*q).
    """
    ideal = variety.ideal if isinstance(variety, ProjectiveVariety) else variety
    if q.num_vars != ideal.num_vars:
        raise SpecError("polynomial and variety variable counts differ")
    if q.is_zero:
        return True
    extended = [g.extended() for g in ideal.generators]
    n = ideal.num_vars + 1
    t_q = q.extended().term_mul((0,) * ideal.num_vars + (1,), 1)
    extended.append(Polynomial.constant(n, 1) - t_q)
    counter = _StepCounter(budget or DEFAULT_BUDGET, "vanishes_on")
    gb = _buchberger(extended, counter)
    return any(g.total_degree == 0 for g in gb)
