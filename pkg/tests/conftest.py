"""Shared helpers and independent oracles used across the test suite.

The oracles here deliberately avoid the library's own algorithms:
delta values come from unpruned exhaustive enumeration, dimensions of
monomial ideals from a combinatorial rule, Pell solutions from the
fundamental-unit recurrence, and so on.  Library outputs are compared
against these, never against themselves.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from semiforms.delta import INFINITE
from semiforms.groebner import EMPTY, Ideal, ProjectiveVariety, groebner_basis, proj_dim
from semiforms.poly import HomogeneousPoly, PolyFamily, Polynomial, parse_poly


def form(text: str, num_vars: int) -> HomogeneousPoly:
    return parse_poly(text, num_vars)


def family(texts, num_vars: int) -> PolyFamily:
    return PolyFamily([parse_poly(t, num_vars) for t in texts])


def variety(texts, num_vars: int) -> ProjectiveVariety:
    return ProjectiveVariety(Ideal(num_vars, [parse_poly(t, num_vars) for t in texts]))


def full_space(num_vars: int) -> ProjectiveVariety:
    return ProjectiveVariety.full_space(num_vars)


# ------------------------------------------------------------- oracles


def delta_oracle(fam: PolyFamily, var: ProjectiveVariety):
    """Unpruned distributive constant: evaluate every nonempty subset by
    a fresh Groebner computation and take the max ratio directly."""
    if var.is_empty:
        raise ValueError("oracle needs a nonempty variety")
    m = var.dim
    best = Fraction(0)
    for size in range(1, len(fam) + 1):
        for gamma in itertools.combinations(range(1, len(fam) + 1), size):
            gens = list(var.ideal.generators) + [fam[j - 1] for j in gamma]
            dim = proj_dim(Ideal(fam.num_vars, gens))
            if dim is EMPTY:
                continue
            if dim == m:
                return INFINITE
            ratio = Fraction(size, m - dim)
            if ratio > best:
                best = ratio
    return best


def monomial_dim_oracle(exponent_sets, num_vars: int):
    """Projective dimension of a monomial ideal, combinatorially: the
    cone dimension is the largest #U over variable subsets U such that
    no generator's support is contained in U.

    Returns EMPTY when the cone is a point or less (dimension <= 0);
    otherwise cone dimension minus one.  An empty generator list gives
    the whole space.
    """
    supports = [frozenset(i for i, e in enumerate(exps) if e) for exps in exponent_sets]
    if any(not s for s in supports):  # a unit (constant) generator
        return EMPTY
    best = -1
    for size in range(num_vars, -1, -1):
        for subset in itertools.combinations(range(num_vars), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                best = size
                break
        if best >= 0:
            break
    if best <= 0:
        return EMPTY
    return best - 1


def pell_classes_oracle(bound: int):
    """Canonical solution classes of |x^2 - 2y^2| = 1 with max|.| <= bound,
    generated by the fundamental-unit recurrence (x, y) -> (3x+4y, 2x+3y)
    from the seeds (1, 0) and (1, 1), plus the y-sign mirrors."""
    classes = set()
    for seed in ((1, 0), (1, 1)):
        x, y = seed
        while x <= bound and y <= bound:
            classes.add((x, y))
            if y:
                classes.add((x, -y))
            x, y = 3 * x + 4 * y, 2 * x + 3 * y
    return classes


def brute_canonical_classes(ncoords: int, bound: int, sprimes=()):
    """All canonical S-unit class representatives with H_S <= bound, by
    brute force: enumerate the full box, canonicalize, deduplicate."""
    from semiforms.heights import PlaceSet, canonical_rep, s_height

    s = PlaceSet(sprimes)
    reps = set()
    for xs in itertools.product(range(-bound, bound + 1), repeat=ncoords):
        if not any(xs):
            continue
        rep = canonical_rep(xs, s)
        if s_height(rep, s) <= bound:
            reps.add(rep)
    return reps


def random_form(rng: random.Random, num_vars: int, degree: int) -> HomogeneousPoly:
    """A random nonzero form with coefficients in [-3, 3]."""
    from semiforms.poly import monomials_of_degree

    monos = list(monomials_of_degree(degree, num_vars))
    while True:
        terms = {}
        for exps in monos:
            coeff = rng.randint(-3, 3)
            if coeff:
                terms[exps] = Fraction(coeff)
        if terms:
            return HomogeneousPoly(num_vars, terms)


@pytest.fixture
def rng():
    return random.Random(20250825)
