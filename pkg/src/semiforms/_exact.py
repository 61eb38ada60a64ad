"""Exact point-level predicates shared by the search layer and the scan
backends.

Every inequality decided here compares products of rationals against
rational powers of rationals; cross-multiplying exponents turns each
comparison into one between big integers, so no floating point enters any
verdict.  Floats appear only in report fields, derived from the exact
values afterwards.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import SpecError
from .heights import (PlaceSet, is_s_integer, log_exact, norm_at,
                      poly_norm_at, proj_height_exact, s_height, tuple_norm_at)
from .poly import Polynomial


def canonical_points(ncoords: int, bound: int,
                     sprimes: Sequence[int]) -> Iterator[tuple]:
    """Canonical S-integer tuples with H_S <= bound, in increasing-height
    then lexicographic order.

    A canonical tuple is integral, has max |coordinate| between 1 and
    bound, content coprime to every listed prime, and a positive first
    nonzero coordinate.  Tuples with max |coordinate| = H are exactly the
    classes of S-height H, so iterating H = 1..bound gives height order.
    """
    def shell(height: int) -> Iterator[tuple]:
        # lexicographic descent; coordinates before the first nonzero one
        # are zero, so the first nonzero coordinate ranges over 1..height
        def rec(prefix: list, seen_nonzero: bool, seen_height: bool):
            i = len(prefix)
            if i == ncoords:
                if seen_height:
                    yield tuple(prefix)
                return
            lo = 0 if not seen_nonzero else -height
            for value in range(lo, height + 1):
                if not seen_height and i == ncoords - 1 and abs(value) != height:
                    continue
                prefix.append(value)
                yield from rec(prefix, seen_nonzero or value != 0,
                               seen_height or abs(value) == height)
                prefix.pop()
        yield from rec([], False, False)

    for height in range(1, bound + 1):
        for tup in shell(height):
            if any(all(x % p == 0 for x in tup) for p in sprimes):
                continue
            yield tup


def s_norm_product(value: Fraction, s: PlaceSet) -> Fraction:
    """prod_{v in S} |value|_v for a nonzero rational."""
    acc = Fraction(1)
    for v in s.places:
        acc *= norm_at(value, v)
    return acc


def rational_power_le(lhs: Fraction, rhs: Fraction, exponent: Fraction) -> bool:
    """Exact test of lhs <= rhs ** exponent for positive rationals."""
    if lhs <= 0 or rhs <= 0:
        raise SpecError("power comparison needs positive values")
    a, b = exponent.numerator, exponent.denominator
    return lhs ** b <= rhs ** a


def check_point(f: Polynomial, xs: Sequence, s: PlaceSet, c: Fraction,
                lam: Fraction):
    """Decide 0 < prod_{v in S} |F(x)|_v <= c * H_S(x)^lam exactly.

    Returns (ok, fs_value, hs_value) where fs_value is the norm product
    (zero when F(x) = 0) and hs_value the exact S-height.
    """
    for x in xs:
        if not is_s_integer(x, s):
            raise SpecError(f"coordinate {x} is not an S-integer "
                            f"for S = {list(s.primes)}")
    hs = s_height(xs, s)
    value = f.evaluate(xs)
    if not value:
        return False, Fraction(0), hs
    fs = s_norm_product(value, s)
    return rational_power_le(fs / c, hs, lam), fs, hs


@dataclass(frozen=True)
class ScaledPoly:
    """Integer-scaled view of a rational-coefficient polynomial:
    poly = (sum coefs[i] * x^exps[i]) / den with integer coefs."""

    exps: tuple
    coefs: tuple
    den: int
    num_vars: int

    def term_bound(self, bound: int) -> int:
        """Upper bound for |den * poly| over the box max|x_i| <= bound,
        also valid for every Horner intermediate."""
        return sum(abs(c) * bound ** sum(e) for e, c in zip(self.exps, self.coefs))


def scale_to_integers(p: Polynomial) -> ScaledPoly:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    items = p.sorted_terms()
    return ScaledPoly(exps=tuple(e for e, _ in items),
                      coefs=tuple(int(c * den) for _, c in items),
                      den=den, num_vars=p.num_vars)


def check_equation_point(f: Polynomial, rhs: Polynomial, xs: Sequence):
    """Does x satisfy F(x) = rhs(x) with a nonzero common value?
    Returns (is_solution, F(x))."""
    value = f.evaluate(xs)
    return bool(value) and value == rhs.evaluate(xs), value


@dataclass(frozen=True)
class AuditData:
    """Everything needed to audit one point exactly and cheaply.

    ``rho`` is the rational coefficient multiplying h(x) on the right-hand
    side; the left-hand side is sum_j (1/deg Q_j) sum_{v in S}
    log lambda_{Q_j, v}(x).
    """

    family: tuple            # member forms
    v_forms: tuple           # variety generator forms
    degrees: tuple
    deg_lcm: int
    scaled: tuple            # ScaledPoly per member (for compiled scans)
    v_scaled: tuple          # ScaledPoly per variety generator
    norms: tuple             # per member: tuple of ||Q_j||_v, v in S order
    s: PlaceSet
    rho: Fraction

    @property
    def num_vars(self) -> int:
        return self.scaled[0].num_vars


def make_audit_data(family, v_generators, s: PlaceSet, rho: Fraction) -> AuditData:
    degrees = tuple(q.degree for q in family)
    deg_lcm = 1
    for d in degrees:
        deg_lcm = deg_lcm * d // math.gcd(deg_lcm, d)
    norms = tuple(tuple(poly_norm_at(q, v) for v in s.places) for q in family)
    return AuditData(family=tuple(family), v_forms=tuple(v_generators),
                     degrees=degrees, deg_lcm=deg_lcm,
                     scaled=tuple(scale_to_integers(q) for q in family),
                     v_scaled=tuple(scale_to_integers(g) for g in v_generators),
                     norms=norms, s=s, rho=rho)


def audit_point(data: AuditData, xs: tuple):
    """Classify one canonical point.

    Returns None when the point is skipped (off the variety, or on some
    member's zero set); otherwise (violates, lhs_log, rhs_log) with the
    verdict decided exactly and the logs derived from the exact values.
    """
    if any(g.evaluate(xs) for g in data.v_forms):
        return None
    values = [q.evaluate(xs) for q in data.family]
    if not all(values):
        return None
    tuple_norms = [tuple_norm_at(xs, v) for v in data.s.places]
    big = Fraction(1)  # prod_j Lambda_j^(deg_lcm / d_j)
    lhs_log = 0.0
    for value, degree, qnorms in zip(values, data.degrees, data.norms):
        lam_mult = Fraction(1)
        for tnorm, qnorm, v in zip(tuple_norms, qnorms, data.s.places):
            lam_mult *= tnorm ** degree * qnorm / norm_at(value, v)
        big *= lam_mult ** (data.deg_lcm // degree)
        lhs_log += log_exact(lam_mult) / degree
    height = proj_height_exact(xs)
    a, b = data.rho.numerator, data.rho.denominator
    violates = big ** b > Fraction(height) ** (a * data.deg_lcm)
    rhs_log = float(data.rho) * math.log(height)
    return violates, lhs_log, rhs_log
