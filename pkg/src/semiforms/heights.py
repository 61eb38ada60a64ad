"""Places of Q, normalized absolute values, heights and Weil functions.

Every place of Q appears with local degree one: the archimedean place
INF carries the usual absolute value and each prime p carries |x|_p =
p^(-ord_p x).  With these normalizations the product formula
prod_v |x|_v = 1 holds exactly for nonzero rationals.

Norms of tuples and polynomials are max norms over coordinates and
coefficients.  Multiplicative quantities are exact ``Fraction`` values
throughout; logarithmic views are derived from the exact values with
:func:`log_exact`, which is safe for arbitrarily large integers.

An S-integer has denominator supported on the primes of S; the S-units
are +-(products of S-primes).  ``canonical_rep`` picks one representative
per S-unit class of a nonzero S-integer tuple: divide by the S-unit part
of the rational content with the sign chosen so the first nonzero
coordinate is positive.  The result is an integer tuple whose content is
coprime to every prime of S, and on such tuples the S-height
H_S(x) = prod_{v in S} max_i |x_i|_v equals max_i |x_i| exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import SpecError
from .poly import Polynomial, Rational

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``Place.infinite()`` or ``Place.finite(p)`` for p prime.

    Finite places sort before nothing special; ordering exists only to make
    reports deterministic."""

    prime: Optional[int]

    def __post_init__(self):
        if self.prime is not None and not _is_prime(self.prime):
            raise SpecError(f"{self.prime} is not prime")

    @classmethod
    def infinite(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def __repr__(self):
        return "Place(inf)" if self.prime is None else f"Place({self.prime})"

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


INF = Place.infinite()


class PlaceSet:
    """A finite set of places that always contains INF.

    Serialized by its sorted prime list: S = [2, 5] denotes {INF, 2, 5}.
    """

    __slots__ = ("primes",)

    def __init__(self, primes: Iterable[int] = ()):
        seen = sorted(set(primes))
        for p in seen:
            if not _is_prime(p):
                raise SpecError(f"{p} is not prime")
        object.__setattr__(self, "primes", tuple(seen))

    def __setattr__(self, name, value):
        raise AttributeError("PlaceSet is immutable")

    def __reduce__(self):
        return (PlaceSet, (self.primes,))

    @property
    def places(self) -> tuple:
        return (INF,) + tuple(Place.finite(p) for p in self.primes)

    def __contains__(self, place: Place) -> bool:
        return place.is_infinite or place.prime in self.primes

    def __eq__(self, other):
        if not isinstance(other, PlaceSet):
            return NotImplemented
        return self.primes == other.primes

    def __hash__(self):
        return hash(self.primes)

    def __len__(self):
        return 1 + len(self.primes)

    def __repr__(self):
        return f"PlaceSet({list(self.primes)})"


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise SpecError(f"expected an exact rational, got {type(x).__name__}")


def _ord(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def ord_at(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = _as_fraction(x)
    if not x:
        raise SpecError("the zero element has no finite valuation")
    return _ord(x.numerator, p) - _ord(x.denominator, p)


def log_exact(value: Union[int, Fraction]) -> float:
    """log of a positive rational, robust for huge numerators/denominators."""
    value = _as_fraction(value)
    if value <= 0:
        raise SpecError("log of a nonpositive value")
    return math.log(value.numerator) - math.log(value.denominator)


def norm_at(x: Rational, v: Place) -> Fraction:
    """Normalized absolute value |x|_v as an exact rational."""
    x = _as_fraction(x)
    if not x:
        return Fraction(0)
    if v.is_infinite:
        return abs(x)
    return Fraction(v.prime) ** (-ord_at(x, v.prime))


def tuple_norm_at(xs: Sequence[Rational], v: Place) -> Fraction:
    """Max norm ||x||_v = max_i |x_i|_v; requires a not-all-zero tuple."""
    xs = [_as_fraction(x) for x in xs]
    if not xs or not any(xs):
        raise SpecError("tuple norm needs a nonzero tuple")
    return max(norm_at(x, v) for x in xs)


def _coprime_integer_rep(xs: Sequence[Fraction]) -> list:
    """Scale a nonzero rational tuple to integers with gcd 1 (sign kept)."""
    den = 1
    for x in xs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in xs]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    return [n // g for n in ints]


def proj_height_exact(xs: Sequence[Rational]) -> int:
    """Multiplicative projective height: max |x_i| over the coprime integer
    representative.  Always a positive integer."""
    xs = [_as_fraction(x) for x in xs]
    if not xs or not any(xs):
        raise SpecError("projective height needs a nonzero tuple")
    return max(abs(n) for n in _coprime_integer_rep(xs))


def proj_height(xs: Sequence[Rational]) -> float:
    """Logarithmic projective height h(x) = sum_v log ||x||_v."""
    return log_exact(proj_height_exact(xs))


def scalar_height_exact(x: Rational) -> int:
    """max(|a|, |b|) for x = a/b in lowest terms; 1 for x = 0."""
    x = _as_fraction(x)
    return max(abs(x.numerator), x.denominator)


def scalar_height(x: Rational) -> float:
    """h(x) = log max(|a|, |b|), the height of the point (x : 1)."""
    return log_exact(scalar_height_exact(x))


def poly_norm_at(q: Polynomial, v: Place) -> Fraction:
    """Coefficient max norm ||Q||_v of a nonzero polynomial."""
    if q.is_zero:
        raise SpecError("polynomial norm needs a nonzero polynomial")
    return max(norm_at(c, v) for c in q.terms.values())


def poly_height_exact(q: Polynomial) -> Fraction:
    """Multiplicative height prod_v ||Q||_v over the places where the
    coefficient norm differs from 1 (finitely many) together with INF.

    Closed form: with L the lcm of coefficient denominators and g the gcd
    of the scaled integer coefficients, the finite part is L/g, so the
    height is max|coeff| * L / g.  Not invariant under scaling Q.
    """
    if q.is_zero:
        raise SpecError("polynomial height needs a nonzero polynomial")
    coeffs = list(q.terms.values())
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(int(c * den)))
    return max(abs(c) for c in coeffs) * Fraction(den, g)


def poly_height(q: Polynomial) -> float:
    """h(Q) = sum_v log ||Q||_v (finitely many nonzero contributions)."""
    return log_exact(poly_height_exact(q))


def weil_exact(q: Polynomial, v: Place, xs: Sequence[Rational]) -> Fraction:
    """Multiplicative Weil value ||x||_v^deg * ||Q||_v / ||Q(x)||_v.

    Requires Q(x) != 0.  At finite places the ultrametric inequality makes
    this >= 1; at INF it is >= 1 / (number of monomials of degree deg Q).
    """
    if q.is_zero:
        raise SpecError("Weil function needs a nonzero form")
    value = q.evaluate(xs)
    if not value:
        raise SpecError("point lies on the zero set of the form")
    d = q.total_degree
    return tuple_norm_at(xs, v) ** d * poly_norm_at(q, v) / norm_at(value, v)


def weil(q: Polynomial, v: Place, xs: Sequence[Rational]) -> float:
    """Logarithmic Weil function lambda_{Q,v}(x)."""
    return log_exact(weil_exact(q, v, xs))


def s_height(xs: Sequence[Rational], s: PlaceSet) -> Fraction:
    """Multiplicative S-height H_S(x) = prod_{v in S} ||x||_v."""
    value = Fraction(1)
    for v in s.places:
        value *= tuple_norm_at(xs, v)
    return value


def log_s_height(xs: Sequence[Rational], s: PlaceSet) -> float:
    return log_exact(s_height(xs, s))


def _strip_s_part(n: int, s: PlaceSet) -> int:
    """Remove all S-prime factors from a positive integer."""
    for p in s.primes:
        while n % p == 0:
            n //= p
    return n


def is_s_integer(x: Rational, s: PlaceSet) -> bool:
    """Denominator supported on the primes of S.  Zero is an S-integer."""
    x = _as_fraction(x)
    return _strip_s_part(x.denominator, s) == 1


def is_s_unit(x: Rational, s: PlaceSet) -> bool:
    """x = +- a product of (possibly negative) powers of S-primes.
    Zero is never an S-unit."""
    x = _as_fraction(x)
    if not x:
        return False
    return (_strip_s_part(abs(x.numerator), s) == 1
            and _strip_s_part(x.denominator, s) == 1)


def s_unit_part(x: Rational, s: PlaceSet) -> Fraction:
    """The S-unit factor prod_{p in S} p^(ord_p x) of a nonzero rational."""
    x = _as_fraction(x)
    if not x:
        raise SpecError("zero has no S-unit part")
    part = Fraction(1)
    for p in s.primes:
        part *= Fraction(p) ** ord_at(x, p)
    return part


def canonical_rep(xs: Sequence[Rational], s: PlaceSet) -> tuple:
    """Canonical representative of the S-unit class of an S-integer tuple.

    Divides by the S-unit part of the rational content, signed so the
    first nonzero coordinate is positive.  The result is an integer tuple
    with content coprime to all S-primes; H_S equals max |coordinate| on
    it.  Idempotent.
    """
    xs = [_as_fraction(x) for x in xs]
    if not xs or not any(xs):
        raise SpecError("canonical representative needs a nonzero tuple")
    for x in xs:
        if not is_s_integer(x, s):
            raise SpecError(f"{x} is not an S-integer for S = {list(s.primes)}")
    den = 1
    for x in xs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in xs]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    content = Fraction(g, den)
    unit = s_unit_part(content, s)
    scaled = [x / unit for x in xs]
    first = next(x for x in scaled if x)
    if first < 0:
        scaled = [-x for x in scaled]
    assert all(x.denominator == 1 for x in scaled)
    return tuple(int(x) for x in scaled)
