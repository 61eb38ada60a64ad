"""Acceptance gate: nine end-to-end criteria, one test and one printed
PASS/FAIL line each.

Each criterion is decided against an independent oracle or an exactly
provable fact, never against the library's own output.  Run with
``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the lines on
passing runs too).
"""

import itertools
import json
import random
import time
from fractions import Fraction

from conftest import (delta_oracle, family, form, full_space,
                      monomial_dim_oracle, pell_classes_oracle, random_form,
                      variety)
from semiforms import cli
from semiforms.delta import INFINITE, check_subvariety_bound, distributive_constant
from semiforms.groebner import Ideal, ProjectiveVariety, proj_dim, vanishes_on
from semiforms.heights import (INF, Place, PlaceSet, norm_at, s_height,
                               weil_exact)
from semiforms.poly import (HomogeneousPoly, PolyFamily, monomial_count,
                            monomials_of_degree)
from semiforms.search import (AuditMode, SearchParams, enumerate_s_points,
                              growth_stability, search_solutions,
                              subspace_audit)

F = Fraction


def _report(index: int, ok: bool, description: str) -> None:
    print(f"ACCEPTANCE {index}/9 {'PASS' if ok else 'FAIL'}: {description}")
    assert ok, f"criterion {index} failed: {description}"


def _ratios_equal(a, b) -> bool:
    if a is INFINITE or b is INFINITE:
        return a is b
    return a == b


def _random_family(rng, num_vars, q):
    return PolyFamily([random_form(rng, num_vars, rng.choice((1, 2)))
                       for _ in range(q)])


def test_criterion_1_pruned_delta_equals_full_enumeration():
    started = time.monotonic()
    rng = random.Random(101)
    trials = 0
    while trials < 200:
        num_vars = rng.choice((2, 3))
        fam = _random_family(rng, num_vars, rng.randint(1, 5))
        if rng.random() < 0.3:
            var = ProjectiveVariety(
                Ideal(num_vars, [random_form(rng, num_vars, rng.choice((1, 2)))]))
        else:
            var = full_space(num_vars)
        if var.is_empty:
            continue
        trials += 1
        pruned = distributive_constant(fam, var).delta
        oracle = delta_oracle(fam, var)
        assert _ratios_equal(pruned, oracle), (fam, var, pruned, oracle)
    elapsed = time.monotonic() - started
    _report(1, trials >= 200 and elapsed < 300,
            f"pruned delta == unpruned enumeration on {trials} random "
            f"families in {elapsed:.1f}s")


def test_criterion_2_general_position_hyperplanes_have_delta_one():
    ok = True
    for m in (1, 2, 3):
        n = m + 1
        coords = [HomogeneousPoly.variable(n, i) for i in range(n)]
        # extra linear forms with Vandermonde coefficients t^i, t = 1, 2, 3:
        # every minor of the stacked matrix is nonzero, so any n of the
        # forms are independent -- classical general position.
        extras = [
            HomogeneousPoly(n, {tuple(1 if i == j else 0 for i in range(n)):
                                F(t) ** j for j in range(n)})
            for t in (1, 2, 3)
        ]
        for extra_count in range(len(extras) + 1):
            fam = PolyFamily(coords + extras[:extra_count])
            report = distributive_constant(fam, full_space(n))
            ok = ok and report.delta == 1
    # delta >= 1 on every valid corpus family
    rng = random.Random(202)
    for _ in range(40):
        num_vars = rng.choice((2, 3))
        fam = _random_family(rng, num_vars, rng.randint(1, 4))
        delta = distributive_constant(fam, full_space(num_vars)).delta
        ok = ok and (delta is INFINITE or delta >= 1)
    _report(2, ok, "coordinate + generic hyperplane families have delta = 1; "
                   "delta >= 1 across the corpus")


def test_criterion_3_restriction_to_subvariety_bound():
    rng = random.Random(303)
    p2 = full_space(3)
    held = 0
    trials = 0
    while trials < 50:
        line_form = random_form(rng, 3, 1)
        line = ProjectiveVariety(Ideal(3, [line_form]))
        members = []
        attempts = 0
        while len(members) < rng.randint(1, 4) and attempts < 40:
            attempts += 1
            candidate = random_form(rng, 3, rng.choice((1, 2)))
            if not vanishes_on(candidate, line):
                members.append(candidate)
        if not members:
            continue
        trials += 1
        result = check_subvariety_bound(PolyFamily(members), p2, line)
        assert result.dim_v == 2 and result.dim_sub == 1
        if result.holds:
            held += 1
    _report(3, held == trials == 50,
            f"delta on a random line <= 2 * delta on the plane held in "
            f"{held}/{trials} instances")


def test_criterion_4_heights_suite():
    rng = random.Random(404)
    primes = (2, 3, 5, 7, 11, 13)

    def random_rational():
        x = F(rng.choice((1, -1)) * rng.randint(1, 50))
        for p in primes:
            x *= F(p) ** rng.randint(-3, 3)
        return x

    ok = True
    # product formula, 1000 random rationals, exact
    for _ in range(1000):
        x = random_rational()
        support = set(primes)
        for n in (abs(x.numerator), x.denominator):
            d = 2
            while d * d <= n:
                if n % d == 0:
                    support.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                support.add(n)
        prod = norm_at(x, INF)
        for p in support:
            prod *= norm_at(x, Place.finite(p))
        ok = ok and prod == 1

    # S-unit scaling invariance of H_S, 500 random pairs, exact
    s = PlaceSet([2, 3])
    for _ in range(500):
        xs = [F(rng.randint(-40, 40), rng.choice((1, 2, 3, 4, 6, 8, 9)))
              for _ in range(3)]
        if not any(xs):
            continue
        eta = F(rng.choice((1, -1))) * F(2) ** rng.randint(-4, 4) * F(3) ** rng.randint(-4, 4)
        ok = ok and s_height([eta * x for x in xs], s) == s_height(xs, s)

    # H_S >= 1 on every enumerated S-integer tuple
    for sprimes in ((), (2,), (2, 3)):
        place_set = PlaceSet(sprimes)
        for point in enumerate_s_points(place_set, 2, 5):
            ok = ok and s_height(point, place_set) >= 1

    # Weil lower bounds on 10^3 random samples, exact
    samples = 0
    while samples < 1000:
        num_vars = rng.choice((2, 3))
        q = random_form(rng, num_vars, rng.randint(1, 3))
        point = tuple(rng.randint(-6, 6) for _ in range(num_vars))
        if not any(point) or q.evaluate(point) == 0:
            continue
        samples += 1
        for p in (2, 5):
            ok = ok and weil_exact(q, Place.finite(p), point) >= 1
        floor = F(1, monomial_count(q.degree, num_vars))
        ok = ok and weil_exact(q, INF, point) >= floor
    _report(4, ok, "product formula, H_S unit-invariance, H_S >= 1, and "
                   "Weil lower bounds all exact")


def test_criterion_5_quintic_solution_count_stabilizes():
    started = time.monotonic()
    quintic = form("x0^4*x1 + 2*x0^3*x1^2 - x0^2*x1^3 - 2*x0*x1^4", 2)
    params = SearchParams(PlaceSet([]), F(1), F(1, 2), F(10_000))
    table = growth_stability(quintic, params, [1_000, 10_000],
                             max_points=10_000_000)
    elapsed = time.monotonic() - started
    _report(5, table.stable and table.counts[0] == table.counts[1]
            and elapsed < 600,
            f"quintic class counts {table.counts} identical at bounds 10^3 "
            f"and 10^4 in {elapsed:.1f}s")


def test_criterion_6_pell_counts_keep_growing():
    pell = form("x0^2 - 2*x1^2", 2)
    params = SearchParams(PlaceSet([]), F(1), F(0), F(10_000))
    classes = search_solutions(pell, params)
    reps = {cls.representative for cls in classes}
    small = {cls.representative for cls in classes if cls.height_s <= 100}
    oracle = pell_classes_oracle(10_000)
    ok = (len(reps) > len(small)
          and reps == oracle
          and {(3, 2), (17, 12), (99, 70)} <= reps)
    _report(6, ok, f"Pell classes grow from {len(small)} at 10^2 to "
                   f"{len(reps)} at 10^4 and match the recurrence oracle")


def test_criterion_7_audit_violators_stabilize_and_nest():
    fam = family(["x0", "x1", "x0 + x1"], 2)
    ok = True
    for mode in (AuditMode.LINEAR, AuditMode.SQUARE):
        report = subspace_audit(fam, full_space(2), PlaceSet([]), F(1), mode,
                                [100, 1_000], max_points=10_000_000)
        sets = [{v[0] for v in rung.violators} for rung in report.rungs]
        ok = ok and report.stabilized and sets[0] == sets[1] == set()
    # the square-mode violator set nests inside the linear-mode one
    corpus = [
        (family(["x0", "x1", "x0 + x1"], 2), full_space(2)),
        (family(["x0", "x1", "x0 - x1", "x0 + 2*x1"], 2), full_space(2)),
        (family(["x0", "x1", "x2", "x0 + x1 + x2"], 3), full_space(3)),
        (family(["x0", "x2", "x0 + x1 + x2"], 3), variety(["x0*x2 - x1^2"], 3)),
    ]
    for fam_c, var_c in corpus:
        lin = subspace_audit(fam_c, var_c, PlaceSet([2]), F(1, 2),
                             AuditMode.LINEAR, [12])
        sq = subspace_audit(fam_c, var_c, PlaceSet([2]), F(1, 2),
                            AuditMode.SQUARE, [12])
        ok = ok and {v[0] for v in sq.violators} <= {v[0] for v in lin.violators}
    _report(7, ok, "audit violator sets equal at 10^2 vs 10^3 (both empty) "
                   "and square-mode violators nest in linear-mode ones")


def test_criterion_8_projective_dimension_matches_combinatorial_oracle():
    ok = True
    checked = 0
    for num_vars in (2, 3, 4):
        monos = [e for d in (1, 2) for e in monomials_of_degree(d, num_vars)]
        for count in (0, 1, 2, 3):
            for gens in itertools.combinations(monos, count):
                ideal = Ideal(num_vars,
                              [HomogeneousPoly(num_vars, {e: F(1)}) for e in gens])
                checked += 1
                ok = ok and proj_dim(ideal) == monomial_dim_oracle(gens, num_vars)

    # handcrafted non-monomial corpus with hand-derived dimensions
    handcrafted = [
        (variety(["x0*x2 - x1^2"], 3), 1),                     # conic in P^2
        (variety(["x0*x1"], 3), 1),                            # two lines in P^2
        (variety(["x0*x3 - x1*x2"], 4), 2),                    # quadric in P^3
        (variety(["x0*x2 - x1^2", "x1*x3 - x2^2",
                  "x0*x3 - x1*x2"], 4), 1),                    # twisted cubic
        (variety(["x0*x2 - x1^2", "x1*x3 - x2^2"], 4), 1),     # cubic + a line
        (variety(["x0^2 - x1*x2", "x1^2 - x0*x2"], 3), 0),     # two conics: points
        (variety(["x0*x1", "x0*x2", "x1*x2"], 3), 0),          # coordinate points
        (variety(["x0", "x1"], 4), 1),                         # line in P^3
    ]
    for var, expected in handcrafted:
        checked += 1
        ok = ok and var.dim == expected
    _report(8, ok, f"projective dimension matches the combinatorial oracle "
                   f"on {checked} ideals (exhaustive monomial + handcrafted)")


def test_criterion_9_cli_reports_are_byte_identical(tmp_path):
    specs = {
        "delta": {"num_vars": 2, "family": ["x0", "x1", "x0 + x1"]},
        "verify": {"num_vars": 2, "family": ["x0", "x1", "x0 + x1",
                                             "x0 - x1", "x0 + 2*x1"],
                   "lambda": "1/2"},
        "search": {"num_vars": 2, "family": ["x0^2 - 2*x1^2"], "c": 1,
                   "lambda": 0, "bound": 100},
        "audit": {"num_vars": 2, "family": ["x0", "x1", "x0 + x1"],
                  "epsilon": 1, "mode": "square", "bounds": [20, 40]},
    }
    ok = True
    for verb, payload in specs.items():
        spec_path = tmp_path / f"{verb}.spec.json"
        spec_path.write_text(json.dumps(payload), encoding="utf-8")
        blobs = []
        for run in (1, 2):
            out_dir = tmp_path / f"{verb}.run{run}"
            code = cli.main([verb, "--spec", str(spec_path),
                             "--out", str(out_dir)])
            ok = ok and code == 0
            blobs.append((out_dir / f"{verb}.json").read_bytes()
                         + (out_dir / f"{verb}.csv").read_bytes())
        ok = ok and blobs[0] == blobs[1]
    _report(9, ok, "repeated CLI runs of four verbs emit byte-identical "
                   "JSON and CSV reports")
