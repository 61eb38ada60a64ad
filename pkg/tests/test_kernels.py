"""Compiled and pure scan kernels must agree point-for-point.

The pure backend is the readable reference; the compiled backend only
proposes candidate points which are then re-checked in exact arithmetic,
so agreement here means the pruning never drops a true solution.
"""

from fractions import Fraction

import math
import pytest

from semiforms import _exact, kernels
from semiforms.errors import BudgetExceededError, SpecError
from semiforms.heights import PlaceSet
from semiforms.poly import parse_poly

F = Fraction

HAS_COMPILED = "compiled" in kernels.available_backends()
needs_compiled = pytest.mark.skipif(not HAS_COMPILED,
                                    reason="compiled backend not built")

PELL = parse_poly("x0^2 - 2*x1^2", 2)


def _pell_data(rho=F(3, 2), primes=()):
    x0 = parse_poly("x0", 2)
    x1 = parse_poly("x1", 2)
    s01 = parse_poly("x0 + x1", 2)
    return _exact.make_audit_data([x0, x1, s01], [], PlaceSet(primes), rho)


class TestBackendSelection:
    def test_available_backends(self):
        assert "pure" in kernels.available_backends()

    def test_unknown_backend_rejected(self):
        with pytest.raises(SpecError):
            kernels.inequality_scan(PELL, PlaceSet([]), F(1), F(0), 5,
                                    backend="gpu")

    def test_float_mode_with_finite_primes_rejected(self):
        with pytest.raises(SpecError):
            kernels.inequality_scan(PELL, PlaceSet([2]), F(1), F(0), 5,
                                    force_mode="float")

    def test_fits_int64(self):
        small = _exact.scale_to_integers(PELL)
        assert kernels._fits_int64(small, 100)
        huge = _exact.scale_to_integers(
            parse_poly(f"{2**70}*x0^2 - x1^2", 2))
        assert not kernels._fits_int64(huge, 100)


class TestInequalityScan:
    def test_pell_unit_solutions_frozen(self):
        # |x^2 - 2y^2| <= 1 at height <= 100: the Pell units
        # (1,0),(1,1),(3,2),(7,5),(17,12),(41,29),(99,70) and the
        # y-mirrors of those with y != 0 -- 13 canonical classes.
        scanned, sols = kernels.inequality_scan(
            PELL, PlaceSet([]), F(1), F(0), 100, backend="pure")
        points = [p for p, _, _ in sols]
        assert len(points) == 13
        for rep in [(1, 0), (1, 1), (3, 2), (7, 5), (17, 12), (41, 29),
                    (99, 70), (1, -1), (3, -2), (99, -70)]:
            assert rep in points
        # F_S and H_S come back exact
        by_point = {p: (hs, fs) for p, hs, fs in sols}
        assert by_point[(3, 2)] == (3, 1)
        assert by_point[(1, 1)] == (1, 1)

    def test_sorted_by_height_then_lex(self):
        _, sols = kernels.inequality_scan(
            PELL, PlaceSet([]), F(1), F(0), 100, backend="pure")
        keys = [(hs, p) for p, hs, _ in sols]
        assert keys == sorted(keys)

    @needs_compiled
    @pytest.mark.parametrize("primes", [(), (2,), (2, 3)])
    def test_backends_agree(self, primes):
        s = PlaceSet(primes)
        args = (PELL, s, F(2), F(1, 2), 40)
        assert (kernels.inequality_scan(*args, backend="pure")
                == kernels.inequality_scan(*args, backend="compiled"))

    @needs_compiled
    def test_forced_modes_agree(self):
        s = PlaceSet([])
        args = (PELL, s, F(1), F(1, 3), 30)
        base = kernels.inequality_scan(*args, backend="pure")
        for mode in ("int64", "float"):
            assert kernels.inequality_scan(*args, backend="compiled",
                                           force_mode=mode) == base
        with pytest.raises(SpecError):
            kernels.inequality_scan(*args, force_mode="decimal")

    @needs_compiled
    def test_huge_coefficients_fall_back_exactly(self):
        # Coefficients far beyond int64: the compiled path must defer to
        # the pure scan rather than overflow.
        f = parse_poly(f"{2**80}*x0^3 - x1^3", 2)
        args = (f, PlaceSet([2]), F(1), F(0), 8)
        assert (kernels.inequality_scan(*args, backend="compiled")
                == kernels.inequality_scan(*args, backend="pure"))

    def test_zero_bound(self):
        assert kernels.inequality_scan(PELL, PlaceSet([]), F(1), F(0), 0) == (0, [])

    @pytest.mark.parametrize("backend", ["pure", "compiled"])
    def test_budget(self, backend):
        if backend == "compiled" and not HAS_COMPILED:
            pytest.skip("compiled backend not built")
        with pytest.raises(BudgetExceededError):
            kernels.inequality_scan(PELL, PlaceSet([]), F(10) ** 6, F(0), 50,
                                    max_points=3, backend=backend)


class TestEquationScan:
    def test_pell_equation_frozen(self):
        # x^2 - 2y^2 = 1 in the box max(|x|,|y|) <= 100: (+-1, 0),
        # (+-3, +-2), (+-17, +-12), (+-99, +-70) -- 14 points.
        one = parse_poly("1", 2)
        scanned, sols = kernels.equation_scan(PELL, one, 100, backend="pure")
        assert len(sols) == 14
        assert (-3, 2) in sols and (99, -70) in sols and (1, 0) in sols
        assert sols == sorted(sols)

    @needs_compiled
    def test_backends_agree(self):
        one = parse_poly("1", 2)
        assert (kernels.equation_scan(PELL, one, 60, backend="pure")
                == kernels.equation_scan(PELL, one, 60, backend="compiled"))

    @needs_compiled
    def test_polynomial_rhs_backends_agree(self):
        # F(x) = G(x) with a nonconstant right-hand side.
        g = parse_poly("x0*x1", 2)
        assert (kernels.equation_scan(PELL, g, 40, backend="pure")
                == kernels.equation_scan(PELL, g, 40, backend="compiled"))

    @needs_compiled
    def test_forced_float_agrees(self):
        one = parse_poly("1", 2)
        base = kernels.equation_scan(PELL, one, 30, backend="pure")
        assert kernels.equation_scan(PELL, one, 30, backend="compiled",
                                     force_mode="float") == base

    def test_zero_bound(self):
        one = parse_poly("1", 2)
        assert kernels.equation_scan(PELL, one, 0) == (0, [])

    @pytest.mark.parametrize("backend", ["pure", "compiled"])
    def test_budget(self, backend):
        if backend == "compiled" and not HAS_COMPILED:
            pytest.skip("compiled backend not built")
        f = parse_poly("x0", 2)
        with pytest.raises(BudgetExceededError):
            kernels.equation_scan(f, f, 50, max_points=3, backend=backend)


class TestAuditScan:
    def test_coordinate_family_frozen(self):
        # Family {x0, x1, x0+x1} on P^1, S = {INF}, rho = 3/2, height <= 2.
        # Canonical points off the three lines: (1,1), (1,+-2), (2,+-1),
        # (2,2) -- six points.  At (1,-2) and (2,-1) every Weil factor is
        # 2 except one equal to 1, so the left side is log 4 while the
        # right side is (3/2) log 2: the only two violators.
        checked, violators = kernels.audit_scan(_pell_data(), 2, backend="pure")
        assert checked == 6
        assert [v[0] for v in violators] == [(1, -2), (2, -1)]
        for _, lhs, rhs in violators:
            assert lhs == pytest.approx(math.log(4))
            assert rhs == pytest.approx(1.5 * math.log(2))

    def test_high_rho_has_no_violators(self):
        checked, violators = kernels.audit_scan(_pell_data(rho=F(4)), 25,
                                                backend="pure")
        assert checked > 0 and violators == []

    @needs_compiled
    @pytest.mark.parametrize("primes", [(), (2,), (2, 5)])
    def test_backends_agree(self, primes):
        data = _pell_data(rho=F(5, 4), primes=primes)
        pure = kernels.audit_scan(data, 12, backend="pure")
        comp = kernels.audit_scan(data, 12, backend="compiled")
        assert pure[0] == comp[0]
        assert [v[0] for v in pure[1]] == [v[0] for v in comp[1]]
        for a, b in zip(pure[1], comp[1]):
            assert a[1] == pytest.approx(b[1])
            assert a[2] == pytest.approx(b[2])

    @needs_compiled
    def test_backends_agree_on_variety(self):
        # Conic x0*x2 = x1^2 in P^2.
        conic = parse_poly("x0*x2 - x1^2", 3)
        family = [parse_poly("x0", 3), parse_poly("x2", 3),
                  parse_poly("x0 + x1 + x2", 3)]
        data = _exact.make_audit_data(family, [conic], PlaceSet([2]), F(2))
        pure = kernels.audit_scan(data, 8, backend="pure")
        comp = kernels.audit_scan(data, 8, backend="compiled")
        assert pure[0] == comp[0]
        assert [v[0] for v in pure[1]] == [v[0] for v in comp[1]]

    def test_zero_bound(self):
        assert kernels.audit_scan(_pell_data(), 0) == (0, [])

    @pytest.mark.parametrize("backend", ["pure", "compiled"])
    def test_budget(self, backend):
        if backend == "compiled" and not HAS_COMPILED:
            pytest.skip("compiled backend not built")
        data = _pell_data(rho=F(1, 10))
        with pytest.raises(BudgetExceededError):
            kernels.audit_scan(data, 40, max_points=2, backend=backend)


@needs_compiled
def test_random_forms_backends_agree(rng):
    """Cross-check the backends on a seeded corpus of random forms."""
    from conftest import random_form

    s_choices = [PlaceSet([]), PlaceSet([2]), PlaceSet([3])]
    for trial in range(12):
        f = random_form(rng, 2, rng.choice([2, 3]))
        s = rng.choice(s_choices)
        c = F(rng.randint(1, 4))
        lam = F(rng.randint(0, 3), rng.randint(1, 3))
        args = (f, s, c, lam, 15)
        assert (kernels.inequality_scan(*args, backend="pure")
                == kernels.inequality_scan(*args, backend="compiled")), (f, s, c, lam)
