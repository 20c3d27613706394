import math
from fractions import Fraction

import mpmath
import pytest

from an_census.disc_fiber import FiberBase, fiber_disc_poly
from an_census.errors import DomainError, PreconditionError
from an_census.pila_audit import (count_fiber_points, fiber_bounds, fiber_exponent_scan,
                                  pila_bound_value, theorem_exponents)


def test_exponents_known_values():
    e = theorem_exponents(3)
    assert e.theorem_exp == Fraction(7, 8)
    assert e.schmidt_exp == Fraction(5, 4)
    assert e.improvement == Fraction(3, 8)
    assert e.malle_exp == Fraction(1, 2)
    assert e.log_power == 7
    assert theorem_exponents(6).theorem_exp == Fraction(17, 10)
    with pytest.raises(DomainError):
        theorem_exponents(2)


def test_improvement_tends_to_a_quarter():
    assert abs(float(theorem_exponents(10 ** 6).improvement) - 0.25) < 1e-6


def test_pila_bound_small_case():
    # d = 1, B = e: 3^12 * e * 1
    b = pila_bound_value(1, mpmath.e)
    assert mpmath.almosteq(b.value, 3 ** 12 * mpmath.e, 1e-12)
    assert b.log10 == pytest.approx(math.log10(3 ** 12 * math.e))


def test_pila_bound_large_degree_stays_finite():
    b = pila_bound_value(40, 1e30)
    assert math.isfinite(b.log10) and b.log10 > 300
    with pytest.raises(DomainError):
        pila_bound_value(0, 10)
    with pytest.raises(DomainError):
        pila_bound_value(2, 1)


def test_fiber_bounds():
    assert fiber_bounds(3, 100, 1) == (31, 31)
    assert fiber_bounds(5, 10 ** 4, 2) == (632, 200000)


def brute_count(base, X, c, singular):
    yb, db = fiber_bounds(base.n, X, c)
    p = fiber_disc_poly(base)
    k = 0
    for y in range(-yb, yb + 1):
        v = p(y)
        if v < 0 or (v == 0 and not singular):
            continue
        r = math.isqrt(v)
        if r * r == v and r <= db:
            k += 1
    return k


@pytest.mark.parametrize("coeffs, X", [((-3,), 100), ((-3,), 10 ** 4), ((-7,), 5000), ((0,), 1000),
                                       ((1, -2), 3000), ((-5, 2), 10 ** 4)])
@pytest.mark.parametrize("singular", [False, True])
def test_count_matches_brute_force(coeffs, X, singular):
    base = FiberBase(len(coeffs) + 2, coeffs)
    assert count_fiber_points(base, X, 1, singular) == brute_count(base, X, 1, singular)


def test_worked_counts():
    assert count_fiber_points(FiberBase(3, (-3,)), 100) == 2
    assert count_fiber_points(FiberBase(3, (-3,)), 100, include_singular=True) == 4
    with pytest.raises(DomainError):
        count_fiber_points(FiberBase(3, (-3,)), 0)


def test_fiber_scan():
    s = fiber_exponent_scan(FiberBase(3, (-3,)), [100, 1000, 10 ** 4, 10 ** 5])
    assert s.counts == (2, 2, 2, 2)
    assert s.within_pila and abs(s.slope) < 1e-9
    with pytest.raises(PreconditionError):
        fiber_exponent_scan(FiberBase(3, (0,)), [10, 100, 1000])
    with pytest.raises(DomainError):
        fiber_exponent_scan(FiberBase(3, (-3,)), [10, 100])
