import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.numberfields.basis import round_two

from an_census.census import (FieldCandidate, ScanResult, SearchBox, cyclic_cubic_oracle,
                              dedekind_p_maximal, dedup_classes, field_disc_cubic,
                              fit_exponent, geometric_grid, run_census, scan_box, search_box,
                              stabilized_constant, vp_field_disc_cubic)
from an_census.core_poly import IntPoly, discriminant, is_square_int
from an_census.errors import DomainError, PreconditionError

T = sympy.symbols("t")


def nf_disc(f: IntPoly) -> int:
    return int(round_two(sympy.Poly(list(reversed(f.coeffs)), T, domain=sympy.ZZ))[1])


# --- the box ----------------------------------------------------------------

def test_box_bounds():
    b = search_box(3, 49, 3)
    assert b.bounds == (21, 55) and b.d_bound == 55
    assert search_box(3, 1, 1).size == 9
    with pytest.raises(DomainError):
        search_box(2, 10, 1)
    with pytest.raises(DomainError):
        search_box(3, 10, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7), st.integers(1, 10 ** 8), st.fractions(Fraction(1, 4), Fraction(10), max_denominator=7))
def test_box_bounds_are_exact_floors(n, X, c):
    b = SearchBox.build(n, X, c)
    for j in range(2, n + 1):
        B = b.bound(j)
        # B <= c X^(j/(2(n-1))) < B + 1, checked by integer powers
        den = 2 * (n - 1)
        lhs = c ** den * X ** j
        assert Fraction(B) ** den <= lhs < Fraction(B + 1) ** den


@pytest.mark.parametrize("k", [1, 2, 3, 4, 7, 100])
def test_partitions_cover(k):
    b = search_box(4, 10 ** 4, 2)
    parts = b.partitions(k)
    covered = [a for lo, hi in parts for a in range(lo, hi + 1)]
    assert covered == list(range(-b.bound(2), b.bound(2) + 1))


def brute_scan(box):
    out, zeros = [], 0
    for coeffs in box.tuples():
        f = FieldCandidate(coeffs, 0, 0).poly
        d = discriminant(f)
        if d == 0:
            zeros += 1
            continue
        r = is_square_int(d)
        if r is not None and r <= box.d_bound:
            out.append((coeffs, r))
    return sorted(out), zeros


@pytest.mark.parametrize("n, X, c", [(3, 300, 2), (4, 200, 1), (5, 60, 1)])
def test_scan_matches_brute_force(n, X, c):
    box = search_box(n, X, c)
    res = scan_box(box)
    pts, zeros = brute_scan(box)
    assert res.points == pts
    assert res.disc_zero == zeros


def test_scan_merge_is_partition_invariant():
    box = search_box(3, 2000, 3)
    whole = scan_box(box)
    merged = ScanResult()
    for part in box.partitions(5):
        merged = merged.merge(scan_box(box, part))
    assert merged.points == whole.points and merged.disc_zero == whole.disc_zero


# --- field discriminants --------------------------------------------------------

@pytest.mark.parametrize("coeffs, expected", [
    ([-7, -21, 0, 1], 49),
    ([-1, -3, 0, 1], 81),
    ([1, -2, -1, 1], 49),      # minimal polynomial of 2cos(2pi/7)
])
def test_field_disc_goldens(coeffs, expected):
    assert field_disc_cubic([IntPoly(coeffs)]) == expected


def test_dedekind():
    assert dedekind_p_maximal(IntPoly([-1, -3, 0, 1]), 3)[0]
    ok, _ = dedekind_p_maximal(IntPoly([-7, -21, 0, 1]), 3)
    assert not ok
    assert vp_field_disc_cubic(IntPoly([-7, -21, 0, 1]), 3) == 0
    assert vp_field_disc_cubic(IntPoly([-7, -21, 0, 1]), 7) == 2


def cyclic_cubics(limit=60):
    box = search_box(3, 10 ** 4, 1)
    found = []
    for (a2, a3), D in scan_box(box).points:
        f = IntPoly([a3, a2, 0, 1])
        if sympy.Poly(list(reversed(f.coeffs)), T).is_irreducible:
            found.append(f)
        if len(found) >= limit:
            break
    return found


def test_field_disc_against_round_two():
    for f in cyclic_cubics():
        assert field_disc_cubic([f]) == nf_disc(f), f


def test_field_disc_rejects_non_cyclic():
    with pytest.raises(PreconditionError):
        field_disc_cubic([IntPoly([-1, -1, 0, 1])])
    with pytest.raises(PreconditionError):
        field_disc_cubic([IntPoly([-7, -21, 0, 1]), IntPoly([-1, -3, 0, 1])])


# --- oracle ---------------------------------------------------------------------

def oracle_brute(X):
    """Count cyclic cubic fields by conductor, straight from the definition."""
    total = 0
    for f in range(2, math.isqrt(X) + 1):
        fac = sympy.factorint(f)
        rest = dict(fac)
        if rest.pop(3, 0) not in (0, 2):
            continue
        if any(e > 1 or p % 3 != 1 for p, e in rest.items()):
            continue
        omega = len(fac)
        total += 2 ** (omega - 1)
    return total


@pytest.mark.parametrize("X", [1, 48, 49, 81, 100, 4000, 10 ** 5, 10 ** 6])
def test_oracle_matches_definition(X):
    assert cyclic_cubic_oracle(X) == oracle_brute(X)


def test_oracle_goldens():
    assert cyclic_cubic_oracle(100) == 2
    assert cyclic_cubic_oracle(48) == 0


# --- driver ---------------------------------------------------------------------

def test_census_small():
    s = run_census(3, [100], 4)
    assert s.checkpoints[0].fields == 2
    assert sorted(d for d in s.class_discs if d <= 100) == [49, 81]
    assert run_census(3, [1], 4).checkpoints[0].fields == 0


def test_census_partitions_agree():
    grid = geometric_grid(3000)
    a = run_census(3, grid, 3, partitions=1)
    b = run_census(3, grid, 3, partitions=4)
    assert a.rows() == b.rows()


def test_census_matches_oracle_on_grid():
    grid = geometric_grid(10 ** 4)
    s = run_census(3, grid, 4)
    assert [cp.fields for cp in s.checkpoints] == [cyclic_cubic_oracle(X) for X in grid]
    assert all(cp.an_polys <= cp.points_on_R for cp in s.checkpoints)
    assert s.unresolved_fields == 0


def test_census_quartic_proxy():
    s = run_census(4, [200], 1)
    assert s.field_mode == "poly_disc_proxy"
    assert s.checkpoints[0].fields <= s.checkpoints[0].an_polys


def test_dedup_merges_conjugate_generators():
    a = FieldCandidate((-21, -7), 35721, 189)
    b = FieldCandidate((-21, 7), 35721, 189)
    c = FieldCandidate((-3, -1), 81, 9)
    assert dedup_classes([a, b, c]) == [[0, 1], [2]]


def test_grid_and_stabilization():
    assert geometric_grid(1000, 10) == [1, 10, 100, 1000]
    with pytest.raises(DomainError):
        geometric_grid(0)
    counts = {2: [1, 2], 3: [1, 3], 4: [1, 3], 6: [1, 3]}
    assert stabilized_constant(counts, key=lambda v: v) == 3
    assert stabilized_constant({2: [1], 3: [2]}, key=lambda v: v) is None


def test_fit_exponent():
    assert fit_exponent([(10, 10), (100, 100), (1000, 1000)]) == pytest.approx(1.0)
    assert fit_exponent([(1e3, 10), (1e5, 100)]) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        fit_exponent([(10, 3)])
    with pytest.raises(DomainError):
        fit_exponent([(10, 3), (10, 4)])
    with pytest.raises(DomainError):
        fit_exponent([(10, 0), (100, 4)])
