import pytest
import sympy
from hypothesis import given, settings, strategies as st

from an_census.core_poly import (IntPoly, constant_times_square, content, discriminant,
                                 divides, exact_div, is_square_int, normalize, poly_gcd,
                                 primitive_part, resultant, squarefree_decomposition, to_str)
from an_census.errors import DomainError

T = sympy.symbols("t")


def sp(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], T)


def sylvester_det(f: IntPoly, g: IntPoly) -> int:
    """Resultant as the determinant of the Sylvester matrix (rows highest degree first)."""
    m, n = f.degree, g.degree
    a, b = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det(method="bareiss"))


def polys(max_deg=6, bound=20, min_deg=0):
    return st.lists(st.integers(-bound, bound), min_size=min_deg + 1, max_size=max_deg + 1).map(IntPoly)


# --- arithmetic ---------------------------------------------------------------

def test_ring_ops():
    f = IntPoly([1, 1])
    assert f * f == IntPoly([1, 2, 1])
    assert f ** 3 == IntPoly([1, 3, 3, 1])
    assert (f - f).is_zero() and (f - f).degree == -1
    assert 5 - f == IntPoly([4, -1])
    assert IntPoly([0, 0, 3]).derivative() == IntPoly([0, 6])
    assert IntPoly([0, 0, 1]).shift(2) == IntPoly([4, 4, 1])
    assert to_str(IntPoly([-7, -21, 0, 1])) == "t^3 - 21*t - 7"


def test_immutable():
    with pytest.raises(AttributeError):
        IntPoly([1]).coeffs = (2,)


def test_content_and_primitive():
    p = IntPoly([108, 0, -27])
    assert content(p) == 27
    assert primitive_part(p) == IntPoly([4, 0, -1])
    assert normalize(p) == IntPoly([-4, 0, 1])


def test_exact_division():
    f = IntPoly([-1, 0, 1])
    g = IntPoly([1, 1])
    assert exact_div(f, g) == IntPoly([-1, 1])
    assert divides(g, f)
    assert not divides(IntPoly([1, 2]), f)


@given(polys(4))
def test_shift_matches_evaluation(f):
    for k in (-2, 0, 3):
        assert f.shift(k)(5) == f(5 + k)


# --- resultant and discriminant -------------------------------------------------

@pytest.mark.parametrize("f, g, expected", [
    (IntPoly([-2, 1]), IntPoly([-5, 1]), -3),
    (IntPoly([1, 0, 1]), IntPoly([-1, 0, 1]), 4),
    (IntPoly([1, 0, 0, 1]), IntPoly([2]), 8),
])
def test_resultant_goldens(f, g, expected):
    assert resultant(f, g) == expected


def test_resultant_both_zero():
    with pytest.raises(DomainError):
        resultant(IntPoly(), IntPoly())


@pytest.mark.parametrize("coeffs, expected", [
    ([-1, 0, 1], 4),
    ([-1, -1, 0, 1], -23),
    ([-7, -21, 0, 1], 35721),
    ([12, 8, 0, 0, 1], 331776),
    ([1, 1, 0, 0, 1], 229),
    ([16, 20, 0, 0, 0, 1], 1024000000),
])
def test_discriminant_goldens(coeffs, expected):
    assert discriminant(IntPoly(coeffs)) == expected


def test_discriminant_needs_degree_two():
    with pytest.raises(DomainError):
        discriminant(IntPoly([1, 1]))


@settings(max_examples=200, deadline=None)
@given(polys(6, min_deg=1), polys(5, min_deg=1))
def test_resultant_matches_sylvester(f, g):
    # sympy.resultant itself has sign slips (it returns -1 for Res(t, t^3 + 1)),
    # so the oracle is the Sylvester determinant
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_det(f, g)


def test_sylvester_oracle_sanity():
    assert sylvester_det(IntPoly([0, 1]), IntPoly([1, 0, 0, 1])) == 1
    assert resultant(IntPoly([0, 1]), IntPoly([1, 0, 0, 1])) == 1
    assert resultant(IntPoly([1, 0, 0, 1]), IntPoly([0, 1])) == -1


@settings(max_examples=200, deadline=None)
@given(polys(6, min_deg=2))
def test_discriminant_matches_sympy(f):
    if f.degree < 2:
        return
    assert discriminant(f) == int(sympy.discriminant(sp(f)))


@settings(max_examples=100, deadline=None)
@given(polys(3, 6, 1), polys(3, 6, 1), polys(3, 6, 1))
def test_resultant_multiplicative(f, g, h):
    if min(f.degree, g.degree, h.degree) < 1:
        return
    assert resultant(f * g, h) == resultant(f, h) * resultant(g, h)


# --- square-free structure -----------------------------------------------------

def test_squarefree_worked_case():
    d = squarefree_decomposition(IntPoly([108, 0, -27]))
    assert d.content == -27
    assert d.factors == ((IntPoly([-4, 0, 1]), 1),)
    assert d.expand() == IntPoly([108, 0, -27])


def test_squarefree_groups_by_multiplicity():
    d = squarefree_decomposition(IntPoly([0, 0, 1, -2, 1]))   # y^2 (y - 1)^2
    assert d.content == 1
    assert d.factors == ((IntPoly([0, -1, 1]), 2),)


@settings(max_examples=150, deadline=None)
@given(polys(3, 5, 1), polys(2, 5, 1), st.integers(-6, 6).filter(bool))
def test_squarefree_reconstructs_and_matches_sympy(a, b, c):
    p = (a * b * b) * c
    if p.degree < 1:
        return
    d = squarefree_decomposition(p)
    assert d.expand() == p
    for g, _ in d.factors:
        assert g.lc > 0
        if g.degree >= 2:
            assert discriminant(g) != 0
    for i, (g, _) in enumerate(d.factors):
        for h, _ in d.factors[i + 1:]:
            assert poly_gcd(g, h).degree == 0
    # multiplicity profile agrees with sympy
    ours = sorted((g.degree, m) for g, m in d.factors)
    _, theirs = sympy.sqf_list(sp(p))
    assert ours == sorted((q.degree(), m) for q, m in theirs)


def test_constant_times_square():
    g = IntPoly([3, -1, 2])
    w = constant_times_square(g * g * (-5))
    assert w is not None and w[0] == -5 and w[1] * w[1] * w[0] == g * g * (-5)
    assert constant_times_square(IntPoly([0, -27])) is None
    c, h = constant_times_square(IntPoly([0, 0, -27]))
    assert c == -27 and h == IntPoly([0, 1])
    assert constant_times_square(IntPoly([108, 0, -27])) is None


def test_is_square_int():
    assert is_square_int(0) == 0
    assert is_square_int(35721) == 189
    assert is_square_int(35722) is None
    assert is_square_int(-4) is None
