import pytest
import sympy
from hypothesis import given, settings, strategies as st

from an_census.core_poly import IntPoly
from an_census.errors import PreconditionError
from an_census.galois_filter import (CycleType, Reason, Status, certify_an, depress,
                                     factor_pattern_mod_p, field_fingerprint, good_primes,
                                     is_irreducible_q, mignotte_bound, resolvent_cubic,
                                     same_field_heuristic, squarefree_kernel)
from an_census.modp import distinct_degree_degrees, squarefree_factors

T = sympy.symbols("t")


def sp(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)), T)


def monic(max_deg=6, bound=20):
    return st.integers(2, max_deg).flatmap(
        lambda d: st.lists(st.integers(-bound, bound), min_size=d, max_size=d).map(
            lambda cs: IntPoly(cs + [1])))


GOLDENS = [
    ([-7, -21, 0, 1], "CertifiedAn"),
    ([-1, -3, 0, 1], "CertifiedAn"),
    ([12, 8, 0, 0, 1], "CertifiedAn"),
    ([16, 20, 0, 0, 0, 1], "CertifiedAn"),
    ([1, 1, 0, 0, 1], "CertifiedNotAn(NonSquareDisc)"),
    ([4, 0, 0, 0, 1], "CertifiedNotAn(Reducible)"),
]


@pytest.mark.parametrize("coeffs, expected", GOLDENS)
def test_certify_goldens(coeffs, expected):
    assert str(certify_an(IntPoly(coeffs))) == expected


def test_quartic_resolvent():
    f = IntPoly([12, 8, 0, 0, 1])
    assert resolvent_cubic(depress(f)) == IntPoly([-64, -48, 0, 1])


def test_depress_removes_trace():
    f = IntPoly([1, 2, 3, 1])
    d = depress(f)
    assert d.coeffs[-2] == 0 and d.lc == 1


def test_v4_quartic_is_not_an():
    # t^4 + 1 has square discriminant 256 but Galois group V4
    v = certify_an(IntPoly([1, 0, 0, 0, 1]))
    assert v.status is Status.CERTIFIED_NOT_AN and v.reason is Reason.PROPER_SUBGROUP


def test_odd_cycle_type_or_reducible_for_s_n():
    # t^5 - t - 1 has Galois group S5
    v = certify_an(IntPoly([-1, -1, 0, 0, 0, 1]))
    assert v.status is Status.CERTIFIED_NOT_AN


def test_certify_needs_monic():
    with pytest.raises(PreconditionError):
        certify_an(IntPoly([1, 0, 2]))
    with pytest.raises(PreconditionError):
        certify_an(IntPoly([1, 1, 0, 2]))


def test_patterns():
    f = IntPoly([-7, -21, 0, 1])
    assert factor_pattern_mod_p(f, 2) == CycleType((3,))
    assert factor_pattern_mod_p(IntPoly([-1, 0, 1]), 5) == CycleType((1, 1))
    assert factor_pattern_mod_p(IntPoly([1, 0, 1]), 3) == CycleType((2,))
    with pytest.raises(PreconditionError):
        factor_pattern_mod_p(f, 3)
    assert CycleType((2, 1)) == CycleType((1, 2)) and not CycleType((1, 2)).is_even


@settings(max_examples=150, deadline=None)
@given(monic(6, 10), st.sampled_from([3, 5, 7, 11, 13, 101]))
def test_pattern_matches_sympy_factorization(f, p):
    from an_census.core_poly import discriminant
    if discriminant(f) % p == 0:
        return
    _, facs = sympy.factor_list(sp(f), modulus=p)
    expected = sorted(q.degree() for q, m in facs for _ in range(m))
    assert list(factor_pattern_mod_p(f, p)) == expected


@settings(max_examples=60, deadline=None)
@given(monic(6, 10), st.sampled_from([2, 3, 5, 7]))
def test_modp_squarefree_factorization(f, p):
    parts = squarefree_factors([c % p for c in f.coeffs], p)
    prod = sympy.Poly(1, T, modulus=p)
    for g, m in parts:
        prod *= sympy.Poly(list(reversed(g)), T, modulus=p) ** m
    assert prod == sympy.Poly(list(reversed(f.coeffs)), T, modulus=p)
    for g, _ in parts:
        G = sympy.Poly(list(reversed(g)), T, modulus=p)
        assert sympy.gcd(G, G.diff(T)).degree() == 0


def test_ddf_simple():
    # (t - 1)(t - 2)(t^2 + 1) mod 7: t^2 + 1 is irreducible since -1 is a non-residue
    f = sympy.Poly((T - 1) * (T - 2) * (T ** 2 + 1), T, modulus=7)
    coeffs = [int(c) % 7 for c in reversed(f.all_coeffs())]
    assert distinct_degree_degrees(coeffs, 7) == [1, 1, 2]


@settings(max_examples=200, deadline=None)
@given(monic(6, 20))
def test_irreducibility_matches_sympy(f):
    from an_census.core_poly import discriminant
    if discriminant(f) == 0:
        with pytest.raises(PreconditionError):
            is_irreducible_q(f)
        return
    _, facs = sympy.factor_list(sp(f))
    truth = len(facs) == 1 and facs[0][1] == 1
    assert is_irreducible_q(f) == truth


def test_irreducibility_needs_the_exact_search():
    # t^4 + 1 is reducible modulo every prime yet irreducible over Q
    assert is_irreducible_q(IntPoly([1, 0, 0, 0, 1]))
    assert not is_irreducible_q(IntPoly([4, 0, 0, 0, 1]))    # (t^2+2t+2)(t^2-2t+2)
    assert mignotte_bound(IntPoly([4, 0, 0, 0, 1]), 2) >= 2


def test_irreducibility_goldens():
    assert is_irreducible_q(IntPoly([-1, -1, 0, 1]))
    assert not is_irreducible_q(IntPoly([-1, 0, 1]))
    with pytest.raises(PreconditionError):
        is_irreducible_q(IntPoly([0, 0, 1]))


def test_resolvent_goldens():
    assert resolvent_cubic(IntPoly([1, 0, 0, 0, 1])) == IntPoly([0, -4, 0, 1])
    assert resolvent_cubic(IntPoly([1, 0, 1, 0, 1])) == IntPoly([4, -4, -1, 1])
    with pytest.raises(PreconditionError):
        resolvent_cubic(IntPoly([1, 0, 0, 1, 1]))


def test_same_field():
    a = IntPoly([-7, -21, 0, 1])
    b = IntPoly([7, -21, 0, 1])
    c = IntPoly([-1, -3, 0, 1])
    assert same_field_heuristic(a, b)
    assert not same_field_heuristic(a, c)
    fp = field_fingerprint(a, 5)
    assert [p for p, _ in fp] == [2, 5, 11, 13, 17]
    assert fp[0] == (2, CycleType((3,)))
    assert field_fingerprint(a, 0) == []
    with pytest.raises(PreconditionError):
        same_field_heuristic(a, IntPoly([1, 0, 0, 0, 1]))


def test_kernel_and_good_primes():
    assert squarefree_kernel(35721) == 1
    assert squarefree_kernel(-12) == -3
    assert squarefree_kernel(72) == 2
    gp = good_primes(30)
    assert [next(gp) for _ in range(3)] == [7, 11, 13]
