import pytest

from an_census.core_poly import IntPoly
from an_census.disc_fiber import FiberBase, classify_fiber, fiber_disc_poly
from an_census.errors import DomainError, PreconditionError
from an_census.reducible_locus import (_box, _square_class_kernel, box_stabilization_findisc,
                                       reducible_growth_exponent, scan_reducible_fibers)


def full_scan(n, H):
    return [c for c in _box(n, H) if not classify_fiber(FiberBase(n, c)).geometrically_irreducible]


@pytest.mark.parametrize("n, H", [(3, 30), (5, 5), (7, 2)])
def test_prefilter_loses_nothing(n, H):
    assert [b.coeffs for b, _ in scan_reducible_fibers(n, H).hits] == full_scan(n, H)


def test_kernels():
    # signed square-free part of (-1)^(n(n-1)/2) n^n
    assert [_square_class_kernel(n) for n in (3, 5, 7, 9, 15)] == [-3, 5, -7, 1, -15]


def test_cubic_locus_is_one_point():
    for H in (1, 5, 10):
        r = scan_reducible_fibers(3, H)
        assert [b.coeffs for b, _ in r.hits] == [(0,)]
        assert r.hits[0][1] == (-27, IntPoly([0, 1]))


def test_even_degree_empty():
    r = scan_reducible_fibers(4, 3)
    assert r.count == 0 and r.degrees == {3} and r.scanned == 49


def test_quintic_witness():
    r = scan_reducible_fibers(5, 2)
    assert [b.coeffs for b, _ in r.hits] == [(0, 0, 0)]
    assert r.hits[0][1] == (3125, IntPoly([0, 0, 1]))


def test_growth_fit():
    g = reducible_growth_exponent(5, [2, 4, 6])
    assert g.counts == tuple(scan_reducible_fibers(5, h).count for h in (2, 4, 6))
    assert g.within_bound
    with pytest.raises(PreconditionError):
        reducible_growth_exponent(4, [1, 2, 3])
    with pytest.raises(DomainError):
        reducible_growth_exponent(5, [1, 2])
    with pytest.raises(DomainError):
        scan_reducible_fibers(2, 3)


def test_stabilization_cubic_targets():
    assert box_stabilization_findisc(3, IntPoly([0, 0, -27]), [1, 5, 10]) == [1, 1, 1]
    assert box_stabilization_findisc(3, IntPoly([108, 0, -27]), [1, 5, 10]) == [0, 1, 1]
    # wrong degree or leading coefficient cannot be a fiber polynomial
    assert box_stabilization_findisc(3, IntPoly([1, 0, 1]), [1, 2]) == [0, 0]


def test_stabilization_quintic_target():
    base = FiberBase(5, (2, -1, 1))
    counts = box_stabilization_findisc(5, fiber_disc_poly(base), [1, 2, 4])
    assert counts[-1] == counts[-2] >= 1
