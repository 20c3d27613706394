"""
Where fibers split
==================

A fiber curve ``D^2 = p(y)`` splits over the algebraic closure exactly when
``p`` is a constant times a square.  For even n that cannot happen (odd
degree).  For odd n it happens on a thin set of bases, and only finitely
many bases share any one fiber polynomial.
"""

from an_census.core_poly import IntPoly
from an_census.disc_fiber import FiberBase, fiber_disc_poly
from an_census.reducible_locus import (box_stabilization_findisc, reducible_growth_exponent,
                                       scan_reducible_fibers)

r = scan_reducible_fibers(4, 5)
print(f"n=4, H=5: {r.scanned} fibers, {r.count} reducible, degrees {r.degrees}")

r = scan_reducible_fibers(3, 20)
print("n=3, H=20 reducible bases:", [b.coeffs for b, _ in r.hits], "witness", r.hits[0][1])

g = reducible_growth_exponent(5, [5, 10, 20])
print(f"n=5 counts {g.counts} over H {g.hs}: slope {g.slope:.3f} (allowed {g.bound})")
print("first hits:", [b.coeffs for b, _ in scan_reducible_fibers(5, 10).hits])

# bases sharing one fiber polynomial
for target in (IntPoly([0, 0, -27]), IntPoly([108, 0, -27])):
    print(target, box_stabilization_findisc(3, target, [1, 2, 5, 10, 20]))
t5 = fiber_disc_poly(FiberBase(5, (2, -1, 1)))
print("n=5 target", box_stabilization_findisc(5, t5, [1, 2, 4, 6]))
