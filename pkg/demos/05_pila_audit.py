"""
Exponents and Pila's bound
==========================

The count exponent improves on the classical one by ``n / (4(n - 1))``,
which tends to 1/4.  Per fiber, brute-force counts sit far below Pila's
uniform bound for integral points on a curve.
"""

from an_census.disc_fiber import FiberBase
from an_census.pila_audit import fiber_exponent_scan, pila_bound_value, theorem_exponents

for n in (3, 4, 5, 6, 10, 50):
    e = theorem_exponents(n)
    print(f"n={n:>3}  theorem {e.theorem_exp!s:>8}  previous {e.schmidt_exp!s:>5}  "
          f"gain {e.improvement!s:>6} = {float(e.improvement):.4f}")

# the bound is astronomically large even for small degree; compare logs
print("log10 Pila(d=3, B=1e6) = %.2f" % pila_bound_value(3, 1e6).log10)

grid = [10 ** k for k in range(2, 7)]
for base in (FiberBase(3, (-7,)), FiberBase(3, (-19,)), FiberBase(4, (10, 4))):
    s = fiber_exponent_scan(base, grid)
    print(base.coeffs, "counts", s.counts, "slope %.3f" % s.slope, "within bound:", s.within_pila)
