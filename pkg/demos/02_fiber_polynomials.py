"""
Fibers of the discriminant surface
==================================

Fix the middle coefficients of a trace-zero monic polynomial and let the
constant term ``y`` vary.  The discriminant becomes a polynomial ``p(y)``
of degree ``n - 1``, and square discriminants are integral points on the
plane curve ``D^2 = p(y)``.
"""

import numpy as np

from an_census.core_poly import to_str
from an_census.disc_fiber import (FiberBase, classify_fiber, critical_values, cv_product_poly,
                                  fiber_disc_poly, fiber_square_points)

# the worked cubic fiber t^3 - 3t + y
base = FiberBase(3, (-3,))
p = fiber_disc_poly(base)
print("p(y) =", to_str(p, "y"))

# its roots are the negated critical values of t^3 - 3t, namely -2 and 2
cvs = critical_values(base)
print("critical values:", np.round(sorted(v.real for v in cvs.values), 9))
print("product form   :", np.round(cv_product_poly(base, cvs).real, 9))

# integral points with D > 0 in a window of y
ys, ds, zeros = fiber_square_points(p, 100)
print("points:", list(zip(ys.tolist(), ds.tolist())), " roots of p in range:", zeros)

# the fiber over a_2 = 0 is a constant times a square: the curve splits
print(classify_fiber(FiberBase(3, (0,))))

# a quartic fiber is an elliptic curve
q = FiberBase(4, (-5, 2))
print(q, "->", to_str(fiber_disc_poly(q), "y"))
