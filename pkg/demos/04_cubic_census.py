"""
Counting cyclic cubic fields
============================

For n = 3 the census can be checked exactly: cyclic cubic fields are
classified by their conductors.  The box constant is not known a priori, so
a small sweep shows where the counts stop moving.
"""

import math

from an_census.census import (cyclic_cubic_oracle, fit_exponent, geometric_grid, run_census,
                              stabilized_constant)

grid = geometric_grid(10 ** 4, 10)
sweep = {c: run_census(3, grid, c) for c in (1, 2, 3, 4)}
for c, s in sweep.items():
    print(f"c = {c}: fields", [cp.fields for cp in s.checkpoints])
print("oracle:    ", [cyclic_cubic_oracle(X) for X in grid])
c0 = stabilized_constant(sweep)
print("counts stabilize from c =", c0)

# per-checkpoint detail at the stabilized constant
for row in sweep[c0].rows():
    print(row)

# growth: the slope of log N against log X should sit near 1/2
big = geometric_grid(10 ** 5, math.sqrt(10), x_min=1000)
s = run_census(3, big, c0)
pts = [(cp.X, cp.fields) for cp in s.checkpoints]
print(pts)
print("fitted exponent: %.4f" % fit_exponent(pts))
