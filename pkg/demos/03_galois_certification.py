"""
Certifying A_n Galois groups
============================

A square discriminant puts the Galois group inside A_n.  Irreducibility
plus one well-chosen Frobenius cycle type (or the cubic resolvent for
quartics) pins it down to A_n itself.
"""

from an_census.core_poly import IntPoly
from an_census.galois_filter import certify_an, factor_pattern_mod_p, same_field_heuristic

cases = {
    "t^3 - 21t - 7": [-7, -21, 0, 1],
    "t^3 - 3t - 1": [-1, -3, 0, 1],
    "t^4 + 8t + 12": [12, 8, 0, 0, 1],
    "t^5 + 20t + 16": [16, 20, 0, 0, 0, 1],
    "t^4 + t + 1": [1, 1, 0, 0, 1],
    "t^4 + 4": [4, 0, 0, 0, 1],
    "t^4 + 1": [1, 0, 0, 0, 1],
}
for name, cs in cases.items():
    v = certify_an(IntPoly(cs))
    print(f"{name:>15}  {v!s:<32} {v.witness or ''}")

# factorization patterns modulo primes are the raw material
f = IntPoly([16, 20, 0, 0, 0, 1])
for p in (3, 7, 11, 13):
    print(f"t^5 + 20t + 16 mod {p}: {factor_pattern_mod_p(f, p)}")

# t^3 - 21t +- 7 generate the same cyclic cubic field, t^3 - 3t - 1 a different one
a, b, c = IntPoly([-7, -21, 0, 1]), IntPoly([7, -21, 0, 1]), IntPoly([-1, -3, 0, 1])
print("same field:", same_field_heuristic(a, b), same_field_heuristic(a, c))
