"""
Exact resultants and discriminants
==================================

Everything downstream rests on exact integer discriminants.  Python ints
never overflow, so the subresultant sequence can run on the raw
coefficients.
"""

from an_census.core_poly import IntPoly, discriminant, resultant, squarefree_decomposition, to_str

# polynomials are coefficient lists, lowest degree first
f = IntPoly([-7, -21, 0, 1])
print(f, "  disc =", discriminant(f))          # 35721 = 189^2: a square

# the resultant vanishes exactly when two polynomials share a root
print("Res(t-2, t-5) =", resultant(IntPoly([-2, 1]), IntPoly([-5, 1])))
print("Res(t^2-1, t-1) =", resultant(IntPoly([-1, 0, 1]), IntPoly([-1, 1])))

# a few more, including a quintic whose discriminant is a ten-digit square
for cs in ([12, 8, 0, 0, 1], [1, 1, 0, 0, 1], [16, 20, 0, 0, 0, 1]):
    g = IntPoly(cs)
    print(f"{g!s:>16}  disc = {discriminant(g)}")

# square-free decomposition keeps the content separate from the factors
d = squarefree_decomposition(IntPoly([108, 0, -27]))
print("108 - 27y^2 =", d.content, "*", " * ".join(f"({to_str(g, 'y')})^{m}" for g, m in d.factors))
