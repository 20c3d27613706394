"""Irreducibility over Q, Frobenius cycle types and A_n certification.

A monic irreducible ``f`` of degree ``n`` has Galois group inside ``A_n``
exactly when ``disc(f)`` is a nonzero square.  Inside that case the group is
pinned down by a small rule table: the cubic is automatic, the quartic uses
its resolvent cubic, and higher degrees look for Frobenius elements whose
cycle type forces ``A_n`` (Jordan's theorem on prime cycles).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

import sympy

from . import modp
from .core_poly import IntPoly, discriminant, divides, is_square_int
from .errors import DomainError, PreconditionError


@lru_cache(maxsize=8)
def _prime_list(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def primes() -> Iterator[int]:
    """All primes in increasing order."""
    limit = 1 << 12
    start = 0
    while True:
        ps = _prime_list(limit)
        yield from ps[start:]
        start = len(ps)
        limit <<= 1


def good_primes(disc: int) -> Iterator[int]:
    """Primes not dividing ``disc`` in increasing order."""
    for p in primes():
        if disc % p:
            yield p


class CycleType(tuple):
    """Partition of n, parts sorted ascending."""

    def __new__(cls, parts):
        parts = sorted(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise DomainError("cycle lengths must be positive")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def is_even(self) -> bool:
        return (self.n - len(self)) % 2 == 0

    def __repr__(self) -> str:
        return f"CycleType{tuple(self)}"


def factor_pattern_mod_p(f: IntPoly, p: int) -> CycleType:
    """Degrees of the irreducible factors of ``f`` mod ``p``, for ``p`` not dividing disc(f)."""
    if f.lc % p == 0:
        raise PreconditionError(f"leading coefficient vanishes mod {p}")
    if discriminant(f) % p == 0:
        raise PreconditionError(f"{p} divides the discriminant (ramified or index prime)")
    return _pattern(f.coeffs, p)


@lru_cache(maxsize=1 << 18)
def _pattern(coeffs: tuple, p: int) -> CycleType:
    f = modp.reduce_mod(coeffs, p)
    if len(f) == 4 and p < 256:
        # a square-free cubic is determined by its number of roots
        roots = sum(1 for r in range(p) if (((f[3] * r + f[2]) * r + f[1]) * r + f[0]) % p == 0)
        return CycleType({0: (3,), 1: (1, 2), 3: (1, 1, 1)}[roots])
    return CycleType(modp.distinct_degree_degrees(f, p))


def _subset_sums(parts) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


def mignotte_bound(f: IntPoly, d: int) -> int:
    """Coefficient bound ``2^d * ||f||_2`` (rounded up) for degree-``d`` factors of ``f``."""
    norm_sq = sum(c * c for c in f.coeffs)
    return (1 << d) * (math.isqrt(norm_sq) + 1)


def _interpolate_monic(xs, vals, d) -> Optional[IntPoly]:
    """Monic degree-d integer polynomial g with g(x_i) = v_i, or None if not integral."""
    # g = x^d + h, deg h < d, h(x_i) = v_i - x_i^d (Lagrange over Q)
    coeffs = [Fraction(0)] * d
    for i, xi in enumerate(xs):
        target = vals[i] - xi ** d
        if target == 0:
            continue
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = Fraction(target, denom)
        for k in range(d):
            coeffs[k] += scale * basis[k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return IntPoly([int(c) for c in coeffs] + [1])


def _has_factor_of_degree(f: IntPoly, d: int) -> bool:
    """Exact search for a monic integer factor of degree d (Kronecker's divisor method).

    Any monic factor g satisfies g(x) | f(x) at every integer x, and its
    coefficients obey the Mignotte bound; candidates are built from divisor
    choices at d interpolation nodes and checked by exact division.
    """
    bound = mignotte_bound(f, d)
    nodes = []
    for x in sorted(range(-3 * d - 3, 3 * d + 4), key=abs):
        v = f(x)
        if v == 0:
            # a rational (integer) root: linear factor, and so factors of every degree 1..n-1
            return True
        nodes.append((sympy.divisor_count(abs(v)), x, v))
    nodes.sort()
    chosen = nodes[:d]
    xs = [x for _, x, _ in chosen]
    choices = []
    for _, _, v in chosen:
        divs = sympy.divisors(abs(v))
        choices.append([s * q for q in divs for s in (1, -1)])
    for vals in product(*choices):
        g = _interpolate_monic(xs, vals, d)
        if g is None or any(abs(c) > bound for c in g.coeffs):
            continue
        if divides(g, f):
            return True
    return False


def is_irreducible_q(f: IntPoly, sieve_primes: int = 12, disc: Optional[int] = None) -> bool:
    """Exact irreducibility over Q of a monic integer polynomial with nonzero discriminant.

    >>> is_irreducible_q(IntPoly([4, 0, 0, 0, 1]))
    False
    """
    n = f.degree
    if n < 1 or f.lc != 1:
        raise PreconditionError("is_irreducible_q expects a monic nonconstant polynomial")
    if n == 1:
        return True
    if disc is None:
        disc = discriminant(f)
    if disc == 0:
        raise PreconditionError("polynomial has a repeated root")
    possible = set(range(n + 1))
    for k, p in enumerate(good_primes(disc)):
        if k >= sieve_primes:
            break
        possible &= _subset_sums(_pattern(f.coeffs, p))
        if possible == {0, n}:
            return True
    candidates = sorted(d for d in possible if 0 < d <= n // 2)
    return not any(_has_factor_of_degree(f, d) for d in candidates)


def resolvent_cubic(f: IntPoly) -> IntPoly:
    """Resolvent ``t^3 - p t^2 - 4 r t + (4 p r - q^2)`` of ``t^4 + p t^2 + q t + r``.

    >>> resolvent_cubic(IntPoly([12, 8, 0, 0, 1]))
    IntPoly([-64, -48, 0, 1])
    """
    if f.degree != 4 or f.lc != 1:
        raise PreconditionError("resolvent_cubic needs a monic quartic")
    r, q, p, c3, _ = f.coeffs
    if c3 != 0:
        raise PreconditionError("resolvent_cubic needs a depressed quartic (zero cubic term)")
    return IntPoly([4 * p * r - q * q, -4 * r, -p, 1])


def depress(f: IntPoly) -> IntPoly:
    """Monic integer polynomial with zero ``t^(n-1)`` term generating the same field.

    Uses ``n^n f((u - a)/n)`` where ``a`` is the subleading coefficient.
    """
    n = f.degree
    a = f.coeffs[n - 1]
    if a == 0:
        return f
    # n^n f((u - a)/n) = sum c_k n^(n-k) (u - a)^k
    out = IntPoly()
    lin = IntPoly([-a, 1])
    for k, c in enumerate(f.coeffs):
        if c:
            out = out + (lin ** k) * (c * n ** (n - k))
    return out


class Status(enum.Enum):
    CERTIFIED_AN = "CertifiedAn"
    CERTIFIED_NOT_AN = "CertifiedNotAn"
    UNKNOWN = "Unknown"


class Reason(enum.Enum):
    NON_SQUARE_DISC = "NonSquareDisc"
    REDUCIBLE = "Reducible"
    ODD_CYCLE_TYPE = "OddCycleTypeObserved"
    PROPER_SUBGROUP = "ProperSubgroupCertificate"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class GaloisVerdict:
    status: Status
    reason: Optional[Reason] = None
    witness: Optional[tuple] = None

    @property
    def is_an(self) -> bool:
        return self.status is Status.CERTIFIED_AN

    def __str__(self) -> str:
        if self.reason is None:
            return self.status.value
        return f"{self.status.value}({self.reason.value})"


def _is_prime(k: int) -> bool:
    return k >= 2 and sympy.isprime(k)


def _forces_an(ct: CycleType, n: int) -> bool:
    """Does a Frobenius with this cycle type force A_n inside a transitive subgroup of A_n?"""
    if n == 5 and tuple(ct) == (1, 1, 3):
        # the transitive subgroups of A_5 are C_5, D_5, A_5; only A_5 has 3-cycles
        return True
    # a power of ct is a p-cycle when exactly one part is divisible by p and that part is p
    for part in set(ct):
        if not _is_prime(part) or part > n - 3:
            continue
        if ct.count(part) != 1 or any(x % part == 0 for x in ct if x != part):
            continue
        # Jordan: primitive group with a p-cycle, p <= n - 3, contains A_n;
        # transitivity gives primitivity when n is prime or p > n/2
        if _is_prime(n) or 2 * part > n:
            return True
    return False


def certify_an(f: IntPoly, prime_budget: int = 100, disc: Optional[int] = None) -> GaloisVerdict:
    """Certify whether the Galois group of the monic polynomial ``f`` is ``A_n``.

    >>> str(certify_an(IntPoly([-7, -21, 0, 1])))
    'CertifiedAn'
    """
    n = f.degree
    if n < 3 or f.lc != 1:
        raise PreconditionError("certify_an expects a monic polynomial of degree >= 3")
    if disc is None:
        disc = discriminant(f)
    if disc == 0 or is_square_int(disc) is None:
        return GaloisVerdict(Status.CERTIFIED_NOT_AN, Reason.NON_SQUARE_DISC)
    if not is_irreducible_q(f, disc=disc):
        return GaloisVerdict(Status.CERTIFIED_NOT_AN, Reason.REDUCIBLE)
    if n == 3:
        return GaloisVerdict(Status.CERTIFIED_AN)
    if n == 4:
        res = resolvent_cubic(depress(f))
        if is_irreducible_q(res) if discriminant(res) else False:
            return GaloisVerdict(Status.CERTIFIED_AN, witness=("resolvent", res.coeffs))
        return GaloisVerdict(Status.CERTIFIED_NOT_AN, Reason.PROPER_SUBGROUP,
                             witness=("resolvent", res.coeffs))
    for k, p in enumerate(good_primes(disc)):
        if k >= prime_budget:
            break
        ct = _pattern(f.coeffs, p)
        if not ct.is_even:
            return GaloisVerdict(Status.CERTIFIED_NOT_AN, Reason.ODD_CYCLE_TYPE, witness=(p, tuple(ct)))
        if _forces_an(ct, n):
            return GaloisVerdict(Status.CERTIFIED_AN, witness=(p, tuple(ct)))
    return GaloisVerdict(Status.UNKNOWN, Reason.BUDGET_EXHAUSTED)


def field_fingerprint(f: IntPoly, prime_count: int = 25) -> list[tuple[int, CycleType]]:
    """Cycle types at the first ``prime_count`` primes not dividing disc(f)."""
    if prime_count <= 0:
        return []
    disc = discriminant(f)
    out = []
    for p in good_primes(disc):
        out.append((p, _pattern(f.coeffs, p)))
        if len(out) == prime_count:
            break
    return out


def squarefree_kernel(m: int) -> int:
    """Signed square-free part of a nonzero integer."""
    if m == 0:
        raise DomainError("square-free kernel of zero")
    sign = -1 if m < 0 else 1
    k = 1
    for q, e in sympy.factorint(abs(m)).items():
        if e % 2:
            k *= q
    return sign * k


def same_field_heuristic(f: IntPoly, g: IntPoly, prime_count: int = 25,
                         disc_f: Optional[int] = None, disc_g: Optional[int] = None) -> bool:
    """Monte Carlo test that ``Q[t]/f`` and ``Q[t]/g`` are the same field.

    Compares the square-free kernels of the discriminants and the Frobenius
    cycle types at the first ``prime_count`` primes good for both.  Below
    degree 7 there are no arithmetically equivalent non-isomorphic fields, so
    a mismatch is conclusive and agreement is wrong only with tiny probability.
    """
    if f.degree != g.degree:
        raise PreconditionError("same_field_heuristic needs polynomials of equal degree")
    df = discriminant(f) if disc_f is None else disc_f
    dg = discriminant(g) if disc_g is None else disc_g
    if df == 0 or dg == 0:
        raise PreconditionError("polynomials must have nonzero discriminant")
    if f == g:
        return True
    if squarefree_kernel(df) != squarefree_kernel(dg):
        return False
    seen = 0
    for p in good_primes(df * dg):
        if _pattern(f.coeffs, p) != _pattern(g.coeffs, p):
            return False
        seen += 1
        if seen == prime_count:
            break
    return True
