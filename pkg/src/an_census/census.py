"""Enumeration of trace-zero polynomials in the Minkowski box.

Every degree-n field with Galois group A_n and ``|D_K| <= X`` has a
trace-zero integral generator whose characteristic polynomial
``t^n + a_2 t^(n-2) + ... + a_n`` satisfies

    |a_j| <= c * X^(j / (2(n-1)))        and        |D| <= c * X^(n/4),

with ``D^2`` the polynomial discriminant.  The census walks that box one
fiber (fixed ``a_2..a_{n-1}``) at a time, keeps the points of
``D^2 = Disc`` and then filters them down to A_n polynomials and fields.

The implied constant ``c`` is not known; counts are reported for a sweep of
constants and the smallest constant after which they stop changing.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
import sympy

from . import modp
from .core_poly import IntPoly, discriminant, is_square_int, resultant
from .disc_fiber import FiberBase, _interp_matrix, fiber_disc_poly, fiber_square_points
from .errors import DomainError, PreconditionError
from .galois_filter import GaloisVerdict, Status, certify_an, same_field_heuristic


def _floor_power(c: Fraction, X: int, num: int, den: int) -> int:
    """Exact ``floor(c * X^(num/den))`` for rational c > 0."""
    # b <= c X^(num/den)  <=>  b^den <= c^den X^num
    target = (c.numerator ** den * X ** num) // c.denominator ** den
    b = sympy.integer_nthroot(target, den)[0]
    return int(b)


@dataclass(frozen=True)
class SearchBox:
    n: int
    X: int
    c: Fraction
    bounds: tuple[int, ...]      # B_2 .. B_n
    d_bound: int

    @classmethod
    def build(cls, n: int, X: int, c) -> "SearchBox":
        if n < 3:
            raise DomainError("degree must be at least 3")
        if X < 1:
            raise DomainError("X must be a positive integer")
        c = Fraction(c)
        if c <= 0:
            raise DomainError("box constant must be positive")
        bounds = tuple(_floor_power(c, X, j, 2 * (n - 1)) for j in range(2, n + 1))
        return cls(n, int(X), c, bounds, _floor_power(c, X, n, 4))

    def bound(self, j: int) -> int:
        return self.bounds[j - 2]

    @property
    def size(self) -> int:
        return math.prod(2 * b + 1 for b in self.bounds)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return self.tuples()

    def tuples(self, part: Optional[tuple[int, int]] = None) -> Iterator[tuple[int, ...]]:
        """Coefficient tuples ``(a_2, ..., a_n)`` in lexicographic order."""
        for base in self.bases(part):
            b = self.bounds[-1]
            for an in range(-b, b + 1):
                yield base + (an,)

    def bases(self, part: Optional[tuple[int, int]] = None) -> Iterator[tuple[int, ...]]:
        """Fiber bases ``(a_2, ..., a_{n-1})``; ``part`` restricts ``a_2`` to ``[lo, hi]``."""
        b2 = self.bounds[0]
        lo, hi = (-b2, b2) if part is None else (max(part[0], -b2), min(part[1], b2))
        ranges = [range(lo, hi + 1)] + [range(-b, b + 1) for b in self.bounds[1:-1]]
        return product(*ranges)

    def partitions(self, k: int) -> list[tuple[int, int]]:
        """Split the ``a_2`` range into ``k`` contiguous, disjoint, covering pieces."""
        if k < 1:
            raise DomainError("need at least one partition")
        b2 = self.bounds[0]
        total = 2 * b2 + 1
        edges = [-b2 + (total * i) // k for i in range(k + 1)]
        return [(edges[i], edges[i + 1] - 1) for i in range(k) if edges[i + 1] > edges[i]]

    def contains(self, coeffs: Sequence[int], D: int) -> bool:
        return all(abs(a) <= b for a, b in zip(coeffs, self.bounds)) and abs(D) <= self.d_bound


def search_box(n: int, X: int, c) -> SearchBox:
    return SearchBox.build(n, X, c)


@dataclass(frozen=True)
class FieldCandidate:
    coeffs: tuple[int, ...]      # (a_2, ..., a_n)
    disc: int
    D: int
    verdict: Optional[GaloisVerdict] = None

    @property
    def n(self) -> int:
        return len(self.coeffs) + 1

    @property
    def poly(self) -> IntPoly:
        n = self.n
        cs = [0] * (n + 1)
        cs[n] = 1
        for j, a in enumerate(self.coeffs, start=2):
            cs[n - j] = a
        return IntPoly(cs)


@dataclass
class ScanResult:
    """Output of scanning part of the box: square-discriminant points and tallies."""

    points: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    disc_zero: int = 0
    fibers: int = 0

    def merge(self, other: "ScanResult") -> "ScanResult":
        return ScanResult(sorted(self.points + other.points),
                          self.disc_zero + other.disc_zero, self.fibers + other.fibers)


def scan_box(box: SearchBox, part: Optional[tuple[int, int]] = None) -> ScanResult:
    """All tuples in the box (or an ``a_2`` slice of it) with ``Disc = D^2 > 0``, ``D <= D_bound``."""
    res = ScanResult()
    bn = box.bounds[-1]
    for base in box.bases(part):
        p = fiber_disc_poly(FiberBase(box.n, base))
        ys, ds, zeros = fiber_square_points(p, bn, box.d_bound)
        res.disc_zero += zeros
        res.fibers += 1
        for y, d in zip(ys.tolist(), ds.tolist()):
            res.points.append((base + (int(y),), int(d)))
    res.points.sort()
    return res


# --- cubic field discriminants -------------------------------------------

Unresolved = None


def dedekind_p_maximal(f: IntPoly, p: int) -> tuple[bool, Optional[list[int]]]:
    """Dedekind's criterion for ``Z[t]/f`` at ``p`` (f monic).

    Returns ``(maximal, U)``; when not maximal ``U`` (coefficients mod p) is
    such that ``U(alpha)/p`` is integral but outside ``Z[alpha]``.
    """
    fb = modp.reduce_mod(f.coeffs, p)
    rad = [1]
    for g, _ in modp.squarefree_factors(fb, p):
        rad = modp.mul(rad, g, p)
    h = modp.divmod_p(fb, rad, p)[0]
    gh = IntPoly(rad) * IntPoly(h)
    diff = (gh - f).coeffs
    assert all(c % p == 0 for c in diff)
    F = modp.reduce_mod([c // p for c in diff], p)
    d = modp.gcd(modp.gcd(rad, h, p), F, p) if F else modp.gcd(rad, h, p)
    if len(d) <= 1:
        return True, None
    U = modp.divmod_p(fb, d, p)[0]
    return False, U


def _valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def _form_disc(a: int, b: int, c: int, d: int) -> int:
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def _double_root_mod_p(form: tuple[int, int, int, int], p: int) -> Optional[tuple[int, int]]:
    """A root (x0, y0) of multiplicity >= 2 of the binary cubic form mod p, if any."""
    a, b, c, d = form
    if a % p == 0 and b % p == 0:
        return (1, 0)
    f = modp.reduce_mod([d, c, b, a], p)
    df = modp.derivative(f, p)
    if p <= 50:
        for r in range(p):
            if _ev(f, r, p) == 0 and _ev(df, r, p) == 0:
                return (r, 1)
        return None
    # p > 3 here, so a repeated root shows up in gcd(f, f')
    g = modp.gcd(f, df, p)
    if len(g) == 2:
        return (-g[0] % p, 1)
    if len(g) == 3:
        return (-g[1] * pow(2, -1, p) % p, 1)
    return None


def _ev(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _reduce_form(form: tuple[int, int, int, int], p: int) -> Optional[tuple[int, int, int, int]]:
    """A form of an overring of index p (or p^2), or None when the ring is p-maximal.

    The ring of a binary cubic form is non-maximal at p exactly when the
    form is divisible by p, or is equivalent to ``(a, b, c, d)`` with
    ``p^2 | a`` and ``p | b``.
    """
    if all(x % p == 0 for x in form):
        return tuple(x // p for x in form)
    root = _double_root_mod_p(form, p)
    if root is None:
        return None
    x0, y0 = root
    a, b, c, d = form
    if (a * x0 ** 3 + b * x0 * x0 * y0 + c * x0 * y0 * y0 + d * y0 ** 3) % (p * p):
        return None
    # complete (x0, y0) to a unimodular matrix and substitute
    u, v = (-1, 0) if y0 == 1 else (0, 1)
    L1, L2 = IntPoly([u, x0]), IntPoly([v, y0])
    G = a * L1 ** 3 + b * L1 ** 2 * L2 + c * L1 * L2 ** 2 + d * L2 ** 3
    d2, c2, b2, a2 = (list(G.coeffs) + [0] * 4)[:4]
    assert a2 % (p * p) == 0 and b2 % p == 0
    return (a2 // (p * p), b2 // p, c2, d2 * p)


def vp_field_disc_cubic(f: IntPoly, p: int) -> int:
    """Exact ``v_p`` of the discriminant of the maximal order of ``Q[t]/f`` (f cubic)."""
    form = tuple(reversed(f.coeffs))  # (a, b, c, d) for a x^3 + b x^2 y + c x y^2 + d y^3
    while True:
        nxt = _reduce_form(form, p)
        if nxt is None:
            return _valuation(_form_disc(*form), p)
        form = nxt


def field_disc_cubic(generators: Sequence[IntPoly], check: bool = True) -> Optional[int]:
    """Field discriminant of a cyclic cubic field from generators of it.

    For each prime whose square divides every generator discriminant, the
    first generator that Dedekind's criterion shows to be p-maximal gives the
    valuation.  When none is, the binary cubic form of a generator is reduced
    to a p-maximal one, which determines the valuation exactly.
    """
    if not generators:
        raise PreconditionError("need at least one generator")
    discs = []
    for g in generators:
        if g.degree != 3 or g.lc != 1:
            raise PreconditionError("field_disc_cubic needs monic cubics")
        d = discriminant(g)
        if d == 0 or is_square_int(d) is None:
            raise PreconditionError(f"{g} does not generate a cyclic cubic field")
        discs.append(d)
    if check:
        for g, d in zip(generators[1:], discs[1:]):
            if not same_field_heuristic(generators[0], g, disc_f=discs[0], disc_g=d):
                raise PreconditionError("generators describe different fields")
    DK = 1
    for p in sympy.factorint(is_square_int(min(discs, key=abs))):
        v = None
        for g, d in zip(generators, discs):
            if _valuation(d, p) < 2 or dedekind_p_maximal(g, p)[0]:
                v = _valuation(d, p)
                break
        if v is None:
            v = vp_field_disc_cubic(generators[0], p)
        DK *= p ** v
    return DK


# --- cyclic cubic oracle ---------------------------------------------------

def cyclic_cubic_oracle(X: int) -> int:
    """Number of cyclic cubic fields with discriminant at most X.

    Cyclic cubic fields have discriminant ``f^2`` where the conductor ``f`` is
    a product of distinct primes ``= 1 mod 3``, possibly times 9, and each
    conductor carries ``2^(omega(f) - 1)`` fields.
    """
    if X < 1:
        raise DomainError("X must be positive")
    fmax = math.isqrt(X)
    ps = [p for p in sympy.primerange(7, fmax + 1) if p % 3 == 1]
    total = 0

    def walk(start: int, prod: int, k: int):
        nonlocal total
        # prod is a valid conductor with k prime factors (9 counts as one)
        if k:
            total += 1 << (k - 1)
        for i in range(start, len(ps)):
            q = ps[i]
            if prod * q > fmax:
                break
            walk(i + 1, prod * q, k + 1)

    walk(0, 1, 0)
    if fmax >= 9:
        walk(0, 9, 1)
    return total


# --- census driver ------------------------------------------------------------

@dataclass
class Checkpoint:
    X: int
    points_on_R: int = 0
    an_polys: int = 0
    fields: int = 0
    unknown_verdicts: int = 0


@dataclass
class CensusSummary:
    n: int
    c: Fraction
    checkpoints: list[Checkpoint]
    disc_zero: int = 0
    unresolved_fields: int = 0
    field_mode: str = "field_disc"
    classes: list[list[FieldCandidate]] = field(default_factory=list, repr=False)
    class_discs: list[Optional[int]] = field(default_factory=list, repr=False)

    def rows(self) -> list[dict]:
        return [dict(n=self.n, X=cp.X, c=str(self.c), points_on_R=cp.points_on_R,
                     an_polys=cp.an_polys, fields=cp.fields,
                     unknown_verdicts=cp.unknown_verdicts) for cp in self.checkpoints]


def geometric_grid(x_max: int, ratio: float = math.sqrt(10), x_min: int = 1) -> list[int]:
    """Checkpoints ``x_max / ratio^k`` rounded, down to ``x_min``, ascending and distinct."""
    if x_max < 1 or ratio <= 1:
        raise DomainError("need x_max >= 1 and ratio > 1")
    out = []
    k = 0
    while True:
        x = int(round(x_max / ratio ** k))
        if x < x_min:
            break
        if not out or x != out[-1]:
            out.append(x)
        k += 1
    return sorted(set(out))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def dedup_classes(cands: Sequence[FieldCandidate], prime_count: int = 25,
                  keys: Optional[Sequence] = None) -> list[list[int]]:
    """Group candidates generating the same field.

    Candidates are bucketed by a field invariant (``keys``; default the
    polynomial discriminant) and merged inside each bucket by
    ``same_field_heuristic``.  Returns index lists, sorted by first member.
    """
    if keys is None:
        keys = [c.disc for c in cands]
    uf = _UnionFind(len(cands))
    buckets: dict = defaultdict(list)
    for i, k in enumerate(keys):
        buckets[k].append(i)
    for members in buckets.values():
        reps: list[int] = []
        for i in members:
            for r in reps:
                if same_field_heuristic(cands[r].poly, cands[i].poly, prime_count,
                                        disc_f=cands[r].disc, disc_g=cands[i].disc):
                    uf.union(r, i)
                    break
            else:
                reps.append(i)
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(len(cands)):
        groups[uf.find(i)].append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def run_census(n: int, x_grid: Sequence[int], c=4, prime_budget: int = 100,
               prime_count: int = 25, partitions: int = 1, workers: int = 1) -> CensusSummary:
    """Census of the box at ``max(x_grid)`` reported at every checkpoint of ``x_grid``.

    A point counts toward checkpoint X when it lies in that checkpoint's box.
    For n = 3 ``fields`` counts cyclic cubic fields with field discriminant
    at most X.  For other n it counts dedup classes with a member in the
    checkpoint box, keyed by polynomial discriminant; that is an upper-bound
    proxy (``field_mode = "poly_disc_proxy"``).
    """
    grid = sorted(set(int(x) for x in x_grid))
    if not grid:
        raise DomainError("empty checkpoint grid")
    boxes = [SearchBox.build(n, X, c) for X in grid]
    top = boxes[-1]
    parts = top.partitions(partitions)
    if workers > 1 and len(parts) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(scan_box, [top] * len(parts), parts))
    else:
        results = [scan_box(top, part) for part in parts]
    scan = ScanResult()
    for r in results:
        scan = scan.merge(r)

    def first_checkpoint(coeffs, D) -> int:
        for k, b in enumerate(boxes):
            if b.contains(coeffs, D):
                return k
        raise AssertionError("point outside the top box")

    summary = CensusSummary(n, Fraction(c), [Checkpoint(X) for X in grid], disc_zero=scan.disc_zero)
    certified: list[FieldCandidate] = []
    entry: list[int] = []
    for coeffs, D in scan.points:
        k = first_checkpoint(coeffs, D)
        cand = FieldCandidate(coeffs, D * D, D)
        verdict = certify_an(cand.poly, prime_budget, disc=cand.disc)
        for cp in summary.checkpoints[k:]:
            cp.points_on_R += 1
            if verdict.is_an:
                cp.an_polys += 1
            elif verdict.status is Status.UNKNOWN:
                cp.unknown_verdicts += 1
        if verdict.is_an:
            certified.append(FieldCandidate(coeffs, cand.disc, D, verdict))
            entry.append(k)

    if n == 3:
        gen_discs = [field_disc_cubic([c.poly], check=False) for c in certified]
        keys = [d if d is not None else ("unresolved", i) for i, d in enumerate(gen_discs)]
        groups = dedup_classes(certified, prime_count, keys)
        groups = _attach_unresolved(certified, groups, gen_discs, prime_count)
    else:
        summary.field_mode = "poly_disc_proxy"
        groups = dedup_classes(certified, prime_count)

    for g in groups:
        members = [certified[i] for i in g]
        summary.classes.append(members)
        k = min(entry[i] for i in g)
        if n == 3:
            known = [gen_discs[i] for i in g if gen_discs[i] is not None]
            DK = known[0] if known else field_disc_cubic([m.poly for m in members], check=False)
            summary.class_discs.append(DK)
            if DK is None:
                summary.unresolved_fields += 1
                continue
            for cp in summary.checkpoints[k:]:
                if DK <= cp.X:
                    cp.fields += 1
        else:
            summary.class_discs.append(min(m.disc for m in members))
            for cp in summary.checkpoints[k:]:
                cp.fields += 1
    return summary


def _attach_unresolved(cands, groups, gen_discs, prime_count):
    """Merge classes without a resolved discriminant into resolved classes of the same field."""
    resolved = [g for g in groups if gen_discs[g[0]] is not None]
    pending = [g for g in groups if gen_discs[g[0]] is None]
    if not pending:
        return groups
    merged = {tuple(g): list(g) for g in resolved}
    leftovers = []
    for g in pending:
        i = g[0]
        for key, members in merged.items():
            r = members[0]
            DK = gen_discs[r]
            q, rem = divmod(cands[i].disc, DK)
            if rem or is_square_int(q) is None:
                continue
            if same_field_heuristic(cands[r].poly, cands[i].poly, prime_count,
                                    disc_f=cands[r].disc, disc_g=cands[i].disc):
                members.extend(g)
                break
        else:
            leftovers.append(list(g))
    out = [sorted(m) for m in merged.values()] + leftovers
    return sorted(out, key=lambda g: g[0])


def stabilized_constant(counts_by_c: dict, key=lambda s: [cp.fields for cp in s.checkpoints]):
    """Smallest swept constant whose counts equal those of the next constant in the sweep."""
    cs = sorted(counts_by_c)
    for a, b in zip(cs, cs[1:]):
        if key(counts_by_c[a]) == key(counts_by_c[b]):
            return a
    return None


def fit_exponent(points: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope of ``log N`` against ``log X``."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise DomainError("need at least two points to fit an exponent")
    if len({x for x, _ in pts}) < len(pts):
        raise DomainError("X values must be distinct")
    if any(x <= 0 or y < 1 for x, y in pts):
        raise DomainError("need X > 0 and N >= 1")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    return float(np.polyfit(lx, ly, 1)[0])
