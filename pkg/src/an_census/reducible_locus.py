"""Bases whose fiber curve ``D^2 = p(y)`` splits over the algebraic closure.

For even n the fiber polynomial has odd degree and can never be a constant
times a square, so the reducible locus is empty.  For odd n it is a proper
subvariety of the base whose dimension is at most ``(n - 1)/2``; these scans
count its integer points in boxes and check that the growth stays in line.
Also here: the finiteness of bases sharing one fiber polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .core_poly import IntPoly, discriminant, is_square_int
from .disc_fiber import FiberBase, classify_fiber, fiber_disc_poly
from .errors import DomainError, PreconditionError


def _box(n: int, H: int):
    return product(range(-H, H + 1), repeat=n - 2)


@dataclass
class ReducibleScanReport:
    n: int
    H: int
    hits: list[tuple[FiberBase, tuple[int, IntPoly]]] = field(default_factory=list)
    scanned: int = 0
    degrees: set = field(default_factory=set)

    @property
    def count(self) -> int:
        return len(self.hits)

    def count_within(self, h: int) -> int:
        """Hits inside the smaller box ``|a_j| <= h``."""
        return sum(1 for b, _ in self.hits if max(map(abs, b.coeffs), default=0) <= h)


def _square_class_kernel(n: int) -> int:
    """Signed square-free kernel of the leading coefficient ``(-1)^(n(n-1)/2) n^n`` for odd n."""
    sign = -1 if (n * (n - 1) // 2) & 1 else 1
    k = 1
    m, q = n, 2
    while m > 1:
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e % 2:
            k *= q
        q += 1
    return sign * k


def _may_be_square(base: FiberBase, kernel: int, probes=(0, 1)) -> bool:
    """Necessary condition for ``p = c g^2``: ``p(y) / kernel`` is a square at every integer y."""
    q0 = base.q0()
    for y in probes:
        v = discriminant(q0 + y)
        if v % kernel or is_square_int(v // kernel) is None:
            return False
    return True


def scan_reducible_fibers(n: int, H: int) -> ReducibleScanReport:
    """Classify every fiber with ``|a_j| <= H`` and keep the geometrically reducible ones.

    For odd n, bases failing a two-point square test are skipped before the
    full fiber polynomial is built; the test is a necessary condition, so
    nothing reducible is lost.  Even n has every fiber built and classified.
    """
    if n < 3 or H < 0:
        raise DomainError("need n >= 3 and H >= 0")
    report = ReducibleScanReport(n, H)
    kernel = _square_class_kernel(n) if n % 2 else None
    for coeffs in _box(n, H):
        base = FiberBase(n, coeffs)
        if kernel is not None and not _may_be_square(base, kernel):
            report.scanned += 1
            continue
        curve = classify_fiber(base)
        report.scanned += 1
        report.degrees.add(curve.p.degree)
        if not curve.geometrically_irreducible:
            report.hits.append((base, curve.square_witness))
    return report


def _slope(hs: Sequence[int], counts: Sequence[int]) -> float:
    return float(np.polyfit(np.log(2 * np.asarray(hs, dtype=float) + 1),
                            np.log(np.asarray(counts, dtype=float) + 1), 1)[0])


@dataclass(frozen=True)
class GrowthFit:
    n: int
    hs: tuple[int, ...]
    counts: tuple[int, ...]
    slope: float
    bound: float              # (n - 1)/2 + slack

    @property
    def within_bound(self) -> bool:
        return self.slope <= self.bound


def reducible_growth_exponent(n: int, h_grid: Sequence[int], slack: float = 0.3) -> GrowthFit:
    """Fit ``log(count + 1)`` against ``log(2H + 1)`` over the grid.

    One scan at the largest H serves every grid value.
    """
    if n % 2 == 0:
        raise PreconditionError("the reducible locus is empty for even n")
    hs = tuple(sorted(set(int(h) for h in h_grid)))
    if len(hs) < 3:
        raise DomainError("need at least three distinct H values")
    report = scan_reducible_fibers(n, hs[-1])
    counts = tuple(report.count_within(h) for h in hs)
    return GrowthFit(n, hs, counts, _slope(hs, counts), (n - 1) / 2 + slack)


def box_stabilization_findisc(n: int, target: IntPoly, h_grid: Sequence[int]) -> list[int]:
    """For each H, the number of bases in ``|a_j| <= H`` whose fiber polynomial equals ``target``."""
    hs = sorted(set(int(h) for h in h_grid))
    if n < 3:
        raise DomainError("need n >= 3")
    if target.degree != n - 1 or abs(target.lc) != n ** n:
        return [0] * len(hs)
    if not hs:
        return []
    target0 = target(0)
    sizes = []
    for coeffs in _box(n, hs[-1]):
        base = FiberBase(n, coeffs)
        # p(0) is the discriminant of q0 itself: one cheap evaluation before the full fiber
        if discriminant(base.q0()) != target0:
            continue
        if fiber_disc_poly(base) == target:
            sizes.append(max(map(abs, coeffs), default=0))
    return [sum(1 for s in sizes if s <= h) for h in hs]
