"""Growth exponents and per-fiber point counts against Pila's bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .census import _floor_power
from .disc_fiber import FiberBase, classify_fiber, fiber_disc_poly, fiber_square_points
from .errors import DomainError, PreconditionError


@dataclass(frozen=True)
class ExponentSet:
    n: int
    theorem_exp: Fraction      # (n^2 - 2) / (4(n - 1))
    schmidt_exp: Fraction      # (n + 2) / 4
    malle_exp: Fraction        # 1/2
    pila_fiber_exp: Fraction   # n / (4(n - 1))
    log_power: int             # 2n + 1

    @property
    def improvement(self) -> Fraction:
        return self.schmidt_exp - self.theorem_exp


def theorem_exponents(n: int) -> ExponentSet:
    """Exact exponents for degree ``n``.

    >>> theorem_exponents(6).theorem_exp
    Fraction(17, 10)
    """
    if n < 3:
        raise DomainError("exponents are defined for n >= 3")
    return ExponentSet(
        n=n,
        theorem_exp=Fraction(n * n - 2, 4 * (n - 1)),
        schmidt_exp=Fraction(n + 2, 4),
        malle_exp=Fraction(1, 2),
        pila_fiber_exp=Fraction(n, 4 * (n - 1)),
        log_power=2 * n + 1,
    )


@dataclass(frozen=True)
class PilaBound:
    d: int
    B: float
    value: mpmath.mpf
    log10: float


def pila_bound_value(d: int, B) -> PilaBound:
    """``(3d)^(4d+8) * B^(1/d) * (log B)^(2d+3)``, evaluated in log space.

    The constant alone overflows a double from ``d = 9`` on, so the value is
    an mpmath float and ``log10`` is the quantity to compare against.
    """
    if d < 1:
        raise DomainError("curve degree must be at least 1")
    B = mpmath.mpf(B)
    if B <= 1:
        raise DomainError("height bound must exceed 1")
    log_value = ((4 * d + 8) * mpmath.log(3 * d) + mpmath.log(B) / d
                 + (2 * d + 3) * mpmath.log(mpmath.log(B)))
    return PilaBound(d, float(B), mpmath.exp(log_value), float(log_value / mpmath.log(10)))


def fiber_bounds(n: int, X: int, c) -> tuple[int, int]:
    """``(floor(c X^(n/(2(n-1)))), floor(c X^(n/4)))``: ranges of ``a_n`` and ``D``."""
    c = Fraction(c)
    return _floor_power(c, X, n, 2 * (n - 1)), _floor_power(c, X, n, 4)


def count_fiber_points(base: FiberBase, X: int, c=1, include_singular: bool = False) -> int:
    """Number of ``a_n`` in range with ``p(a_n)`` a square (positive unless singular points are kept)."""
    if X < 1:
        raise DomainError("X must be positive")
    y_bound, d_bound = fiber_bounds(base.n, X, c)
    ys, _, _ = fiber_square_points(fiber_disc_poly(base), y_bound, d_bound, include_singular)
    return len(ys)


@dataclass(frozen=True)
class FiberScan:
    base: FiberBase
    xs: tuple[int, ...]
    counts: tuple[int, ...]
    slope: float
    log10_bounds: tuple[float, ...]
    within_pila: bool


def fiber_exponent_scan(base: FiberBase, x_grid: Sequence[int], c=1) -> FiberScan:
    """Counts on one geometrically irreducible fiber over a grid of X, with a log-log slope.

    The slope is fitted to ``log(count + 1)`` so that empty fibers are allowed.
    """
    xs = tuple(sorted(set(int(x) for x in x_grid)))
    if len(xs) < 3:
        raise DomainError("need at least three distinct X values")
    curve = classify_fiber(base)
    if not curve.geometrically_irreducible:
        raise PreconditionError(f"fiber over {base.coeffs} is not geometrically irreducible")
    n = base.n
    counts, logs = [], []
    for X in xs:
        counts.append(count_fiber_points(base, X, c))
        B = float(c) * float(X) ** (n / 4)
        logs.append(pila_bound_value(n - 1, max(B, 2.0)).log10)
    within = all(cnt == 0 or np.log10(cnt) <= lb for cnt, lb in zip(counts, logs))
    slope = float(np.polyfit(np.log(xs), np.log(np.array(counts) + 1.0), 1)[0])
    return FiberScan(base, xs, tuple(counts), slope, tuple(logs), within)
