"""Fibers of the trace-zero discriminant surface.

Fixing the middle coefficients ``a_2, ..., a_{n-1}`` of

    f(t) = t^n + a_2 t^(n-2) + ... + a_{n-1} t + y

leaves the discriminant as a polynomial ``p(y)`` of degree ``n - 1`` with
leading coefficient ``+-n^n``.  Integral points of ``D^2 = Disc(f)`` over a
fixed base are then integral points of the plane curve ``D^2 = p(y)``.

Sign convention: the base stores the plain coefficients of the monic
polynomial and ``y`` is the constant term itself.  With this convention

    p(y) = (-1)^(n(n-1)/2) * n^n * prod_i (y + c_i)

where ``c_i`` runs over the critical values of ``q0 = f - y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
import sympy

from .core_poly import IntPoly, constant_times_square, discriminant
from .errors import DomainError, NumericFailure


@dataclass(frozen=True)
class FiberBase:
    """The middle coefficients ``(a_2, ..., a_{n-1})`` of a trace-zero monic polynomial."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"fiber degree must be >= 3, got {self.n}")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) != self.n - 2:
            raise DomainError(f"expected {self.n - 2} coefficients, got {len(self.coeffs)}")

    def q0(self) -> IntPoly:
        """``t^n + a_2 t^(n-2) + ... + a_{n-1} t`` (constant term zero)."""
        cs = [0] * (self.n + 1)
        cs[self.n] = 1
        for j, a in enumerate(self.coeffs, start=2):
            cs[self.n - j] = a
        return IntPoly(cs)

    def poly(self, y: int) -> IntPoly:
        """The full polynomial with constant term ``y``."""
        return self.q0() + y


@lru_cache(maxsize=None)
def _interp_matrix(n: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Integer matrix M and denominator L with coeffs = M @ values / L for nodes 0..n-1."""
    # invert the Vandermonde matrix at nodes 0..n-1 over Q
    size = n
    V = [[Fraction(x) ** k for k in range(size)] for x in range(size)]
    inv = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if V[r][col] != 0)
        V[col], V[piv] = V[piv], V[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        s = V[col][col]
        V[col] = [v / s for v in V[col]]
        inv[col] = [v / s for v in inv[col]]
        for r in range(size):
            if r != col and V[r][col] != 0:
                m = V[r][col]
                V[r] = [a - m * b for a, b in zip(V[r], V[col])]
                inv[r] = [a - m * b for a, b in zip(inv[r], inv[col])]
    L = 1
    for row in inv:
        for v in row:
            L = L * v.denominator // np.gcd(L, v.denominator)
    M = tuple(tuple(int(v * L) for v in row) for row in inv)
    return M, int(L)


def fiber_disc_poly(base: FiberBase) -> IntPoly:
    """``p(y) = Disc_t(q0(t) + y)`` by exact interpolation at ``y = 0..n-1``.

    >>> fiber_disc_poly(FiberBase(3, (-3,)))
    IntPoly([108, 0, -27])
    """
    n = base.n
    q0 = list(base.q0().coeffs)
    values = []
    for y in range(n):
        q0[0] = y
        values.append(discriminant(IntPoly(q0)))
    M, L = _interp_matrix(n)
    coeffs = []
    for row in M:
        num = sum(m * v for m, v in zip(row, values))
        c, rem = divmod(num, L)
        if rem:
            raise AssertionError(f"non-integral interpolated coefficient for {base}")
        coeffs.append(c)
    return IntPoly(coeffs)


@dataclass(frozen=True)
class FiberCurve:
    base: FiberBase
    p: IntPoly
    geometrically_irreducible: bool
    square_witness: Optional[tuple[int, IntPoly]] = None


def classify_fiber(base: FiberBase, p: Optional[IntPoly] = None) -> FiberCurve:
    """Decide geometric irreducibility of ``D^2 = p(y)``.

    The curve is reducible over the algebraic closure exactly when ``p`` is a
    constant times a square (or zero).
    """
    if p is None:
        p = fiber_disc_poly(base)
    if p.is_zero():
        return FiberCurve(base, p, False, None)
    if p.degree % 2 == 1 or discriminant(p) != 0:
        # odd degree, or square-free: cannot be a constant times a square
        return FiberCurve(base, p, True, None)
    witness = constant_times_square(p)
    return FiberCurve(base, p, witness is None, witness)


@dataclass(frozen=True)
class RootConfig:
    max_iter: int = 200
    tol: float = 1e-12
    seed: int = 0


@dataclass(frozen=True)
class CriticalValueSet:
    values: tuple[complex, ...]
    source: IntPoly
    points: tuple[complex, ...] = field(default=(), compare=False)


def aberth_roots(coeffs: Sequence[int], config: RootConfig = RootConfig()) -> np.ndarray:
    """All complex roots of a polynomial (coefficients lowest first) by Aberth iteration.

    Raises NumericFailure if the iteration budget runs out before every root
    either stops moving or has a residual at rounding level.
    """
    c = np.array([complex(x) for x in coeffs])
    while len(c) and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg < 1:
        raise DomainError("need a nonconstant polynomial")
    c = c / c[-1]
    dc = c[1:] * np.arange(1, deg + 1)
    absc = np.abs(c)

    # start on a circle of radius from the Cauchy bound, with a seeded perturbation
    radius = max(2.0 * max(absc[k] ** (1.0 / (deg - k)) for k in range(deg)), 1.0)
    rng = np.random.default_rng(config.seed)
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4 + 0.1 * rng.random(deg)
    z = radius * np.exp(1j * angles) - c[-2] / deg

    eps = np.finfo(float).eps
    for it in range(1, config.max_iter + 1):
        pz = np.polyval(c[::-1], z)
        dpz = np.polyval(dc[::-1], z) if deg > 1 else np.ones_like(z)
        bound = np.polyval(absc[::-1], np.abs(z))
        small = np.abs(pz) <= 8 * deg * eps * bound
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(small, 0, pz / dpz)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            step = np.where(small, 0, ratio / (1 - ratio * s))
        if not np.all(np.isfinite(step)):
            # a derivative vanished at an iterate; nudge and continue
            bad = ~np.isfinite(step)
            step[bad] = 1e-8 * (1 + np.abs(z[bad]))
        z = z - step
        if np.all(small | (np.abs(step) <= config.tol * (1 + np.abs(z)))):
            return z
    raise NumericFailure(f"Aberth iteration did not converge in {config.max_iter} steps")


def critical_values(base: FiberBase, config: RootConfig = RootConfig()) -> CriticalValueSet:
    """Values of ``q0`` at the ``n - 1`` roots of ``q0'`` (with multiplicity).

    >>> sorted(round(v.real, 9) for v in critical_values(FiberBase(3, (-3,))).values)
    [-2.0, 2.0]
    """
    q0 = base.q0()
    dq = q0.derivative()
    pts = aberth_roots(dq.coeffs, config)
    coeffs = np.array([complex(x) for x in q0.coeffs])
    vals = np.polyval(coeffs[::-1], pts)
    return CriticalValueSet(tuple(complex(v) for v in vals), q0, tuple(complex(p) for p in pts))


def cv_product_poly(base: FiberBase, cvs: CriticalValueSet) -> np.ndarray:
    """Coefficients (lowest first) of ``(-1)^(n(n-1)/2) n^n prod(y + c_i)``."""
    n = base.n
    sign = -1 if (n * (n - 1) // 2) & 1 else 1
    prod = np.array([1.0 + 0j])
    for cv in cvs.values:
        # multiply by (y + cv), lowest first
        prod = np.concatenate([prod * cv, [0]]) + np.concatenate([[0], prod])
    return sign * float(n) ** n * prod


def verify_cv_factorization(base: FiberBase, tol: float = 1e-6,
                            config: RootConfig = RootConfig()) -> bool:
    """Compare ``fiber_disc_poly`` with the product over critical values.

    The comparison is coefficientwise, relative to the largest coefficient of
    the exact polynomial.
    """
    exact = fiber_disc_poly(base)
    approx = cv_product_poly(base, critical_values(base, config))
    ex = np.array([float(c) for c in exact.coeffs] + [0.0] * (len(approx) - len(exact.coeffs)))
    scale = float(np.max(np.abs(ex))) if ex.size else 1.0
    return bool(np.max(np.abs(approx - ex)) <= tol * scale)


# --- integral points on a fiber ------------------------------------------

_INT64_SAFE = 1 << 62


def _nonpositive_right_of(p: IntPoly, m: int) -> bool:
    """Exact certificate that p(y) <= 0 for all real y >= m (all Taylor coefficients at m <= 0)."""
    return all(c <= 0 for c in p.shift(m).coeffs)


def _nonpositive_left_of(p: IntPoly, m: int) -> bool:
    """Exact certificate that p(y) <= 0 for all real y <= m."""
    return all(c * (-1) ** k <= 0 for k, c in enumerate(p.shift(m).coeffs))


def positive_window(p: IntPoly) -> tuple[Optional[int], Optional[int]]:
    """Integer interval ``[lo, hi]`` outside of which ``p(y) <= 0``.

    ``None`` means unbounded on that side.  Endpoints are guessed from
    floating-point roots and kept only when certified exactly by the sign
    pattern of the Taylor expansion at the endpoint.
    """
    d, lc = p.degree, p.lc
    if d <= 0:
        return (None, None)
    want_left = (d % 2 == 0 and lc < 0) or (d % 2 == 1 and lc > 0)
    want_right = lc < 0
    if not (want_left or want_right):
        return (None, None)
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    real = [r.real for r in roots if abs(r.imag) <= 1e-7 * (1 + abs(r))]
    if real:
        left_guess = int(np.floor(min(real))) - 1
        right_guess = int(np.ceil(max(real))) + 1
    else:
        # no real roots: p keeps the sign of lc; probe near the real parts of the roots
        centre = int(round(float(np.mean(roots.real))))
        left_guess = right_guess = centre
    lo = left_guess if want_left and _nonpositive_left_of(p, left_guess) else None
    hi = right_guess if want_right and _nonpositive_right_of(p, right_guess) else None
    return (lo, hi)


def fiber_square_points(p: IntPoly, y_bound: int, d_bound: Optional[int] = None,
                        include_singular: bool = False) -> tuple[np.ndarray, np.ndarray, int]:
    """Integers ``|y| <= y_bound`` where ``p(y)`` is a perfect square.

    Returns ``(ys, roots, zeros)``: the y values with ``p(y) = D^2 > 0`` (or
    ``>= 0`` with ``include_singular``) and ``D <= d_bound``, their square
    roots ``D``, and the number of y in range with ``p(y) == 0``.
    """
    lo, hi = positive_window(p)
    lo = -y_bound if lo is None else max(-y_bound, lo)
    hi = y_bound if hi is None else min(y_bound, hi)
    # zeros of p outside the window are integer roots; count them exactly
    outside_zeros = [y for y in _integer_roots(p)
                     if -y_bound <= y <= y_bound and not lo <= y <= hi] if lo > -y_bound or hi < y_bound else []
    if lo > hi:
        ys, ds, zeros = np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), 0
    else:
        bound = max(abs(lo), abs(hi), 1)
        mag = sum(abs(c) * bound ** k for k, c in enumerate(p.coeffs))
        scan = _scan_int64 if mag < _INT64_SAFE else _scan_bigint
        ys, ds, zeros = scan(p, lo, hi, d_bound, include_singular)
    if outside_zeros:
        zeros += len(outside_zeros)
        if include_singular:
            ys = np.concatenate([np.asarray(ys, dtype=object), np.array(outside_zeros, dtype=object)])
            ds = np.concatenate([np.asarray(ds, dtype=object), np.zeros(len(outside_zeros), dtype=object)])
    return ys, ds, zeros


def _integer_roots(p: IntPoly) -> list[int]:
    if p.is_zero():
        raise DomainError("zero polynomial has every integer as a root")
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    roots = {0} if k else set()
    for q in sympy.divisors(abs(p.coeffs[k])):
        for r in (q, -q):
            if p(r) == 0:
                roots.add(r)
    return sorted(roots)


_CHUNK = 1 << 20


def _scan_int64(p, lo, hi, d_bound, include_singular):
    coeffs = [np.int64(c) for c in reversed(p.coeffs)]
    ys_out, ds_out = [], []
    zeros = 0
    for start in range(lo, hi + 1, _CHUNK):
        y = np.arange(start, min(hi, start + _CHUNK - 1) + 1, dtype=np.int64)
        v = np.full_like(y, coeffs[0])
        for c in coeffs[1:]:
            v = v * y + c
        zeros += int(np.count_nonzero(v == 0))
        mask = v >= 0 if include_singular else v > 0
        if not mask.any():
            continue
        yy, vv = y[mask], v[mask]
        s = np.floor(np.sqrt(vv.astype(np.float64))).astype(np.int64)
        # float sqrt is within one of the true root for values below 2**62
        for adj in (0, 1, -1):
            t = s + adj
            hit = t * t == vv
            if adj == 0:
                root = np.where(hit, t, -1)
            else:
                root = np.where((root < 0) & hit, t, root)
        ok = root >= 0
        if d_bound is not None:
            ok &= root <= d_bound
        if ok.any():
            ys_out.append(yy[ok])
            ds_out.append(root[ok])
    if ys_out:
        return np.concatenate(ys_out), np.concatenate(ds_out), zeros
    return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), zeros


def _scan_bigint(p, lo, hi, d_bound, include_singular):
    ys, ds = [], []
    zeros = 0
    for y in range(lo, hi + 1):
        v = p(y)
        if v == 0:
            zeros += 1
            if include_singular:
                ys.append(y)
                ds.append(0)
            continue
        if v < 0:
            continue
        r = math.isqrt(v)
        if r * r == v and (d_bound is None or r <= d_bound):
            ys.append(y)
            ds.append(r)
    return np.array(ys, dtype=object), np.array(ds, dtype=object), zeros
