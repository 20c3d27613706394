"""Exact univariate polynomials over the integers.

Coefficients are stored lowest degree first as Python ints, so nothing
overflows regardless of how large intermediate values get.  The module
provides the ring operations, the subresultant resultant, discriminants,
square-free decomposition and perfect-square tests that the rest of the
package builds on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

from .errors import DomainError


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Dense polynomial with integer coefficients, lowest degree first.

    >>> IntPoly([-7, -21, 0, 1])(5)
    13
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim([int(c) for c in coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return to_str(self)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _coerce(other)
        return IntPoly(_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        other = _coerce(other)
        return IntPoly(_add(self.coeffs, [-c for c in other.coeffs]))

    def __rsub__(self, other) -> "IntPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = _coerce(other)
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result, base = IntPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, k: int) -> "IntPoly":
        """Return f(t + k)."""
        acc: list = []
        for c in reversed(self.coeffs):
            # acc <- acc * (t + k) + c
            nxt = [0] * (len(acc) + 1)
            for i, a in enumerate(acc):
                nxt[i + 1] += a
                nxt[i] += a * k
            nxt[0] += c
            acc = nxt
        return IntPoly(acc)

    def content(self) -> int:
        return content(self)

    def primitive_part(self) -> "IntPoly":
        return primitive_part(self)


def _coerce(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    raise TypeError(f"cannot combine IntPoly with {type(x).__name__}")


def _add(a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _mul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def to_str(p: IntPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def content(p: IntPoly) -> int:
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    return reduce(math.gcd, p.coeffs, 0)


def primitive_part(p: IntPoly) -> IntPoly:
    """``p / content(p)``; the sign of the leading coefficient is kept."""
    g = content(p)
    if g == 0:
        raise DomainError("primitive part of the zero polynomial")
    return IntPoly(c // g for c in p.coeffs)


def normalize(p: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    q = primitive_part(p)
    return -q if q.lc < 0 else q


def divmod_monic_free(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly] | None:
    """Exact division over Z: (q, r) with f = q*g + r if every quotient step is integral.

    Returns None as soon as a non-integral quotient coefficient appears.
    """
    if g.is_zero():
        raise DomainError("division by the zero polynomial")
    r = list(f.coeffs)
    dg, lg = g.degree, g.lc
    if len(r) - 1 < dg:
        return IntPoly(), f
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c % lg:
            return None
        c //= lg
        q[k] = c
        if c:
            for i, gc in enumerate(g.coeffs):
                r[k + i] -= c * gc
    return IntPoly(q), IntPoly(r[:dg])


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """f / g, which must be exact over Z."""
    res = divmod_monic_free(f, g)
    if res is None or res[1]:
        raise ArithmeticError(f"{g!r} does not divide {f!r} over Z")
    return res[0]


def divides(g: IntPoly, f: IntPoly) -> bool:
    res = divmod_monic_free(f, g)
    return res is not None and res[1].is_zero()


def pseudo_rem(f: Sequence[int], g: Sequence[int]) -> list:
    """lc(g)^(deg f - deg g + 1) * f mod g, coefficient lists lowest first."""
    r = list(f)
    dg, lg = len(g) - 1, g[-1]
    delta = len(r) - 1 - dg
    if delta < 0:
        return r
    e = delta + 1
    while len(r) - 1 >= dg and r:
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [lg * x for x in r]
        for i, gc in enumerate(g):
            r[shift + i] -= c * gc
        r.pop()
        _trim(r)
        e -= 1
    if e:
        m = lg ** e
        r = [m * x for x in r]
    return r


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant via the subresultant pseudo-remainder sequence.

    Equals ``lc(f)**deg(g) * prod(g(r))`` over the roots ``r`` of ``f``.

    >>> resultant(IntPoly([-2, 1]), IntPoly([-5, 1]))
    -3
    """
    if f.is_zero() and g.is_zero():
        raise DomainError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree

    ca, cb = content(f), content(g)
    a = [c // ca for c in f.coeffs]
    b = [c // cb for c in g.coeffs]
    da, db = len(a) - 1, len(b) - 1
    t = ca ** db * cb ** da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da & 1 and db & 1:
            s = -1
    gg, h = 1, 1
    while True:
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        r = pseudo_rem(a, b)
        if not r:
            return 0
        a = b
        denom = gg * h ** delta
        b = [x // denom for x in r]
        da, db = len(a) - 1, len(b) - 1
        gg = a[-1]
        if delta == 0:
            h = h
        elif delta == 1:
            h = gg
        else:
            h = gg ** delta // h ** (delta - 1)
        if db == 0:
            break
    lb = b[-1]
    if da == 0:
        hh = 1
    elif da == 1:
        hh = lb
    else:
        hh = lb ** da // h ** (da - 1)
    return s * t * hh


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f).

    >>> discriminant(IntPoly([-1, -1, 0, 1]))
    -23
    """
    n = f.degree
    if n < 2:
        raise DomainError(f"discriminant needs degree >= 2, got {n}")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) & 1 else 1
    q, rem = divmod(r, f.lc)
    assert rem == 0
    return sign * q


# --- rational helpers for gcd / square-free work -------------------------

def _frac_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_divmod(a: list, b: list) -> tuple[list, list]:
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lb
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r.pop()
        _frac_trim(r)
    return _frac_trim(q), r


def _to_int_normalized(a: list) -> IntPoly:
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in a), 1)
    return normalize(IntPoly(int(c * den) for c in a))


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Gcd over Q, returned primitive with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd of two zero polynomials")
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    a = list(map(Fraction, normalize(f).coeffs))
    b = list(map(Fraction, normalize(g).coeffs))
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
        if b:
            # keep sizes small
            b = list(map(Fraction, _to_int_normalized(b).coeffs))
    return _to_int_normalized(a)


@dataclass(frozen=True)
class SquareFreeDecomp:
    """``content * prod(f**m for f, m in factors)``, factors primitive with lc > 0."""

    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly([self.content])
        for f, m in self.factors:
            out = out * f ** m
        return out


def _frac_deriv(a: list) -> list:
    return [i * c for i, c in enumerate(a)][1:]


def _frac_sub(a: list, b: list) -> list:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _frac_trim(out)


def _frac_gcd(a: list, b: list) -> list:
    """Monic gcd over Q of two coefficient lists, not both empty."""
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    lc = a[-1]
    return [c / lc for c in a]


def squarefree_decomposition(p: IntPoly) -> SquareFreeDecomp:
    """Yun's algorithm over Q with the integer content tracked separately.

    >>> squarefree_decomposition(IntPoly([0, 0, 1, -2, 1])).factors
    ((IntPoly([0, -1, 1]), 2),)
    """
    if p.is_zero():
        raise DomainError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return SquareFreeDecomp(p.lc, ())
    a = list(map(Fraction, normalize(p).coeffs))
    da = _frac_deriv(a)
    b = _frac_gcd(a, da)
    c, _ = _frac_divmod(a, b)
    q, _ = _frac_divmod(da, b)
    d = _frac_sub(q, _frac_deriv(c))
    factors = []
    i = 1
    while len(c) > 1:
        w = _frac_gcd(c, d) if d else [x / c[-1] for x in c]
        if len(w) > 1:
            factors.append((_to_int_normalized(w), i))
        c, _ = _frac_divmod(c, w)
        q = _frac_divmod(d, w)[0] if d else []
        d = _frac_sub(q, _frac_deriv(c))
        i += 1
    lc_prod = 1
    for f, m in factors:
        lc_prod *= f.lc ** m
    # the product of the factors is primitive (Gauss), so this is integral
    cont, rem = divmod(p.lc, lc_prod)
    assert rem == 0
    return SquareFreeDecomp(cont, tuple(factors))


def constant_times_square(p: IntPoly) -> Optional[tuple[int, IntPoly]]:
    """Return (c, g) with p = c*g**2, g primitive with lc > 0, or None.

    >>> constant_times_square(IntPoly([0, 0, -27]))
    (-27, IntPoly([0, 1]))
    """
    sfd = squarefree_decomposition(p)
    if any(m % 2 for _, m in sfd.factors):
        return None
    g = IntPoly([1])
    for f, m in sfd.factors:
        g = g * f ** (m // 2)
    return sfd.content, g


def is_square_int(n: int) -> Optional[int]:
    """Nonnegative square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
