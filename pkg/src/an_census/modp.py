"""Polynomials over the prime field F_p as coefficient lists, lowest first."""

from __future__ import annotations

from typing import Sequence


def reduce_mod(coeffs: Sequence[int], p: int) -> list[int]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def divmod_p(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        c = r[-1] * inv % p
        k = len(r) - 1 - db
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] = (r[k + i] - c * bc) % p
        _trim(r)
    return _trim(q), r


def rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return divmod_p(a, b, p)[1]


def monic(a: Sequence[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p) if a else a


def powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = rem(base, f, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), f, p)
        base = rem(mul(base, base, p), f, p)
        e >>= 1
    return result


def derivative(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def distinct_degree_degrees(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a square-free monic f over F_p."""
    f = monic(f, p)
    degrees: list[int] = []
    h = [0, 1]
    x = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            k = (len(g) - 1) // i
            degrees.extend([i] * k)
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def squarefree_factors(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    """Square-free factorization over F_p: list of (monic square-free factor, multiplicity)."""
    f = monic(f, p)
    out: list[tuple[list[int], int]] = []
    _sff(f, p, 1, out)
    merged: dict[int, list[int]] = {}
    for g, m in out:
        merged[m] = mul(merged[m], g, p) if m in merged else g
    return sorted(((g, m) for m, g in merged.items()), key=lambda t: t[1])


def _sff(f: list[int], p: int, scale: int, out: list) -> None:
    if len(f) <= 1:
        return
    df = derivative(f, p)
    if not df:
        # f is a p-th power: f(x) = g(x^p), and over F_p g(x^p) = g(x)^p
        g = [f[i] for i in range(0, len(f), p)]
        _sff(g, p, scale * p, out)
        return
    c = gcd(f, df, p)
    w = divmod_p(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i * scale))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        g = [c[i] for i in range(0, len(c), p)]
        _sff(g, p, scale * p, out)
