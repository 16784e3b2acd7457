"""Squarefree decomposition, gcd-free bases and factorization over GF(p).

Over Q only the squarefree / pairwise-coprime level is available; over GF(p)
a full split into monic irreducibles is done by distinct-degree followed by
equal-degree (Cantor-Zassenhaus) splitting.  Exhaustive trial division by
enumerated irreducibles is kept for small degrees as an independent check.
"""

from __future__ import annotations

import functools
import itertools
import random

from .arith import Polynomial, poly_gcd


def squarefree_decomposition(f: Polynomial):
    """Return ``(unit, [(g, m), ...])`` with ``f == unit * prod(g**m)``.

    The ``g`` are monic, squarefree, pairwise coprime and of positive degree.
    """
    if not f:
        raise ValueError("squarefree decomposition of zero")
    F = f.field
    unit = f.lc
    f = f.monic()
    factors: dict[Polynomial, int] = {}
    _sqf_rec(f, 1, factors)
    return unit, sorted(factors.items(), key=lambda gm: (gm[1], gm[0].sort_key()))


def _sqf_rec(f: Polynomial, mult: int, out: dict):
    # Musser's algorithm with the characteristic-p root extraction
    if f.degree < 1:
        return
    F = f.field
    df = f.derivative()
    if not df:
        _sqf_rec(_pth_root(f), mult * F.p, out)
        return
    g = poly_gcd(f, df)
    h = f.exact_div(g)
    i = 1
    while h.degree >= 1:
        G = poly_gcd(g, h)
        H = h.exact_div(G)
        if H.degree >= 1:
            out[H] = out.get(H, 0) + i * mult
        g = g.exact_div(G)
        h = G
        i += 1
    if g.degree >= 1:
        # what remains is a p-th power (only possible in characteristic p)
        _sqf_rec(_pth_root(g.monic()), mult * F.p, out)


def _pth_root(f: Polynomial) -> Polynomial:
    F = f.field
    p = F.p
    if not p:
        raise ArithmeticError("derivative vanished in characteristic zero")
    # a**p == a in GF(p)
    return Polynomial._make(F, f.coeffs[::p])


def factor_squarefree(f: Polynomial, full: bool = False):
    """Squarefree factorization ``f = unit * prod(g_i ** m_i)``.

    With ``full=True`` (prime fields only) each squarefree part is further
    split into monic irreducibles.  Returns ``(unit, [(g, m), ...])``.
    """
    unit, parts = squarefree_decomposition(f)
    if not full:
        return unit, parts
    if not f.field.p:
        raise ValueError("full factorization is only available over prime fields")
    out = []
    for g, m in parts:
        for h in irreducible_factors(g):
            out.append((h, m))
    out.sort(key=lambda hm: (hm[0].sort_key(), hm[1]))
    return unit, out


def coprime_basis(polys) -> list[Polynomial]:
    """Pairwise-coprime monic squarefree basis refining the given polynomials.

    Every nonzero input is ``unit * prod(b ** e_b)`` over the returned basis.
    Constants and zeros are ignored.
    """
    work: list[Polynomial] = []
    for f in polys:
        if f and f.degree >= 1:
            work.extend(g for g, _ in squarefree_decomposition(f)[1])
    basis: list[Polynomial] = []
    while work:
        a = work.pop()
        if a.degree < 1:
            continue
        for i, b in enumerate(basis):
            g = poly_gcd(a, b)
            if g.degree >= 1:
                basis.pop(i)
                rest = b.exact_div(g)
                basis.append(g)
                if rest.degree >= 1:
                    basis.append(rest.monic())
                work.append(a.exact_div(g).monic())
                break
        else:
            basis.append(a.monic())
    basis.sort(key=Polynomial.sort_key)
    return basis


def multiplicity(f: Polynomial, c: Polynomial) -> int:
    """Exponent of the squarefree ``c`` in ``f``, requiring uniformity.

    Raises ``NonUniformCluster`` when the irreducible factors of ``c`` occur
    in ``f`` with different multiplicities.
    """
    if not f:
        raise ValueError("multiplicity in zero polynomial")
    k = 0
    while True:
        q, r = divmod(f, c)
        if r:
            break
        f = q
        k += 1
    if poly_gcd(f, c).degree >= 1:
        raise NonUniformCluster(f"cluster {c} is not uniform in the given polynomial")
    return k


class NonUniformCluster(ValueError):
    pass


def _powmod(a: Polynomial, e: int, m: Polynomial) -> Polynomial:
    result = Polynomial.one(a.field)
    a = a % m
    while e:
        if e & 1:
            result = (result * a) % m
        e >>= 1
        if e:
            a = (a * a) % m
    return result


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split monic squarefree ``f`` into products of irreducibles of equal degree."""
    F = f.field
    p = F.p
    t = Polynomial.t(F)
    out = []
    h = t
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f)
        g = poly_gcd(f, h - t)
        if g.degree >= 1:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree >= 1:
        out.append((f.monic(), f.degree))
    return out


def equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus split of a product of degree-``d`` irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    p = F.p
    n = f.degree
    while True:
        a = Polynomial._make(F, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            b = a % f
            acc = b
            for _ in range(d - 1):
                b = (b * b) % f
                acc = acc + b
            g = poly_gcd(f, acc)
        else:
            g = poly_gcd(f, _powmod(a, (p ** d - 1) // 2, f) - 1)
        if 1 <= g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g).monic(), d, rng)


def irreducible_factors(f: Polynomial, seed: int = 0) -> list[Polynomial]:
    """Monic irreducible factors of a squarefree polynomial over GF(p), sorted."""
    if not f.field.p:
        raise ValueError("irreducible factorization needs a prime field")
    f = f.monic()
    if f.degree < 1:
        return []
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree(f):
        out.extend(equal_degree(g, d, rng))
    out.sort(key=Polynomial.sort_key)
    return out


def is_irreducible(f: Polynomial) -> bool:
    if f.degree < 1:
        return False
    if f.field.p:
        return len(irreducible_factors(f)) == 1 and squarefree_decomposition(f)[1] == [(f.monic(), 1)]
    raise ValueError("irreducibility test needs a prime field")


@functools.lru_cache(maxsize=None)
def _irreducibles(p: int, degree: int) -> tuple:
    from .arith import Field
    field = Field(p)
    smaller = [g for d in range(1, degree // 2 + 1) for g in _irreducibles(p, d)]
    out = []
    for tail in itertools.product(range(p), repeat=degree):
        f = Polynomial._make(field, list(tail[::-1]) + [1])
        if all(f % g for g in smaller):
            out.append(f)
    return tuple(out)


def enumerate_irreducibles(field, degree: int) -> list[Polynomial]:
    """All monic irreducibles of the given degree over GF(p), by sieving."""
    if not field.p:
        raise ValueError("enumeration needs a prime field")
    return list(_irreducibles(field.p, degree))


def trial_factor(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Factor over GF(p) by trial division with enumerated irreducibles (deg <= 8)."""
    if f.degree > 8:
        raise ValueError("trial division is limited to degree <= 8")
    F = f.field
    f = f.monic()
    out = {}
    d = 1
    while f.degree >= 2 * d:
        for g in enumerate_irreducibles(F, d):
            while f.degree >= d:
                q, r = divmod(f, g)
                if r:
                    break
                f = q
                out[g] = out.get(g, 0) + 1
        d += 1
    if f.degree >= 1:
        # no factor of degree <= deg/2 left, so the cofactor is irreducible
        out[f] = out.get(f, 0) + 1
    return sorted(out.items(), key=lambda gm: gm[0].sort_key())
