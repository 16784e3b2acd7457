"""Global sections, the h0-scan splitting-type oracle, and maximal-degree germs."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .arith import Polynomial, poly_lcm
from .bundle import Germ, VectorBundle, germ_degree, twist
from .matrix import nullspace, rf_nullspace


class OracleInconsistency(AssertionError):
    """The h0 scan produced data no bundle can have; indicates a bug."""


class SpanExhausted(ValueError):
    pass


@dataclass(frozen=True)
class SectionSpace:
    """Basis of H^0(E) as pairs ``(v, w)`` with ``v(t) = T(t) w(1/t)``.

    ``v`` is a tuple of polynomials in t, ``w`` a tuple of polynomials in s.
    """

    bundle: VectorBundle
    basis: tuple
    dimension: int


def global_sections(E: VectorBundle, bound: int | None = None) -> SectionSpace:
    """Solve for H^0(E) exactly.

    Unknowns are the coefficients of ``w(s)`` up to degree ``bound``
    (default ``max(0, -lo(T^-1))``, which is provably enough: ``w = T^-1 v``
    with ``v`` polynomial).  Constraints: ``T(t) w(1/t)`` has no negative powers.
    """
    if bound is None:
        bound = max(0, -E.inverse_span[0])
    return _sections(E, bound)


@functools.lru_cache(maxsize=512)
def _sections(E: VectorBundle, B: int) -> SectionSpace:
    F = E.field
    n = E.rank
    T = E.transition
    ncols = n * (B + 1)
    rows: dict[tuple[int, int], list] = {}
    for r in range(n):
        for c in range(n):
            entry = T[r, c]
            for k, coef in entry.terms().items():
                for j in range(B + 1):
                    e = k - j
                    if e < 0:
                        row = rows.get((r, e))
                        if row is None:
                            row = rows[(r, e)] = [F.zero] * ncols
                        row[j * n + c] = F.reduce(row[j * n + c] + coef)
    kernel = nullspace(list(rows.values()), ncols, F)
    basis = []
    for x in kernel:
        w = tuple(Polynomial._make(F, [x[j * n + c] for j in range(B + 1)]) for c in range(n))
        v = _v_from_w(E, w)
        basis.append((v, w))
    return SectionSpace(E, tuple(basis), len(basis))


def _v_from_w(E, w):
    F = E.field
    n = E.rank
    T = E.transition
    out = []
    for r in range(n):
        acc: dict[int, object] = {}
        for c in range(n):
            for j, wc in enumerate(w[c].coeffs):
                if not wc:
                    continue
                for k, coef in T[r, c].terms().items():
                    acc[k - j] = acc.get(k - j, 0) + coef * wc
        acc = {e: F.reduce(x) for e, x in acc.items()}
        if any(x for e, x in acc.items() if e < 0):
            raise OracleInconsistency("section has negative powers of t in chart 0")
        top = max((e for e, x in acc.items() if x), default=-1)
        out.append(Polynomial._make(F, [acc.get(e, F.zero) for e in range(top + 1)]))
    return tuple(out)


def h0(E: VectorBundle, k: int = 0) -> int:
    """dim H^0(E(k))."""
    return global_sections(twist(E, k)).dimension


def splitting_type_oracle(E: VectorBundle, full_scan: bool = False) -> tuple[int, ...]:
    """Splitting type from dimension counts alone.

    ``h(k) = sum_i max(0, d_i + k + 1)`` so the second difference of ``h``
    counts the ``d_i`` equal to ``-k``.  The scan starts where ``h`` must vanish
    and stops once every degree has been located (or at the a-priori upper
    end when ``full_scan``).
    """
    n = E.rank
    hi_T = E.span[1]
    hi_inv = E.inverse_span[1]
    k_min, k_max = -hi_T - 1, hi_inv + 1
    degrees: list[int] = []
    prev_h = prev_dh = 0
    dh = 0
    for k in range(k_min, k_max + 1):
        h = h0(E, k)
        if k == k_min and h:
            raise OracleInconsistency(f"h0(E({k})) = {h}, expected 0 below the degree bound")
        dh = h - prev_h
        count = dh - prev_dh
        if count < 0:
            raise OracleInconsistency(f"h0 increments decreased at k={k}")
        degrees.extend([-k] * count)
        prev_h, prev_dh = h, dh
        if dh == n and not full_scan:
            break
    if dh != n or len(degrees) != n:
        raise OracleInconsistency(f"h0 increment {dh} != rank {n} at the end of the scan")
    if sum(degrees) != E.c1:
        raise OracleInconsistency(f"degrees {degrees} do not sum to c1 = {E.c1}")
    return tuple(sorted(degrees, reverse=True))


def span_annihilator(avoid, rank: int):
    """Polynomial rows ``N`` with ``N sigma = 0`` iff ``sigma`` lies in the K-span of ``avoid``."""
    if not avoid:
        raise ValueError("nothing to annihilate")
    rows = [list(g.coords) for g in avoid]
    kernel, r = rf_nullspace(rows)
    if r != len(avoid):
        raise ValueError("germs to avoid are linearly dependent")
    out = []
    for vec in kernel:
        den = Polynomial.one(avoid[0].field)
        for x in vec:
            if x:
                den = poly_lcm(den, x.den)
        out.append([(x.num * den.exact_div(x.den)) if x else Polynomial.zero(den.field)
                    for x in vec])
    return out


def _in_span(annihilator, v) -> bool:
    if annihilator is None:
        return not any(v)
    for row in annihilator:
        acc = None
        for a, b in zip(row, v):
            if a and b:
                acc = a * b if acc is None else acc + a * b
        if acc:
            return False
    return True


def max_degree_germ(E: VectorBundle, avoid=(), start: int | None = None):
    """A germ of maximal degree outside the K-span of ``avoid``; returns ``(germ, degree)``.

    Scans ``d`` downward; sections of ``E(-d)`` read in E's chart-0 frame are
    exactly the germs with divisor >= d * infinity, so the first ``d`` with a
    section outside the span is the maximum.  ``start`` caps the scan (a known
    upper bound such as the previous greedy degree).
    """
    avoid = list(avoid)
    if len(avoid) >= E.rank:
        raise SpanExhausted("the avoided germs already span the generic fiber")
    ann = span_annihilator(avoid, E.rank) if avoid else None
    hi = E.span[1]
    if start is not None:
        hi = min(hi, start)
    lo = -E.inverse_span[1]
    for d in range(hi, lo - 1, -1):
        for v, _ in global_sections(twist(E, -d)).basis:
            if not _in_span(ann, v):
                germ = Germ(v)
                deg = germ_degree(E, germ)
                if deg != d:
                    raise OracleInconsistency(f"section of E({-d}) has degree {deg}, expected {d}")
                return germ, d
    raise OracleInconsistency("degree scan exhausted without finding a germ")
