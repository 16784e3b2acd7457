"""Closed points of P^1, divisors, valuations and functions with prescribed divisor.

Finite closed points are grouped into *clusters*: a monic squarefree
polynomial in ``t`` stands for the set of its roots.  Over Q no irreducible
factorization is attempted; instead any set of divisors can be brought onto
a common pairwise-coprime cluster basis with :func:`refine`, after which
pointwise comparisons are exact.
"""

from __future__ import annotations

from .arith import Field, Polynomial, RationalFunction, format_poly, poly_gcd
from .factor import (NonUniformCluster, coprime_basis, irreducible_factors, multiplicity,
                     squarefree_decomposition)


class NotPrincipal(ValueError):
    pass


class Unsupported(ValueError):
    pass


class Point:
    """Infinity (``cluster is None``) or a finite cluster."""

    __slots__ = ("cluster",)

    def __init__(self, cluster: Polynomial | None = None):
        if cluster is not None:
            if cluster.degree < 1:
                raise ValueError("cluster must have positive degree")
            if cluster.lc != cluster.field.one:
                raise ValueError("cluster must be monic")
            _, parts = squarefree_decomposition(cluster)
            if any(m > 1 for _, m in parts):
                raise ValueError("cluster must be squarefree")
        self.cluster = cluster

    @classmethod
    def infinity(cls) -> Point:
        return cls(None)

    @classmethod
    def finite(cls, cluster: Polynomial) -> Point:
        return cls(cluster)

    @classmethod
    def rational(cls, field: Field, a) -> Point:
        """The point t = a."""
        return cls(Polynomial._make(field, [field.neg(field(a)), field.one]))

    @property
    def is_infinity(self) -> bool:
        return self.cluster is None

    @property
    def residue_degree(self) -> int:
        return 1 if self.cluster is None else self.cluster.degree

    def root(self):
        """The coordinate ``a`` of a finite rational point ``t - a``."""
        if self.cluster is None or self.cluster.degree != 1:
            raise ValueError("not a finite rational point")
        F = self.cluster.field
        return F.neg(self.cluster.coeffs[0])

    def __eq__(self, other):
        return isinstance(other, Point) and self.cluster == other.cluster

    def __hash__(self):
        return hash(("Point", self.cluster))

    def __repr__(self):
        return "Point(inf)" if self.cluster is None else f"Point({self.cluster})"


def rational_points(field: Field):
    """Rational points in a fixed order: infinity, then t = 0, 1, -1, 2, ..."""
    yield Point.infinity()
    if field.p:
        order = [0, 1] + [x for k in range(1, field.p) for x in (field.neg(k), k + 1)]
        seen = set()
        for a in order:
            a %= field.p
            if a not in seen:
                seen.add(a)
                yield Point.rational(field, a)
    else:
        for a in field.elements():
            yield Point.rational(field, a)


def valuation(f: RationalFunction, P: Point) -> int:
    """Order of vanishing of ``f`` at ``P`` (uniform across the cluster)."""
    if not f:
        raise ValueError("valuation of zero")
    if P.is_infinity:
        return f.den.degree - f.num.degree
    c = P.cluster
    return multiplicity(f.num, c) - multiplicity(f.den, c)


class Divisor:
    """Finite formal sum of clusters plus a multiplicity at infinity.

    ``finite`` maps monic squarefree, pairwise coprime clusters to nonzero
    integers.  Equality refines first, so it is independent of cluster
    grouping.  Not hashable for the same reason.
    """

    __slots__ = ("field", "finite", "at_infinity")

    def __init__(self, field: Field, finite=None, at_infinity: int = 0):
        self.field = field
        items = dict(finite or {})
        clean = {}
        for c, m in items.items():
            if m:
                if c.field != field:
                    raise ValueError("cluster over the wrong field")
                clean[c] = int(m)
        cl = list(clean)
        for i in range(len(cl)):
            for j in range(i + 1, len(cl)):
                if poly_gcd(cl[i], cl[j]).degree >= 1:
                    raise ValueError(f"clusters {cl[i]} and {cl[j]} are not coprime")
        for c in cl:
            if c.degree < 1 or c.lc != field.one:
                raise ValueError(f"bad cluster {c}")
        self.finite = clean
        self.at_infinity = int(at_infinity)

    @classmethod
    def _make(cls, field, finite, at_infinity):
        obj = cls.__new__(cls)
        obj.field = field
        obj.finite = {c: m for c, m in finite.items() if m}
        obj.at_infinity = at_infinity
        return obj

    @classmethod
    def point(cls, P: Point, mult: int = 1, field: Field | None = None) -> Divisor:
        if P.is_infinity:
            if field is None:
                raise ValueError("field required for a divisor at infinity")
            return cls._make(field, {}, mult)
        return cls._make(P.cluster.field, {P.cluster: mult}, 0)

    @property
    def degree(self) -> int:
        return divisor_degree(self)

    def is_zero(self) -> bool:
        return not self.finite and not self.at_infinity

    def support(self) -> list[Point]:
        pts = [Point(c) for c in sorted(self.finite, key=Polynomial.sort_key)]
        if self.at_infinity:
            pts.append(Point.infinity())
        return pts

    def meets(self, P: Point) -> bool:
        """Whether ``P`` shares a root with the support."""
        if P.is_infinity:
            return self.at_infinity != 0
        return any(poly_gcd(c, P.cluster).degree >= 1 for c in self.finite)

    def at(self, P: Point) -> int:
        """Multiplicity at ``P``; the cluster of ``P`` must be uniform in this divisor."""
        if P.is_infinity:
            return self.at_infinity
        c = P.cluster
        covered = 0
        values = set()
        for b, m in self.finite.items():
            g = poly_gcd(b, c)
            if g.degree >= 1:
                covered += g.degree
                values.add(m)
        if not values:
            return 0
        if len(values) > 1 or covered != c.degree:
            raise NonUniformCluster(f"divisor is not uniform on cluster {c}")
        return values.pop()

    def _binary(self, other, sign):
        if self.field != other.field:
            raise ValueError("field mismatch")
        a, b = refine([self, other])
        out = dict(a.finite)
        for c, m in b.finite.items():
            out[c] = out.get(c, 0) + sign * m
        return Divisor._make(self.field, out, a.at_infinity + sign * b.at_infinity)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return Divisor._make(self.field, {c: -m for c, m in self.finite.items()}, -self.at_infinity)

    def __mul__(self, k: int):
        return Divisor._make(self.field, {c: k * m for c, m in self.finite.items()}, k * self.at_infinity)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __ge__(self, other):
        return dominates(self, other)

    def __le__(self, other):
        return dominates(other, self)

    def split_irreducible(self) -> Divisor:
        """Over GF(p): same divisor with every cluster split into irreducibles."""
        out = {}
        for c, m in self.finite.items():
            for g in irreducible_factors(c):
                out[g] = m
        return Divisor._make(self.field, out, self.at_infinity)

    def to_json(self) -> list:
        items = [{"cluster": format_poly(c), "mult": m}
                 for c, m in sorted(self.finite.items(), key=lambda cm: cm[0].sort_key())]
        items.append({"infinity": self.at_infinity})
        return items

    def __repr__(self):
        parts = [f"({c})^{m}" for c, m in sorted(self.finite.items(), key=lambda cm: cm[0].sort_key())]
        if self.at_infinity:
            parts.append(f"inf^{self.at_infinity}")
        return "Divisor(" + (" + ".join(parts) or "0") + ")"


def divisor_degree(D: Divisor) -> int:
    return sum(m * c.degree for c, m in D.finite.items()) + D.at_infinity


def refine(divisors) -> list[Divisor]:
    """Rewrite divisors over one common pairwise-coprime cluster basis."""
    divisors = list(divisors)
    if not divisors:
        return []
    basis = coprime_basis([c for D in divisors for c in D.finite])
    out = []
    for D in divisors:
        fin = {}
        for b in basis:
            for c, m in D.finite.items():
                if c.degree >= b.degree and not (c % b):
                    fin[b] = m
                    break
        out.append(Divisor._make(D.field, fin, D.at_infinity))
    return out


def dominates(A: Divisor, B: Divisor) -> bool:
    """Pointwise ``A >= B``."""
    a, b = refine([A, B])
    if a.at_infinity < b.at_infinity:
        return False
    keys = set(a.finite) | set(b.finite)
    return all(a.finite.get(c, 0) >= b.finite.get(c, 0) for c in keys)


def pointwise_min(divisors) -> Divisor:
    ds = refine(divisors)
    keys = set().union(*(D.finite for D in ds))
    fin = {c: min(D.finite.get(c, 0) for D in ds) for c in keys}
    return Divisor._make(ds[0].field, fin, min(D.at_infinity for D in ds))


def principal_divisor(f: RationalFunction, full: bool = False) -> Divisor:
    """Divisor of zeros minus poles of ``f``.  ``full`` splits clusters into
    irreducibles (prime fields only)."""
    if not f:
        raise ValueError("divisor of zero")
    F = f.field
    fin = {}
    for b in coprime_basis([f.num, f.den]):
        m = multiplicity(f.num, b) - multiplicity(f.den, b)
        if m:
            fin[b] = m
    D = Divisor._make(F, fin, f.den.degree - f.num.degree)
    return D.split_irreducible() if full else D


def function_with_divisor(D: Divisor, normalize_at: Point | None = None) -> RationalFunction:
    """A rational function whose principal divisor is exactly ``D``.

    Every degree-0 divisor on P^1 is principal.  With ``normalize_at`` the
    result also takes the value 1 there; that point must be rational and
    outside the support of ``D``.
    """
    if divisor_degree(D) != 0:
        raise NotPrincipal(f"divisor of degree {divisor_degree(D)} is not principal")
    F = D.field
    num = Polynomial.one(F)
    den = Polynomial.one(F)
    for c, m in D.finite.items():
        if m > 0:
            num = num * c ** m
        else:
            den = den * c ** (-m)
    f = RationalFunction._make(num, den)
    if normalize_at is None:
        return f
    P = normalize_at
    if P.residue_degree != 1:
        raise Unsupported("normalization is only supported at residue-degree-1 points")
    if D.meets(P):
        raise ValueError("normalization point lies in the support of the divisor")
    value = f.value_at_infinity() if P.is_infinity else f(P.root())
    c = F.inv(value)
    return RationalFunction._make(num.scale(c), den)
