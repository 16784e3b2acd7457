"""Vector bundles on P^1 given by a transition matrix, and the divisor of a germ.

Convention (used everywhere): a section has chart-0 coordinates ``v(t)`` and
chart-infinity coordinates ``w(s)``, ``s = 1/t``, with ``v(t) = T(t) w(1/t)``.
With this convention O(d) has transition ``t^d`` and d+1 global sections.

Germs of the generic fiber are vectors of rational functions in ``t`` written
in the chart-0 frame; the chart-infinity view is ``T^-1 * alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Field, LaurentPolynomial, Polynomial, RationalFunction
from .divisors import Divisor, Point, divisor_degree, valuation
from .factor import coprime_basis, multiplicity
from .matrix import Matrix, SingularMatrix, laurent_span, matrix_inverse


class InvalidBundle(ValueError):
    pass


class ZeroGerm(ValueError):
    pass


class VectorBundle:
    """Rank-n bundle on P^1 with Laurent transition matrix ``T``.

    Build through :func:`validate_bundle`; instances are immutable and cache
    ``T^-1`` and ``c1`` (``det T = c * t^c1``).
    """

    __slots__ = ("field", "rank", "transition", "inverse_transition", "c1", "_det_coeff")

    def __repr__(self):
        return f"VectorBundle({self.field!r}, rank={self.rank}, c1={self.c1}, T={self.transition!r})"

    def __eq__(self, other):
        return (isinstance(other, VectorBundle) and self.field == other.field
                and self.transition == other.transition)

    def __hash__(self):
        return hash((self.field, self.transition))

    @property
    def span(self):
        return laurent_span(self.transition)

    @property
    def inverse_span(self):
        return laurent_span(self.inverse_transition)


def validate_bundle(field: Field, rank: int, T) -> VectorBundle:
    """Check that ``T`` is an invertible Laurent matrix and build the bundle."""
    if not isinstance(T, Matrix):
        T = Matrix(T)
    if T.shape != (rank, rank):
        raise InvalidBundle(f"transition has shape {T.shape}, expected ({rank}, {rank})")
    if any(not isinstance(x, LaurentPolynomial) or x.field != field for x in T.entries):
        raise InvalidBundle("transition entries must be Laurent polynomials over the bundle field")
    det = T.det()
    if not det:
        raise InvalidBundle("transition determinant is zero")
    if not det.is_monomial():
        raise InvalidBundle(f"transition determinant {det} is not a monomial")
    try:
        inv = matrix_inverse(T).map(RationalFunction.to_laurent)
    except (SingularMatrix, ValueError) as exc:  # pragma: no cover - det check above
        raise InvalidBundle(str(exc)) from exc
    E = VectorBundle.__new__(VectorBundle)
    E.field = field
    E.rank = rank
    E.transition = T
    E.inverse_transition = inv
    E.c1 = det.lo
    E._det_coeff = det.coeffs[0]
    return E


def _from_parts(field, T, Tinv, c1, c):
    E = VectorBundle.__new__(VectorBundle)
    E.field, E.rank = field, T.rows
    E.transition, E.inverse_transition = T, Tinv
    E.c1, E._det_coeff = c1, c
    return E


def trivial_bundle(field: Field, rank: int) -> VectorBundle:
    one = LaurentPolynomial.one(field)
    I = Matrix.identity(rank, one)
    return _from_parts(field, I, I, 0, field.one)


def diagonal_bundle(field: Field, degrees) -> VectorBundle:
    """O(d_1) + ... + O(d_n)."""
    diag = [LaurentPolynomial.monomial(field, d) for d in degrees]
    inv = [LaurentPolynomial.monomial(field, -d) for d in degrees]
    return _from_parts(field, Matrix.diagonal(diag), Matrix.diagonal(inv), sum(degrees), field.one)


def twist(E: VectorBundle, k: int) -> VectorBundle:
    """E(k) = E tensor O(k): transition ``t^k T``."""
    if k == 0:
        return E
    return _from_parts(E.field, E.transition.map(lambda x: x.shift(k)),
                       E.inverse_transition.map(lambda x: x.shift(-k)),
                       E.c1 + E.rank * k, E._det_coeff)


def swap_charts(E: VectorBundle) -> VectorBundle:
    """The same bundle in the coordinate ``s = 1/t`` (charts exchanged)."""
    T = E.inverse_transition.map(LaurentPolynomial.invert_variable)
    Tinv = E.transition.map(LaurentPolynomial.invert_variable)
    return _from_parts(E.field, T, Tinv, E.c1, E.field.inv(E._det_coeff))


class Germ:
    """Element of the generic fiber, coordinates in the chart-0 frame."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("empty germ")
        self.coords = tuple(_as_rf(c, coords) for c in coords)

    @classmethod
    def of(cls, field: Field, *entries) -> Germ:
        """Convenience constructor from ints / polynomials / rational functions."""
        return cls(RationalFunction.constant(field, e) if isinstance(e, int) else e for e in entries)

    @property
    def field(self) -> Field:
        return self.coords[0].field

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, Germ) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return Germ(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return Germ(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Germ(-a for a in self.coords)

    def __rmul__(self, f):
        return Germ(f * a for a in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "Germ(" + ", ".join(str(c) for c in self.coords) + ")"


def _as_rf(c, ctx):
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, Polynomial):
        return RationalFunction.from_poly(c)
    if isinstance(c, LaurentPolynomial):
        return c.to_rational()
    field = next((x.field for x in ctx if hasattr(x, "field")), None)
    if field is None:
        raise TypeError("cannot infer the field of a germ with only integer coordinates")
    return RationalFunction.constant(field, c)


def germ_sum(germs) -> Germ:
    germs = list(germs)
    acc = germs[0]
    for g in germs[1:]:
        acc = acc + g
    return acc


def chart_infinity(E: VectorBundle, alpha: Germ) -> list[RationalFunction]:
    """Coordinates of ``alpha`` in the chart-infinity frame (as functions of t)."""
    return E.inverse_transition.to_rational().apply(list(alpha.coords))


def _check(E, alpha):
    if alpha.rank != E.rank:
        raise ValueError(f"germ of length {alpha.rank} for a rank-{E.rank} bundle")
    if alpha.field != E.field:
        raise ValueError("germ and bundle over different fields")
    if alpha.is_zero():
        raise ZeroGerm("the order of the zero germ is undefined")


def order_at(E: VectorBundle, alpha: Germ, P: Point) -> int:
    """Largest n with t_P^-n * alpha in the local lattice E_P."""
    _check(E, alpha)
    if P.is_infinity:
        return min(f.valuation_at_infinity() for f in chart_infinity(E, alpha) if f)
    return min(valuation(f, P) for f in alpha.coords if f)


def germ_divisor(E: VectorBundle, alpha: Germ) -> Divisor:
    _check(E, alpha)
    polys = []
    for f in alpha.coords:
        if f:
            polys += [f.num, f.den]
    fin = {}
    for b in coprime_basis(polys):
        # basis elements are already monic squarefree: skip Point validation
        m = min(multiplicity(f.num, b) - multiplicity(f.den, b) for f in alpha.coords if f)
        if m:
            fin[b] = m
    return Divisor._make(E.field, fin, order_at(E, alpha, Point.infinity()))


def germ_degree(E: VectorBundle, alpha: Germ) -> int:
    return divisor_degree(germ_divisor(E, alpha))


def swap_germ(E: VectorBundle, alpha: Germ) -> Germ:
    """``alpha`` re-expressed for :func:`swap_charts` ``(E)``."""
    return Germ(f.invert_variable() for f in chart_infinity(E, alpha))


@dataclass(frozen=True)
class LineSubbundle:
    generator: Germ
    divisor: Divisor
    degree: int


def sub_line_bundle(E: VectorBundle, alpha: Germ) -> LineSubbundle:
    """The saturated line subbundle through ``alpha``; checks fiberwise injectivity."""
    D = germ_divisor(E, alpha)
    for P in D.support() + [Point.infinity()]:
        n = D.at(P)
        if P.is_infinity:
            coords = chart_infinity(E, alpha)
            local = [f.valuation_at_infinity() - n for f in coords if f]
        else:
            local = [valuation(f, P) - n for f in alpha.coords if f]
        if min(local) != 0:
            raise AssertionError(f"locally normalized generator vanishes at {P}")
    return LineSubbundle(alpha, D, divisor_degree(D))


def is_isomorphism(E: VectorBundle, F: VectorBundle, M: Matrix) -> bool:
    """Whether ``M`` (chart-0 frames, E -> F) is an isomorphism of bundles."""
    if E.rank != F.rank or E.field != F.field:
        raise ValueError("bundles differ in rank or field")
    M = M.to_rational()
    if M.shape != (E.rank, E.rank):
        raise ValueError("map has the wrong shape")
    det = M.det()
    if not det:
        raise SingularMatrix("map is singular")
    if not all(x.is_polynomial() for x in M.entries) or not det.is_constant():
        return False
    N = F.inverse_transition.to_rational() @ M @ E.transition.to_rational()
    if any(x and x.valuation_at_infinity() < 0 for x in N.entries):
        return False
    return N.det().valuation_at_infinity() == 0
