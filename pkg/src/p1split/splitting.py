"""Splitting type by the greedy highest-degree basis, with an explicit certificate.

The certificate is a Birkhoff-type factorization ``T = A diag(t^d) B(1/t)^-1``
with ``A`` polynomial in t and ``B`` polynomial in s, both of constant
nonzero determinant.  :func:`split` always cross-checks the greedy answer
against the independent h0-scan oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import Field, LaurentPolynomial, Polynomial, RationalFunction
from .bundle import (Germ, VectorBundle, ZeroGerm, germ_degree, germ_divisor, germ_sum,
                     order_at, validate_bundle)
from .divisors import (Divisor, Point, Unsupported, dominates, function_with_divisor,
                       rational_points)
from .matrix import Matrix
from .sections import max_degree_germ, splitting_type_oracle


class CrossCheckFailure(AssertionError):
    """Greedy result disagrees with the oracle or fails its own certificate."""


class CriterionFailure(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class DegenerateSum(ValueError):
    """A sum of germs that must be nonzero is zero; its order is undefined."""


@dataclass(frozen=True)
class GreedyBasis:
    germs: tuple
    degrees: tuple
    divisors: tuple


@dataclass(frozen=True)
class SplittingCertificate:
    degrees: tuple
    A: Matrix  # entries Polynomial in t
    B: Matrix  # entries Polynomial in s


@dataclass(frozen=True)
class RepairOutcome:
    coefficients: tuple
    new_germ: Germ
    old_degree: int
    new_degree: int


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reasons: tuple = ()

    @property
    def reason(self) -> str:
        return self.reasons[0] if self.reasons else "ok"

    def __bool__(self):
        return self.ok


# -- repair steps: raising the order of a sum at a point ------------------

def _nonzero_sum(germs, what):
    s = germ_sum(germs)
    if s.is_zero():
        raise DegenerateSum(f"{what} is zero")
    return s


def repair_filter(E: VectorBundle, germs, P: Point) -> list[int]:
    """Indices of the germs of minimal order at ``P``.

    Requires that the order of the total sum jumps above the minimum; the
    sub-sum over the returned indices then jumps as well (checked).
    """
    germs = list(germs)
    total = _nonzero_sum(germs, "sum of germs")
    orders = [order_at(E, g, P) for g in germs]
    low = min(orders)
    if order_at(E, total, P) <= low:
        raise HypothesisViolated("order of the sum does not exceed the minimal order")
    J = [i for i, o in enumerate(orders) if o == low]
    sub = _nonzero_sum([germs[i] for i in J], "sub-sum over minimal-order germs")
    if order_at(E, sub, P) <= low:
        raise AssertionError("sub-sum over minimal-order germs lost the order jump")
    return J


def _auxiliary_point(P: Point, D: Divisor, field: Field) -> Point:
    """A rational point other than ``P``, preferably outside ``supp(D)``.

    Adding a nonnegative multiple of any ``Q != P`` keeps ``D_i >= D`` and the
    value at ``P``, so meeting the support is harmless; avoiding it merely
    keeps the coefficients simpler.  P^1 has at least three rational points.
    """
    fallback = None
    for Q in rational_points(field):
        if Q == P:
            continue
        if not D.meets(Q):
            return Q
        if fallback is None:
            fallback = Q
    if fallback is None:  # pragma: no cover - impossible on P^1
        raise Unsupported("no rational point other than P is available")
    return fallback


def repair_boost(E: VectorBundle, germs, P: Point) -> RepairOutcome:
    """Rescale equal-order germs so that their sum beats the lowest degree.

    With ``alpha_j`` of minimal degree, each ``f_i`` has divisor
    ``D_i - div(alpha_i)`` where ``D_i >= div(alpha_j)`` agrees with it at ``P``
    and has degree ``deg(alpha_i)``; ``f_i(P) = 1``.
    """
    germs = list(germs)
    if P.residue_degree != 1:
        raise Unsupported("repair at a point of residue degree > 1 is unsupported")
    if len(germs) < 2:
        raise HypothesisViolated("need at least two germs for the order of the sum to jump")
    total = _nonzero_sum(germs, "sum of germs")
    orders = [order_at(E, g, P) for g in germs]
    if len(set(orders)) != 1:
        raise HypothesisViolated("orders at P differ; apply repair_filter first")
    if order_at(E, total, P) <= orders[0]:
        raise HypothesisViolated("order of the sum does not exceed the common order")
    F = E.field
    divisors = [germ_divisor(E, g) for g in germs]
    degrees = [D.degree for D in divisors]
    j = min(range(len(germs)), key=lambda i: degrees[i])
    Dj = divisors[j]
    Q = _auxiliary_point(P, Dj, F)
    coeffs = []
    for i, g in enumerate(germs):
        Di = Dj + Divisor.point(Q, degrees[i] - degrees[j], field=F)
        coeffs.append(function_with_divisor(Di - divisors[i], normalize_at=P))
    new = germ_sum([f * g for f, g in zip(coeffs, germs)])
    if new.is_zero():
        raise DegenerateSum("rescaled sum vanished")
    new_div = germ_divisor(E, new)
    out = RepairOutcome(tuple(coeffs), new, degrees[j], new_div.degree)
    if not (out.new_degree > out.old_degree and dominates(new_div, Dj)
            and new_div.at(P) > Dj.at(P)):
        raise AssertionError("repair did not raise the divisor")
    return out


# -- greedy basis, criterion, certificate --------------------------------

def greedy_basis(E: VectorBundle) -> GreedyBasis:
    germs, degrees = [], []
    start = None
    for _ in range(E.rank):
        g, d = max_degree_germ(E, germs, start=start)
        germs.append(g)
        degrees.append(d)
        start = d
    return GreedyBasis(tuple(germs), tuple(degrees),
                       tuple(germ_divisor(E, g) for g in germs))


def _basis_matrix(germs) -> Matrix:
    return Matrix([[g.coords[i] for g in germs] for i in range(len(germs[0]))])


def criterion_check(E: VectorBundle, basis) -> bool:
    """Whether the basis realizes a direct-sum decomposition.

    Equivalent finite test: sum of germ degrees equals c1.  Pointwise the
    orders of the e_i add up to at most the order of their wedge, whose total
    degree is c1; equality everywhere is exactly the min-formula for sums.
    """
    germs = list(basis.germs if isinstance(basis, GreedyBasis) else basis)
    if len(germs) != E.rank:
        raise ValueError("basis has the wrong length")
    if not _basis_matrix(germs).det():
        raise ValueError("basis germs are linearly dependent")
    return sum(germ_degree(E, g) for g in germs) == E.c1


def certificate_from_basis(E: VectorBundle, basis) -> SplittingCertificate:
    germs = list(basis.germs if isinstance(basis, GreedyBasis) else basis)
    if not criterion_check(E, germs):
        raise CriterionFailure("basis does not satisfy the splitting criterion")
    F = E.field
    inf = Point.infinity()
    moved, degrees = [], []
    for g in germs:
        D = germ_divisor(E, g)
        d = D.degree
        h = function_with_divisor(Divisor.point(inf, d, field=F) - D)
        moved.append(h * g)
        degrees.append(d)
    order = sorted(range(len(germs)), key=lambda i: -degrees[i])
    moved = [moved[i] for i in order]
    degrees = [degrees[i] for i in order]
    A_rf = _basis_matrix(moved)
    if not all(x.is_polynomial() for x in A_rf.entries):
        raise AssertionError("moved germs are not polynomial in chart 0")
    A = A_rf.map(lambda x: x.num)
    tpow = Matrix.diagonal([LaurentPolynomial.monomial(F, d) for d in degrees])
    Bt = E.inverse_transition @ A.map(LaurentPolynomial.from_poly) @ tpow
    B = Bt.map(lambda x: x.invert_variable().to_poly())
    cert = SplittingCertificate(tuple(degrees), A, B)
    verdict = verify_certificate(E, cert)
    if not verdict:
        raise CrossCheckFailure(f"constructed certificate fails verification: {verdict.reasons}")
    return cert


def verify_certificate(E: VectorBundle, cert: SplittingCertificate) -> Verdict:
    """Independent re-check of a certificate.  Reason codes:
    ``shape``, ``a_not_unimodular``, ``b_not_unimodular``, ``degree_sum``,
    ``identity_mismatch``."""
    n = E.rank
    reasons = []
    d = list(cert.degrees)
    A, B = cert.A, cert.B
    if len(d) != n or A.shape != (n, n) or B.shape != (n, n):
        return Verdict(False, ("shape",))
    if any(not isinstance(x, Polynomial) or x.field != E.field for x in A.entries + B.entries):
        return Verdict(False, ("shape",))
    detA = A.det()
    if not detA or detA.degree != 0:
        reasons.append("a_not_unimodular")
    detB = B.det()
    if not detB or detB.degree != 0:
        reasons.append("b_not_unimodular")
    if sum(d) != E.c1:
        reasons.append("degree_sum")
    # T * B(1/t) == A * diag(t^d) avoids inverting B
    F = E.field
    Bt = B.map(lambda x: LaurentPolynomial.from_poly(x).invert_variable())
    At = A.map(LaurentPolynomial.from_poly)
    tpow = Matrix.diagonal([LaurentPolynomial.monomial(F, k) for k in d])
    if E.transition @ Bt != At @ tpow:
        reasons.append("identity_mismatch")
    return Verdict(not reasons, tuple(reasons))


def split(E: VectorBundle):
    """Return ``(type, certificate)``; the type is cross-checked against the oracle."""
    basis = greedy_basis(E)
    if not criterion_check(E, basis):
        raise CriterionFailure(f"greedy basis with degrees {basis.degrees} fails the criterion")
    cert = certificate_from_basis(E, basis)
    kind = tuple(basis.degrees)
    oracle = splitting_type_oracle(E)
    if kind != oracle:
        raise CrossCheckFailure(f"greedy type {kind} != oracle type {oracle}")
    if tuple(cert.degrees) != kind:
        raise CrossCheckFailure("certificate degrees disagree with the greedy basis")
    return kind, cert


# -- ground-truth generator -------------------------------------------------

def _random_poly(field, rng, max_degree=2):
    return Polynomial._make(field, [field.random_element(rng) for _ in range(rng.randint(0, max_degree) + 1)])


def _random_unimodular(field, n, ops, rng):
    """Product of ``ops`` random elementary matrices over k[x] (and its inverse)."""
    one, zero = Polynomial.one(field), Polynomial.zero(field)
    M = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Minv = [row[:] for row in M]
    for _ in range(ops):
        if n > 1 and rng.random() < 0.75:
            i, j = rng.sample(range(n), 2)
            c = _random_poly(field, rng)
            # M <- M (I + c e_ij): column j += c * column i
            for r in range(n):
                M[r][j] = M[r][j] + c * M[r][i]
            # Minv <- (I - c e_ij) Minv: row i -= c * row j
            Minv[i] = [a - c * b for a, b in zip(Minv[i], Minv[j])]
        else:
            i = rng.randrange(n)
            a = field.random_element(rng, nonzero=True)
            ai = field.inv(a)
            for r in range(n):
                M[r][i] = M[r][i].scale(a)
            Minv[i] = [x.scale(ai) for x in Minv[i]]
    return M, Minv


def random_bundle(seed, field: Field, rank: int, degrees, op_count: int):
    """``T = U diag(t^d) W(1/t)`` with U, W random chart-unimodular; returns
    ``(bundle, sorted degrees)``."""
    degrees = list(degrees)
    if len(degrees) != rank:
        raise ValueError("rank does not match the number of degrees")
    rng = random.Random(seed)
    sides = [rng.random() < 0.5 for _ in range(op_count)]
    n_u = sum(sides)
    U, Uinv = _random_unimodular(field, rank, n_u, rng)
    W, Winv = _random_unimodular(field, rank, op_count - n_u, rng)
    lp = LaurentPolynomial.from_poly
    Um = Matrix([[lp(x) for x in row] for row in U])
    Uinvm = Matrix([[lp(x) for x in row] for row in Uinv])
    Wm = Matrix([[lp(x).invert_variable() for x in row] for row in W])
    Winvm = Matrix([[lp(x).invert_variable() for x in row] for row in Winv])
    D = Matrix.diagonal([LaurentPolynomial.monomial(field, d) for d in degrees])
    Dinv = Matrix.diagonal([LaurentPolynomial.monomial(field, -d) for d in degrees])
    T = Um @ D @ Wm
    Tinv = Winvm @ Dinv @ Uinvm
    E = validate_bundle(field, rank, T)
    if E.inverse_transition != Tinv:
        raise AssertionError("generator inverse disagrees with validated inverse")
    return E, tuple(sorted(degrees, reverse=True))
