import random

import pytest
from hypothesis import strategies as st

from p1split.arith import Field, LaurentPolynomial, Polynomial, RationalFunction
from p1split.bundle import Germ, validate_bundle
from p1split.divisors import Point, rational_points, valuation
from p1split.matrix import Matrix, rf_nullspace

FIELDS = [Field(2), Field(3), Field(5), Field(101), Field.rational()]
QQ = Field.rational()
F2, F3, F5 = Field(2), Field(3), Field(5)


def lp(field, terms):
    """Laurent polynomial from a {exponent: coeff} dict."""
    return LaurentPolynomial(field, terms)


def bundle(field, rows):
    """Bundle from nested lists of {exponent: coeff} dicts."""
    return validate_bundle(field, len(rows), Matrix([[lp(field, e) for e in r] for r in rows]))


def poly(field, *coeffs):
    return Polynomial(field, coeffs)


def rf(field, num, den=(1,)):
    return RationalFunction(Polynomial(field, num), Polynomial(field, den))


def germ(field, *entries):
    return Germ.of(field, *entries)


@pytest.fixture(params=FIELDS, ids=repr)
def field(request):
    return request.param


def random_poly(field, rng, max_degree=3):
    return Polynomial(field, [field.random_element(rng) for _ in range(rng.randint(0, max_degree) + 1)])


def random_nonzero_poly(field, rng, max_degree=3):
    while True:
        f = random_poly(field, rng, max_degree)
        if f:
            return f


def random_rf(field, rng, max_degree=3):
    return RationalFunction(random_poly(field, rng, max_degree), random_nonzero_poly(field, rng, max_degree))


def random_nonzero_rf(field, rng, max_degree=3):
    return RationalFunction(random_nonzero_poly(field, rng, max_degree),
                            random_nonzero_poly(field, rng, max_degree))


def random_germ(field, n, rng, max_degree=3):
    while True:
        g = Germ(random_rf(field, rng, max_degree) for _ in range(n))
        if not g.is_zero():
            return g


fields = st.sampled_from(FIELDS)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(12345)


# -- random valid instances for the repair steps -----------------------------

def local_parameter(field, P):
    if P.is_infinity:
        return RationalFunction(Polynomial.one(field), Polynomial.t(field))
    return RationalFunction.from_poly(P.cluster)


def rf_power(f, k):
    out = RationalFunction.one(f.field)
    base = f if k >= 0 else f.inverse()
    for _ in range(abs(k)):
        out = out * base
    return out


def _from_local(E, P, coords):
    """Germ whose coordinates in the local frame at P (chart 0, or chart infinity) are ``coords``."""
    if not P.is_infinity:
        return Germ(coords)
    return Germ(E.transition.to_rational().apply(list(coords)))


def _local_order(coords, P):
    return min(valuation(c, P) for c in coords if c)


def _random_local(field, n, P, o, rng):
    while True:
        coords = [random_rf(field, rng, 2) for _ in range(n)]
        if any(coords):
            break
    scale = rf_power(local_parameter(field, P), o - _local_order(coords, P))
    return [scale * c for c in coords]


def repair_points(field):
    if field.p:
        return list(rational_points(field))
    return [Point.infinity()] + [Point.rational(field, a) for a in (-2, -1, 0, 1, 2, 3)]


def repair_instance(E, P, rng, extra=0, max_germs=3, independent=False):
    """Germs of E with a common minimal order ``o`` at P whose sum has order > o,
    plus ``extra`` germs of strictly larger order.  Returns ``(germs, low_indices)``.

    With ``independent`` the germs are K-linearly independent (needs enough rank)."""
    F = E.field
    n = E.rank
    pi = local_parameter(F, P)
    zero = RationalFunction.zero(F)
    while True:
        o = rng.randint(-2, 2)
        count = rng.randint(1, max_germs - 1)
        if independent:
            count = min(count, n - 1 - extra)
            if count < 1:
                raise ValueError("rank too small for an independent instance")
        low = [_random_local(F, n, P, o, rng) for _ in range(count)]
        # regular at P: a polynomial in the local parameter
        gamma = [sum((rf_power(pi, k) * F.random_element(rng) for k in range(3)), zero) for _ in range(n)]
        tail = [-sum((x[r] for x in low), zero) + rf_power(pi, o + 1) * gamma[r] for r in range(n)]
        if not any(gamma) or not any(tail) or _local_order(tail, P) != o:
            continue
        low.append(tail)
        high = [_random_local(F, n, P, o + rng.randint(1, 2), rng) for _ in range(extra)]
        locals_ = low + high
        if not any(sum((x[r] for x in locals_), zero) for r in range(n)):
            continue
        if independent and rf_nullspace(locals_)[1] != len(locals_):
            continue
        order = list(range(len(locals_)))
        rng.shuffle(order)
        germs = [_from_local(E, P, locals_[i]) for i in order]
        return germs, sorted(k for k, i in enumerate(order) if i < len(low))


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
