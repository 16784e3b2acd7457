import itertools
import random

import pytest
from hypothesis import given, settings

from p1split.arith import LaurentPolynomial, Polynomial
from p1split.bundle import Germ, diagonal_bundle, germ_degree, trivial_bundle, twist
from p1split.matrix import rank
from p1split.sections import (SpanExhausted, _sections, global_sections, h0, max_degree_germ,
                              span_annihilator, splitting_type_oracle)
from p1split.splitting import random_bundle

from conftest import F2, F3, F5, FIELDS, QQ, bundle, fields, germ, poly, seeds

EXT_SPLIT = [[{-1: 1}, {-1: 1}], [{}, {1: 1}]]      # O(1) + O(-1)
EXT_TRIVIAL = [[{-1: 1}, {0: 1}], [{}, {1: 1}]]     # O + O


def brute_h0(E, B):
    """Count w in (k[s]_{<=B})^n with T(t) w(1/t) polynomial; return log_p of the count."""
    F = E.field
    n = E.rank
    T = E.transition
    count = 0
    for coeffs in itertools.product(range(F.p), repeat=n * (B + 1)):
        w = [LaurentPolynomial(F, {-j: coeffs[c * (B + 1) + j] for j in range(B + 1)}) for c in range(n)]
        ok = True
        for r in range(n):
            v = sum((T[r, c] * w[c] for c in range(n)), LaurentPolynomial.zero(F))
            if v and v.lo < 0:
                ok = False
                break
        count += ok
    h = 0
    while count > 1:
        assert count % F.p == 0
        count //= F.p
        h += 1
    return h


def check_pair(E, v, w):
    F = E.field
    n = E.rank
    for r in range(n):
        acc = LaurentPolynomial.zero(F)
        for c in range(n):
            acc = acc + E.transition[r, c] * LaurentPolynomial.from_poly(w[c]).invert_variable()
        assert acc == LaurentPolynomial.from_poly(v[r])


def random_small(F, rng, max_rank=3, ops=4):
    rank_ = rng.randint(1, max_rank)
    degrees = [rng.randint(-3, 3) for _ in range(rank_)]
    return random_bundle(rng.randrange(10**9), F, rank_, degrees, rng.randint(0, ops))


class TestGlobalSections:
    def test_examples(self, field):
        assert global_sections(diagonal_bundle(field, [3])).dimension == 4
        assert global_sections(diagonal_bundle(field, [-1, -2])).dimension == 0
        E = bundle(field, EXT_TRIVIAL)
        S = global_sections(E)
        assert S.dimension == 2
        t, one, zero = poly(field, 0, 1), poly(field, 1), poly(field)
        assert S.basis[0] == ((one, t), (zero, one))
        assert S.basis[1] == ((zero, one), (-one, t))

    def test_line_bundles(self, field):
        for d in range(-5, 11):
            assert h0(diagonal_bundle(field, [d])) == max(0, d + 1)

    def test_pairs_satisfy_transition_identity(self):
        rng = random.Random(8)
        for i in range(60):
            E, _ = random_small(FIELDS[i % 5], rng)
            for k in (-1, 0, 2):
                for v, w in global_sections(twist(E, k)).basis:
                    check_pair(twist(E, k), v, w)

    def test_basis_independent(self):
        rng = random.Random(9)
        for i in range(40):
            F = FIELDS[i % 5]
            E, _ = random_small(F, rng)
            S = global_sections(twist(E, 2))
            if not S.dimension:
                continue
            B = max(v_c.degree for v, _ in S.basis for v_c in v if v_c) + 1
            rows = [[c.coeffs[j] if j < len(c.coeffs) else F.zero for c in v for j in range(B)]
                    for v, _ in S.basis]
            assert rank(rows, len(rows[0]), F) == S.dimension

    def test_doubling_bound_changes_nothing(self):
        rng = random.Random(10)
        for i in range(60):
            E, _ = random_small(FIELDS[i % 5], rng)
            B = max(0, -E.inverse_span[0])
            assert _sections(E, 2 * B + 1).dimension == global_sections(E).dimension

    @pytest.mark.parametrize("F,trials,max_rank", [(F2, 40, 2), (F3, 25, 2), (F5, 12, 2)], ids=repr)
    def test_brute_force_enumeration(self, F, trials, max_rank):
        rng = random.Random(F.p)
        done = 0
        seen = set()
        while done < trials:
            E, _ = random_small(F, rng, max_rank=max_rank, ops=3)
            E = twist(E, rng.randint(-1, 1))
            B = max(0, -E.inverse_span[0])
            if F.p ** (E.rank * (B + 1)) > 20000:
                continue
            h = brute_h0(E, B)
            assert h == global_sections(E).dimension
            seen.add(h)
            done += 1
        assert len(seen) >= 3


class TestOracle:
    def test_examples(self, field):
        assert splitting_type_oracle(diagonal_bundle(field, [3, -1])) == (3, -1)
        assert splitting_type_oracle(diagonal_bundle(field, [-1, 3])) == (3, -1)
        E = bundle(field, EXT_TRIVIAL)
        assert h0(E) == 2 and h0(E, -1) == 0
        assert splitting_type_oracle(E) == (0, 0)
        E = bundle(field, EXT_SPLIT)
        assert h0(E, -1) == 1
        assert splitting_type_oracle(E) == (1, -1)

    def test_full_scan_agrees(self):
        rng = random.Random(12)
        for i in range(40):
            E, _ = random_small(FIELDS[i % 5], rng)
            assert splitting_type_oracle(E, full_scan=True) == splitting_type_oracle(E)

    @given(fields, seeds)
    @settings(max_examples=50, deadline=None)
    def test_matches_ground_truth_and_c1(self, F, seed):
        rng = random.Random(seed)
        E, truth = random_small(F, rng)
        ty = splitting_type_oracle(E)
        assert ty == truth
        assert sum(ty) == E.c1

    @given(fields, seeds)
    @settings(max_examples=25, deadline=None)
    def test_twist_shift(self, F, seed):
        rng = random.Random(seed)
        E, _ = random_small(F, rng)
        base = splitting_type_oracle(E)
        for k in range(-3, 4):
            assert splitting_type_oracle(twist(E, k)) == tuple(d + k for d in base)


class TestMaxDegreeGerm:
    def test_examples(self, field):
        g, d = max_degree_germ(trivial_bundle(field, 2))
        assert d == 0 and g == germ(field, 1, 0)
        E = bundle(field, EXT_SPLIT)
        g, d = max_degree_germ(E)
        assert d == 1
        assert not g.coords[0] and g.coords[1]
        g, d = max_degree_germ(E, avoid=[germ(field, 0, 1)])
        assert d == -1
        assert germ_degree(E, germ(field, 1, 0)) == -1

    def test_avoid_everything(self):
        with pytest.raises(SpanExhausted):
            max_degree_germ(trivial_bundle(QQ, 2), avoid=[germ(QQ, 1, 0), germ(QQ, 0, 1)])

    def test_dependent_avoid(self):
        with pytest.raises(ValueError):
            max_degree_germ(trivial_bundle(QQ, 3), avoid=[germ(QQ, 1, 0, 0), germ(QQ, 2, 0, 0)])

    def test_annihilator(self):
        t = poly(QQ, 0, 1)
        ann = span_annihilator([germ(QQ, 1, t)], 2)
        assert len(ann) == 1
        a, b = ann[0]
        assert a * 1 + b * t == Polynomial.zero(QQ)

    @given(fields, seeds)
    @settings(max_examples=40, deadline=None)
    def test_self_consistent(self, F, seed):
        rng = random.Random(seed)
        E, truth = random_small(F, rng)
        g, d = max_degree_germ(E)
        assert d == truth[0] == germ_degree(E, g)
        for k in (d, d - 1):
            for v, _ in global_sections(twist(E, -k)).basis:
                assert germ_degree(E, Germ(v)) >= k
