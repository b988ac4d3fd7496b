import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multcode.errors import ArityMismatch, FieldMismatch
from multcode.finite_field import GF
from multcode.mpoly import (MVPoly, binom_mod, evaluate, evaluate_many, graded_lex_key,
                            hasse_derivative, leq, lt, multi_binomial, multi_indices, multiply,
                            random_poly, vanishing_poly, weight)
from oracles import shifted_expansion


def X(field, m, l):
    return MVPoly.variable(field, m, l)


class TestMultiIndex:
    def test_order(self):
        assert leq((0, 1), (1, 1)) and lt((0, 1), (1, 1))
        assert not lt((1, 1), (1, 1)) and leq((1, 1), (1, 1))
        assert not leq((2, 0), (1, 1))
        assert weight((2, 3, 0)) == 5

    def test_multi_indices(self):
        assert multi_indices(2, 1) == ((0, 0), (0, 1), (1, 0))
        assert len(multi_indices(3, 4)) == math.comb(7, 3)
        assert multi_indices(2, -1) == ()
        keys = [graded_lex_key(i) for i in multi_indices(3, 3)]
        assert keys == sorted(keys)


class TestPolynomial:
    def test_canonical_form(self):
        F = GF(3)
        P = MVPoly(F, 2, {(1, 0): 0, (0, 1): 2})
        assert dict(P.terms) == {(0, 1): 2}
        assert MVPoly.zero(F, 2).degree == -1
        assert (P - P).is_zero()

    def test_arity_and_field_checks(self):
        with pytest.raises(ArityMismatch):
            MVPoly(GF(2), 2, {(1,): 1})
        with pytest.raises(FieldMismatch):
            MVPoly.constant(GF(2), 1) + MVPoly.constant(GF(3), 1)
        with pytest.raises(ArityMismatch):
            MVPoly.constant(GF(2), 1) * MVPoly.constant(GF(2), 2)
        with pytest.raises(ArityMismatch):
            evaluate(MVPoly.constant(GF(2), 2), (1,))
        with pytest.raises(FieldMismatch):
            evaluate(MVPoly.constant(GF(2), 1), (GF(3).one,))

    def test_text_round_trip(self, rng):
        F = GF(9)
        P = random_poly(F, 3, 5, rng, density=0.4)
        text = P.to_text()
        assert MVPoly.from_text(text, F, 3) == P
        assert MVPoly.zero(F, 3).to_text() == "0"
        assert MVPoly.from_text("", F, 3).is_zero()
        assert MVPoly.from_text("2:1,0;1:0,0", GF(3), 2).to_text() == "1:0,0;2:1,0"
        with pytest.raises(ValueError):
            MVPoly.from_text("2:1,x", F, 2)


class TestEvaluate:
    def test_constant(self, field):
        c = MVPoly.constant(field, 2, field.q - 1)
        for P in itertools.product(range(field.q), repeat=2):
            assert evaluate(c, P).index == field.q - 1

    def test_sum_char2(self):
        F = GF(2)
        assert evaluate(X(F, 2, 0) + X(F, 2, 1), (1, 1)).index == 0

    def test_square_gf5(self):
        F = GF(5)
        assert evaluate(X(F, 1, 0) ** 2, (3,)).index == 4

    def test_accepts_field_elements(self):
        F = GF(4)
        P = X(F, 2, 0) * X(F, 2, 1)
        assert P(F(2), F(3)) == F(2) * F(3)

    def test_evaluate_many(self, field, rng):
        P = random_poly(field, 2, 2 * field.q, rng, density=0.5)
        pts = np.array(list(itertools.product(range(field.q), repeat=2)))
        many = evaluate_many(P, pts)
        assert many.tolist() == [evaluate(P, pt).index for pt in pts.tolist()]


class TestMultiply:
    def test_identity_and_zero(self, rng):
        F = GF(7)
        P = random_poly(F, 2, 4, rng)
        assert multiply(P, MVPoly.constant(F, 2)) == P
        assert multiply(P, MVPoly.zero(F, 2)).is_zero()

    def test_square_char2(self):
        F = GF(2)
        x = X(F, 1, 0)
        one = MVPoly.constant(F, 1)
        assert (x + one) * (x + one) == MVPoly(F, 1, {(2,): 1, (0,): 1})

    def test_product_evaluates_pointwise(self, field, rng):
        P = random_poly(field, 2, 3, rng)
        Q = random_poly(field, 2, 3, rng)
        PQ = P * Q
        assert PQ.degree <= P.degree + Q.degree
        for pt in itertools.product(range(field.q), repeat=2):
            assert evaluate(PQ, pt) == evaluate(P, pt) * evaluate(Q, pt)


class TestBinomial:
    def test_examples(self):
        assert multi_binomial((5, 3), (0, 0), GF(7)).index == 1
        assert multi_binomial((2,), (1,), GF(2)).index == 0
        assert multi_binomial((3,), (2,), GF(5)).index == 3
        assert multi_binomial((1, 3), (2, 0), GF(3)).index == 0

    @settings(max_examples=300, deadline=None)
    @given(n=st.integers(0, 400), k=st.integers(0, 400), p=st.sampled_from([2, 3, 5, 7, 13]))
    def test_lucas_matches_exact(self, n, k, p):
        exact = math.comb(n, k) % p if k <= n else 0
        assert binom_mod(n, k, p) == exact

    def test_multi_product(self):
        F = GF(9)
        assert multi_binomial((4, 5), (1, 2), F).index == (math.comb(4, 1) * math.comb(5, 2)) % 3


class TestHasse:
    def test_zero_order(self, rng):
        P = random_poly(GF(4), 2, 5, rng)
        assert hasse_derivative(P, (0, 0)) == P

    def test_square_char2(self):
        F = GF(2)
        assert hasse_derivative(X(F, 1, 0) ** 2, (1,)).is_zero()

    def test_cube_char2(self):
        F = GF(2)
        assert hasse_derivative(X(F, 1, 0) ** 3, (2,)) == X(F, 1, 0)

    def test_arity(self):
        with pytest.raises(ArityMismatch):
            hasse_derivative(MVPoly.constant(GF(2), 2), (1,))

    @pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 2), (4, 2), (3, 1), (4, 1)])
    def test_matches_shifted_expansion(self, q, m, rng):
        field = GF(q)
        for _ in range(6):
            P = random_poly(field, m, 6, rng, density=0.5)
            expansion = shifted_expansion(P)
            for i in multi_indices(m, 6):
                expected = expansion.get(i, MVPoly.zero(field, m))
                assert hasse_derivative(P, i) == expected

    @pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 1), (5, 2)])
    def test_leibniz(self, q, m, rng):
        field = GF(q)
        for _ in range(5):
            P = random_poly(field, m, 4, rng, density=0.6)
            Q = random_poly(field, m, 3, rng, density=0.6)
            for i in multi_indices(m, 5):
                rhs = MVPoly.zero(field, m)
                for k in itertools.product(*(range(a + 1) for a in i)):
                    rest = tuple(a - b for a, b in zip(i, k))
                    rhs = rhs + hasse_derivative(P, k) * hasse_derivative(Q, rest)
                assert hasse_derivative(P * Q, i) == rhs


class TestVanishing:
    def test_empty_product(self):
        assert vanishing_poly((0, 0), GF(5), 2) == MVPoly.constant(GF(5), 2)

    def test_univariate_gf2(self):
        F = GF(2)
        assert vanishing_poly((1,), F, 1) == MVPoly(F, 1, {(2,): 1, (1,): 1})

    def test_first_variable_gf2(self):
        F = GF(2)
        assert vanishing_poly((1, 0), F, 2) == MVPoly(F, 2, {(2, 0): 1, (1, 0): 1})

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
    def test_matches_repeated_product(self, q):
        field = GF(q)
        m = 2
        for j in multi_indices(m, 3):
            expected = MVPoly.constant(field, m)
            for l, jl in enumerate(j):
                base = X(field, m, l) ** q - X(field, m, l)
                expected = expected * base ** jl
            V = vanishing_poly(j, field, m)
            assert V == expected
            assert V.degree == q * sum(j)

    @pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (5, 1), (9, 1)])
    def test_hasse_identity(self, q, m):
        field = GF(q)
        points = list(itertools.product(range(q), repeat=m))
        for j in multi_indices(m, 2):
            V = vanishing_poly(j, field, m)
            sign = field.neg(1) if sum(j) % 2 else 1
            for i in multi_indices(m, q * sum(j) + 1):
                H = hasse_derivative(V, i)
                values = {evaluate(H, P).index for P in points}
                if i == j:
                    assert values == {sign}
                elif not leq(j, i):
                    assert values == {0}
                else:
                    assert len(values) == 1  # point independent
            if sum(j):
                assert {evaluate(V, P).index for P in points} == {0}
