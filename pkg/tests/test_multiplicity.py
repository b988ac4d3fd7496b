import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multcode.errors import (ComponentDegreeTooLarge, DegreeOutOfRange, DegreeTooLarge,
                             LengthMismatch, NotUnivariate, ShapeMismatch)
from multcode.finite_field import GF
from multcode.mpoly import (MVPoly, evaluate, hasse_derivative, leq, lt, multi_indices,
                            random_poly, vanishing_poly)
from multcode.multiplicity import (code_new, decompose, derivative_encode, ev_s, extract_message,
                                   recompose, solve_components, systematic_encode,
                                   systematic_encode_fast)
from multcode.reed_muller import interpolate_on_infoset, rm_code, rm_encode

CASES = [(4, 2, 2, 5), (2, 1, 2, 1), (3, 2, 3, 8), (2, 3, 3, 5), (5, 2, 2, 7), (9, 1, 3, 20),
         (3, 3, 2, 4), (2, 2, 3, 4)]


def random_components(code, rng):
    """Random F_j supported on L_{d_j} for every component index."""
    out = {}
    for j in code.components:
        sub = code.subcodes[code.dj[j]]
        out[j] = sub.polynomial(rng.integers(0, code.q, sub.k))
    return out


class TestCodeParameters:
    def test_example_q4(self):
        code = code_new(4, 2, 2, 5)
        assert (code.n, code.sigma, code.k) == (16, 3, 21)
        assert [code.infoset_size(j) for j in code.S] == [15, 3, 3]
        assert code.dj == {(0, 0): 5, (0, 1): 1, (1, 0): 1}

    def test_example_derivative_code(self):
        code = code_new(2, 1, 2, 1)
        assert (code.n, code.sigma, code.k) == (2, 2, 2)
        assert code.dj == {(0,): 1, (1,): -1}
        assert code.infoset == [((0,), (0,)), ((0,), (1,))]

    def test_degree_out_of_range(self):
        with pytest.raises(DegreeOutOfRange, match="degree out of range"):
            code_new(2, 1, 1, 2)
        with pytest.raises(DegreeOutOfRange):
            code_new(3, 2, 2, -1)
        with pytest.raises(ValueError):
            code_new(3, 0, 2, 1)

    def test_sigma(self):
        for m, s in itertools.product(range(1, 4), range(1, 4)):
            assert code_new(2, m, s, 0).sigma == math.comb(m + s - 1, m)

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_counting(self, q):
        for m, s in itertools.product(range(1, 4), range(1, 4)):
            for d in range(s * q):
                code = code_new(q, m, s, d)
                assert sum(code.infoset_size(j) for j in code.S) == math.comb(m + d, m)
                assert len(set(code.infoset)) == code.k


class TestEvS:
    def test_example_linear_gf2(self):
        F = GF(2)
        code = code_new(2, 1, 2, 1)
        cw = ev_s(MVPoly.variable(F, 1, 0), code)
        assert cw.tolist() == [[0, 1], [1, 1]]

    def test_layout(self, rng):
        code = code_new(3, 2, 2, 4)
        P = random_poly(code.field, 2, 4, rng)
        cw = ev_s(P, code)
        for pt in itertools.product(range(3), repeat=2):
            for j in code.S:
                assert code.symbol(cw, j, pt) == evaluate(hasse_derivative(P, j), pt).index

    def test_degree_check(self):
        F = GF(2)
        with pytest.raises(DegreeTooLarge):
            ev_s(MVPoly.variable(F, 1, 0) ** 2, code_new(2, 1, 2, 1))

    def test_s1_is_rm(self, rng):
        field = GF(5)
        code = code_new(field, 2, 1, 4)
        rm = rm_code(field, 2, 4)
        P = rm.polynomial(rng.integers(0, 5, rm.k))
        assert ev_s(P, code)[:, 0].tolist() == rm_encode(P, rm).tolist()


class TestDecomposition:
    def test_xq_example(self):
        F = GF(2)
        code = code_new(2, 1, 2, 2)
        x = MVPoly.variable(F, 1, 0)
        dec = decompose(x**2, code)
        assert dec == {(0,): x, (1,): MVPoly.constant(F, 1)}

    def test_low_degree_is_own_component(self, rng):
        code = code_new(5, 2, 3, 12)
        P = random_poly(code.field, 2, 4, rng)
        dec = decompose(P, code)
        assert dec[(0, 0)] == P
        assert all(Fj.is_zero() for j, Fj in dec.items() if j != (0, 0))

    @pytest.mark.parametrize("case", CASES)
    def test_round_trip(self, case, rng):
        q, m, s, d = case
        code = code_new(q, m, s, d)
        for _ in range(10):
            P = random_poly(code.field, m, d, rng, density=0.5)
            dec = decompose(P, code)
            assert recompose(dec, code) == P
            for j, Fj in dec.items():
                assert Fj.degree <= code.dj[j]
                assert all(max(e) < q for e in Fj.terms)

    @pytest.mark.parametrize("case", CASES)
    def test_uniqueness(self, case, rng):
        code = code_new(*case)
        for _ in range(5):
            comps = random_components(code, rng)
            F = recompose(comps, code)
            assert F.degree <= code.d
            assert decompose(F, code) == comps

    def test_component_bounds_enforced(self):
        F = GF(2)
        code = code_new(2, 1, 2, 2)
        x = MVPoly.variable(F, 1, 0)
        with pytest.raises(ComponentDegreeTooLarge):
            recompose({(0,): x**2}, code)
        with pytest.raises(ComponentDegreeTooLarge):
            recompose({(1,): x}, code)

    @pytest.mark.parametrize("case", [(3, 2, 3, 8), (4, 2, 2, 7), (2, 2, 3, 5), (5, 1, 3, 14), (2, 3, 2, 3)])
    def test_recursion_forward_consistency(self, case, rng):
        # H(F,i)(P) = (-1)^|i| F_i(P) + sum_{j<i} sum_{j<=v<=i} H(F_j,i-v)(P) H(V_j,v)(P),
        # with H(V_j, v) taken symbolically at each point
        q, m, s, d = case
        code = code_new(q, m, s, d)
        field = code.field
        for _ in range(3):
            F = random_poly(field, m, d, rng, density=0.5)
            dec = decompose(F, code)
            V = {j: vanishing_poly(j, field, m) for j in dec}
            for i in code.S:
                for P in itertools.product(range(q), repeat=m):
                    lhs = evaluate(hasse_derivative(F, i), P)
                    Fi = dec.get(i, MVPoly.zero(field, m))
                    rhs = evaluate(Fi, P)
                    if sum(i) % 2:
                        rhs = -rhs
                    for j, Fj in dec.items():
                        if not lt(j, i):
                            continue
                        for v in itertools.product(*(range(a, b + 1) for a, b in zip(j, i))):
                            u = tuple(a - b for a, b in zip(i, v))
                            rhs = rhs + (evaluate(hasse_derivative(Fj, u), P)
                                         * evaluate(hasse_derivative(V[j], v), P))
                    assert lhs == rhs


class TestSystematic:
    @pytest.mark.parametrize("case", CASES)
    def test_extract_round_trip(self, case, rng):
        code = code_new(*case)
        for _ in range(5):
            M = rng.integers(0, code.q, code.k)
            cw = systematic_encode(M, code)
            assert cw.shape == (code.n, code.sigma)
            assert np.array_equal(extract_message(cw, code), M)
            assert np.array_equal(cw, ev_s(recompose(solve_components(M, code), code), code))

    @pytest.mark.parametrize("case", CASES)
    def test_fast_matches_slow(self, case, rng):
        code = code_new(*case)
        msgs = rng.integers(0, code.q, (4, code.k))
        batch = systematic_encode_fast(msgs, code)
        for b in range(4):
            slow = systematic_encode(msgs[b], code)
            assert np.array_equal(batch[b], slow)
            assert np.array_equal(systematic_encode_fast(msgs[b], code), slow)

    def test_every_codeword_is_reached(self, rng):
        # the systematic encoder is onto ev_s(F) for deg F <= d
        code = code_new(3, 2, 2, 5)
        for _ in range(5):
            F = random_poly(code.field, 2, 5, rng)
            cw = ev_s(F, code)
            assert np.array_equal(systematic_encode(extract_message(cw, code), code), cw)

    def test_injective_small_code(self):
        code = code_new(2, 1, 2, 2)
        seen = {}
        for M in itertools.product(range(2), repeat=code.k):
            cw = systematic_encode(list(M), code).tobytes()
            assert cw not in seen
            seen[cw] = M

    def test_zero_message(self):
        code = code_new(4, 2, 2, 5)
        assert not systematic_encode(np.zeros(code.k, dtype=np.int64), code).any()

    def test_linear(self, rng):
        code = code_new(5, 2, 2, 6)
        f = code.field
        a, b = rng.integers(0, 5, (2, code.k))
        lhs = systematic_encode(f.vadd(a, b), code)
        assert np.array_equal(lhs, f.vadd(systematic_encode(a, code), systematic_encode(b, code)))

    def test_s1_matches_rm(self, rng):
        field = GF(4)
        for d in range(4):
            code = code_new(field, 2, 1, d)
            rm = rm_code(field, 2, d)
            M = rng.integers(0, 4, code.k)
            cw = systematic_encode(M, code)
            assert cw[:, 0].tolist() == rm_encode(interpolate_on_infoset(M, rm), rm).tolist()

    def test_errors(self):
        code = code_new(3, 2, 2, 4)
        with pytest.raises(LengthMismatch):
            systematic_encode([0] * (code.k - 1), code)
        with pytest.raises(LengthMismatch):
            systematic_encode_fast(np.zeros((2, code.k + 1), dtype=np.int64), code)
        with pytest.raises(ValueError):
            systematic_encode([3] * code.k, code)
        with pytest.raises(ShapeMismatch):
            extract_message(np.zeros((code.n, code.sigma + 1), dtype=np.int64), code)

    def test_extract_stack(self, rng):
        code = code_new(2, 2, 2, 3)
        msgs = rng.integers(0, 2, (3, code.k))
        cws = systematic_encode_fast(msgs, code)
        assert np.array_equal(extract_message(cws, code), msgs)


class TestDerivativeCode:
    def test_example(self):
        code = code_new(2, 1, 2, 1)
        # message (0, 1): F = X, so rows are (F, F') = (0, 1) and (1, 1)
        assert derivative_encode([0, 1], code).tolist() == [[0, 1], [1, 1]]

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_matches_general_path(self, q, rng):
        for s in (1, 2, 3):
            for d in range(s * q):
                code = code_new(q, 1, s, d)
                M = rng.integers(0, q, code.k)
                assert np.array_equal(derivative_encode(M, code), systematic_encode(M, code))

    def test_not_univariate(self):
        code = code_new(2, 2, 2, 2)
        with pytest.raises(NotUnivariate):
            derivative_encode([0] * code.k, code)


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5]), m=st.integers(1, 3), s=st.integers(1, 3), data=st.data())
def test_property_systematic(q, m, s, data):
    d = data.draw(st.integers(0, s * q - 1))
    code = code_new(q, m, s, d)
    M = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=code.k, max_size=code.k)),
                 dtype=np.int64)
    cw = systematic_encode_fast(M, code)
    assert np.array_equal(extract_message(cw, code), M)
    assert np.array_equal(cw, systematic_encode(M, code))


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3, 4]), m=st.integers(1, 2), s=st.integers(1, 3), data=st.data())
def test_property_decomposition(q, m, s, data):
    d = data.draw(st.integers(0, s * q - 1))
    code = code_new(q, m, s, d)
    exps = multi_indices(m, d)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=len(exps), max_size=len(exps)))
    F = MVPoly(code.field, m, dict(zip(exps, coeffs)))
    dec = decompose(F, code)
    assert recompose(dec, code) == F
    assert all(leq((0,) * m, j) and Fj.degree <= code.dj[j] for j, Fj in dec.items())
