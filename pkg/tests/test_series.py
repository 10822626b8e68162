"""Series engine tests.

Expected values are produced by independent oracles: finite q-bracket sums,
difference quotients sampled on the disk, binomial identities, recomposition
round trips, and closed-form generating functions.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erfq.errors import DomainError, NearZeroConstantTerm, NonVanishingInner
from erfq.series import (
    DEFAULT_ORDER,
    QBracketContext,
    TruncatedSeries,
    coefficients_via_cauchy,
    compose,
    div,
    hadamard,
    identity,
    monomial,
    mul,
    one,
    q_bracket,
    q_derivative,
    q_integral,
)


def bracket_oracle(q, n):
    # finite sum 1 + q + ... + q^(n-1)
    return sum(q**j for j in range(n))


def random_series(rng, order=DEFAULT_ORDER, unit=True):
    c = rng.uniform(-1, 1, order + 1) + 1j * rng.uniform(-1, 1, order + 1)
    if not unit:
        c *= rng.uniform(0.5, 2.0)
    return TruncatedSeries(c)


class TestQBracket:
    def test_against_finite_sum_oracle(self):
        ctx = QBracketContext(0.5)
        assert q_bracket(ctx, 2) == pytest.approx(bracket_oracle(0.5, 2), abs=1e-15)
        assert q_bracket(ctx, 2) == pytest.approx(1.5, abs=1e-15)
        assert q_bracket(ctx, 3) == pytest.approx(1.75, abs=1e-15)

    def test_one_is_one_for_every_q(self):
        for q in [0.1, 0.33, 0.5, 0.77, 0.99]:
            assert q_bracket(QBracketContext(q), 1) == 1.0

    def test_zero(self):
        assert q_bracket(QBracketContext(0.7), 0) == 0.0

    def test_monotone_in_n(self):
        ctx = QBracketContext(0.8)
        vals = [ctx.bracket(n) for n in range(10)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("q", [0.0, 1.0, -0.1, 1.5])
    def test_endpoints_rejected(self, q):
        with pytest.raises(DomainError):
            QBracketContext(q)


class TestRingOps:
    def test_mul_difference_of_squares(self):
        a = TruncatedSeries([1, 1], order=3)
        b = TruncatedSeries([1, -1], order=3)
        np.testing.assert_allclose(mul(a, b).coeffs, [1, 0, -1, 0], atol=1e-15)

    def test_mul_geometric_squared_binomial_oracle(self):
        # 1/(1-z)^2 = sum (n+1) z^n
        g = TruncatedSeries(np.ones(4))
        np.testing.assert_allclose(mul(g, g).coeffs, [1, 2, 3, 4], atol=1e-15)

    def test_mul_identity_element(self):
        rng = np.random.default_rng(1)
        a = random_series(rng)
        np.testing.assert_allclose(mul(a, one()).coeffs, a.coeffs, atol=0)

    def test_mul_commutative_associative(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a, b, c = (random_series(rng) for _ in range(3))
            ab = mul(a, b)
            ba = mul(b, a)
            np.testing.assert_allclose(ab.coeffs, ba.coeffs, rtol=1e-12, atol=1e-12)
            left = mul(mul(a, b), c)
            right = mul(a, mul(b, c))
            np.testing.assert_allclose(left.coeffs, right.coeffs, rtol=1e-12, atol=1e-12)

    def test_div_geometric(self):
        num = one(3)
        den = TruncatedSeries([1, -1], order=3)
        np.testing.assert_allclose(div(num, den).coeffs, [1, 1, 1, 1], atol=1e-15)

    def test_div_self(self):
        rng = np.random.default_rng(3)
        a = random_series(rng)
        a = a + 1.0  # keep the pivot away from zero
        np.testing.assert_allclose(div(a, a).coeffs, one().coeffs, atol=1e-13)

    def test_div_mul_round_trip(self):
        # The residual of any double-precision quotient is ~eps * ||q||, so the
        # flat 1e-11 tolerance is asserted where the quotient stays moderate
        # (pivot >= 0.5) and the quotient-scaled form everywhere above 0.1.
        rng = np.random.default_rng(4)

        def polydisk(pivot_floor):
            while True:
                mod = rng.uniform(0, 1, DEFAULT_ORDER + 1)
                ph = rng.uniform(0, 2 * np.pi, DEFAULT_ORDER + 1)
                c = mod * np.exp(1j * ph)
                if abs(c[0]) >= pivot_floor:
                    return TruncatedSeries(c)

        for _ in range(100):
            a = polydisk(0.0)
            b = polydisk(0.5)
            back = mul(div(a, b), b)
            assert np.max(np.abs(back.coeffs - a.coeffs)) < 1e-11

        for _ in range(200):
            a = polydisk(0.0)
            b = polydisk(0.1)
            q = div(a, b)
            back = mul(q, b)
            scale = max(1.0, float(np.max(np.abs(q.coeffs))))
            assert np.max(np.abs(back.coeffs - a.coeffs)) < 1e-11 * scale

    def test_div_pivot_rejected(self):
        a = one()
        b = identity()  # constant term 0
        with pytest.raises(NearZeroConstantTerm):
            div(a, b)

    def test_mixed_orders_truncate_to_smaller(self):
        a = TruncatedSeries([1, 2, 3, 4, 5])
        b = TruncatedSeries([1, 1])
        assert mul(a, b).order == 1
        assert (a + b).order == 1


class TestCompose:
    def test_affine_outer(self):
        rng = np.random.default_rng(5)
        w = random_series(rng)
        w = TruncatedSeries(np.concatenate([[0], w.coeffs[1:]]))
        out = compose(TruncatedSeries([1, 1], order=w.order), w)
        np.testing.assert_allclose(out.coeffs, (w + 1.0).coeffs, atol=1e-14)

    def test_monomial_inner_shifts(self):
        p = TruncatedSeries([1, 2, 3], order=6)
        out = compose(p, monomial(2, 6))
        np.testing.assert_allclose(out.coeffs, [1, 0, 2, 0, 3, 0, 0], atol=1e-15)

    def test_second_coefficient_identity(self):
        # coefficient of z^2 in p(w(z)) is p1 w2 + p2 w1^2
        rng = np.random.default_rng(6)
        for _ in range(20):
            p = random_series(rng)
            w = TruncatedSeries(np.concatenate([[0], rng.uniform(-1, 1, DEFAULT_ORDER) + 1j * rng.uniform(-1, 1, DEFAULT_ORDER)]))
            got = compose(p, w)[2]
            want = p[1] * w[2] + p[2] * w[1] ** 2
            assert abs(got - want) < 1e-13

    def test_coefficient_k_ignores_higher_inner(self):
        rng = np.random.default_rng(7)
        p = random_series(rng)
        w1 = np.concatenate([[0], rng.uniform(-1, 1, DEFAULT_ORDER)]).astype(complex)
        w2 = np.array(w1)
        w2[6:] += rng.uniform(-1, 1, DEFAULT_ORDER + 1 - 6)
        a = compose(p, TruncatedSeries(w1))
        b = compose(p, TruncatedSeries(w2))
        np.testing.assert_allclose(a.coeffs[:6], b.coeffs[:6], atol=1e-13)

    def test_nonvanishing_inner_rejected(self):
        with pytest.raises(NonVanishingInner):
            compose(one(), one())


class TestHadamard:
    def test_convolution_identity(self):
        rng = np.random.default_rng(8)
        f = random_series(rng)
        k = TruncatedSeries(np.ones(DEFAULT_ORDER + 1))  # z/(1-z) + 1, all coefficients 1
        np.testing.assert_allclose(hadamard(f, k).coeffs, f.coeffs, atol=0)

    def test_coefficientwise(self):
        a = TruncatedSeries([0, 1, 4], order=3)
        b = TruncatedSeries([0, 1, 3], order=3)
        np.testing.assert_allclose(hadamard(a, b).coeffs, [0, 1, 12, 0], atol=0)


class TestQCalculus:
    def test_q_derivative_of_square(self):
        ctx = QBracketContext(0.5)
        d = q_derivative(monomial(2, 4), ctx)
        np.testing.assert_allclose(d.coeffs, [0, 1.5, 0, 0], atol=1e-15)

    def test_q_derivative_of_constant(self):
        ctx = QBracketContext(0.3)
        d = q_derivative(one(5), ctx)
        assert np.max(np.abs(d.coeffs)) == 0.0

    def test_q_derivative_monomials_exact(self):
        ctx = QBracketContext(0.5)
        for m in range(1, 10):
            d = q_derivative(monomial(m, 10), ctx)
            want = np.zeros(10, dtype=complex)
            want[m - 1] = bracket_oracle(0.5, m)
            np.testing.assert_allclose(d.coeffs, want, atol=1e-15)

    def test_q_derivative_matches_difference_quotient(self):
        # oracle: (f(z) - f(qz)) / ((1-q) z) at sample points on the disk;
        # a truncated series is a polynomial, so the quotient is exact
        rng = np.random.default_rng(9)
        ctx = QBracketContext(0.7)
        f = random_series(rng)
        d = q_derivative(f, ctx)
        zs = 0.4 * np.exp(2j * np.pi * rng.uniform(0, 1, 50)) * rng.uniform(0.1, 1, 50)
        for z in zs:
            quotient = (f.eval(z) - f.eval(ctx.q * z)) / ((1 - ctx.q) * z)
            assert abs(d.eval(z) - quotient) < 1e-10

    def test_q_derivative_to_ordinary_as_q_to_one(self):
        rng = np.random.default_rng(10)
        f = random_series(rng)
        ctx = QBracketContext(1 - 1e-6)
        dq = q_derivative(f, ctx)
        dd = f.derivative()
        assert np.max(np.abs(dq.coeffs - dd.coeffs)) < 1e-4

    def test_q_integral_monomial(self):
        ctx = QBracketContext(0.5)
        for m in range(5):
            i = q_integral(monomial(m, 6), ctx)
            want = np.zeros(8, dtype=complex)
            want[m + 1] = 1.0 / bracket_oracle(0.5, m + 1)
            np.testing.assert_allclose(i.coeffs, want, atol=1e-15)

    def test_q_integral_of_zero(self):
        ctx = QBracketContext(0.5)
        i = q_integral(TruncatedSeries(np.zeros(5)), ctx)
        assert np.max(np.abs(i.coeffs)) == 0.0

    def test_round_trip_derivative_integral(self):
        rng = np.random.default_rng(11)
        for q in [0.2, 0.5, 0.9]:
            ctx = QBracketContext(q)
            f = random_series(rng)
            back = q_derivative(q_integral(f, ctx), ctx)
            np.testing.assert_allclose(back.coeffs, f.coeffs, atol=1e-12)


class TestEval:
    def test_affine(self):
        assert TruncatedSeries([1, 1]).eval(0.3) == pytest.approx(1.3, abs=1e-15)

    def test_geometric_vs_closed_form(self):
        n = 20
        g = TruncatedSeries(np.ones(n + 1))
        z = 0.5
        tail = z ** (n + 1) / (1 - z)
        assert g.eval(z) == pytest.approx(1 / (1 - z) - tail, abs=1e-14)

    def test_at_origin(self):
        rng = np.random.default_rng(12)
        f = random_series(rng)
        assert f.eval(0.0) == f[0]


class TestCauchyExtraction:
    def test_exponential_factorials(self):
        got = coefficients_via_cauchy(np.exp, 6, radius=0.5)
        fact = [1, 1, 2, 6, 24, 120, 720]
        want = [1.0 / k for k in fact]
        np.testing.assert_allclose(got.coeffs, want, atol=1e-10)

    def test_constant(self):
        got = coefficients_via_cauchy(lambda z: np.full_like(z, 2.5 + 0j), 5)
        np.testing.assert_allclose(got.coeffs, [2.5, 0, 0, 0, 0, 0], atol=1e-12)

    def test_half_plane_map_vs_series_division(self):
        # (1+z)/(1-z) = 1 + 2z + 2z^2 + ...; the division oracle lives in div()
        got = coefficients_via_cauchy(lambda z: (1 + z) / (1 - z), 8, radius=0.5)
        want = div(TruncatedSeries([1, 1], order=8), TruncatedSeries([1, -1], order=8))
        np.testing.assert_allclose(got.coeffs, want.coeffs, atol=1e-10)

    def test_sample_count_guard(self):
        with pytest.raises(DomainError):
            coefficients_via_cauchy(np.exp, 10, radius=0.5, samples=8)


class TestSerialization:
    def test_json_round_trip(self):
        rng = np.random.default_rng(13)
        f = random_series(rng)
        doc = f.to_json()
        assert set(doc) == {"order", "re", "im"}
        back = TruncatedSeries.from_json(doc)
        np.testing.assert_allclose(back.coeffs, f.coeffs, atol=0)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False), min_size=1, max_size=13),
    st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False), min_size=1, max_size=13),
)
def test_mul_commutes_property(ac, bc):
    a, b = TruncatedSeries(ac), TruncatedSeries(bc)
    np.testing.assert_allclose(mul(a, b).coeffs, mul(b, a).coeffs, rtol=1e-12, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=40), st.floats(min_value=0.05, max_value=0.95))
def test_bracket_matches_finite_sum_property(n, q):
    assert q_bracket(QBracketContext(q), n) == pytest.approx(bracket_oracle(q, n), rel=1e-12)
