"""Coefficient-engine tests.

The series solve is the oracle: closed forms are compared against it, and
its own structure (triangularity, reductions, extremal self-consistency) is
exercised directly.
"""

import numpy as np
import pytest

from erfq.engine import (
    ClassKind,
    ClassParams,
    CoeffResult,
    closed_form_a2_a3_convex,
    closed_form_a2_a3_starlike,
    coeffs_from_F,
    family_F_from_a2_a3,
    fekete_szego,
    lhs_functional,
    quasi_closed_form_a2_a3,
    recover_coeffs_numeric,
    solve_F_from_subordination,
    subordination_target,
)
from erfq.errors import DomainError
from erfq.families import PhiSpec, SchwarzSpec, sample_phi, sample_schwarz, phi_series, schwarz_series
from erfq.series import TruncatedSeries, compose, one

ANCHOR = ClassParams(beta=0.0, q=0.5, b=1.0)


def random_params(rng) -> ClassParams:
    beta = rng.uniform(-1.2, 1.2)
    q = rng.uniform(0.05, 0.95)
    b = rng.uniform(0.2, 2.0) * np.exp(2j * np.pi * rng.uniform())
    return ClassParams(beta=float(beta), q=float(q), b=complex(b))


def random_outer(rng, order=12) -> TruncatedSeries:
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = 1.0
    c[1] = rng.uniform(0.2, 3.0)
    c[2] = rng.uniform(-3.0, 3.0)
    c[3:] = 0.3 * (rng.uniform(-1, 1, order - 2) + 1j * rng.uniform(-1, 1, order - 2))
    return TruncatedSeries(c)


class TestClassParams:
    def test_derived_identities(self):
        p = ClassParams(beta=0.4, q=0.3, b=2.0 - 1.0j)
        assert p.theta2 == pytest.approx(0.3, abs=1e-15)
        assert p.theta3 == pytest.approx(0.3 + 0.09, abs=1e-15)
        assert p.rho == pytest.approx(1 + 1j * np.tan(0.4), abs=1e-15)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            ClassParams(beta=2.0, q=0.5, b=1.0)
        with pytest.raises(DomainError):
            ClassParams(beta=0.0, q=1.0, b=1.0)
        with pytest.raises(DomainError):
            ClassParams(beta=0.0, q=0.5, b=0.0)


class TestLhsFunctional:
    def test_identity_member(self):
        # F = z makes the functional identically 1 for every kind
        F = family_F_from_a2_a3(0.0, 0.0)
        for kind in ClassKind:
            out = lhs_functional(F, ANCHOR, kind)
            np.testing.assert_allclose(out.coeffs, one(out.order).coeffs, atol=1e-14)

    def test_linear_coefficient_with_only_a2(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            params = random_params(rng)
            a2 = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            F = family_F_from_a2_a3(a2, 0.0)
            out = lhs_functional(F, params, ClassKind.STARLIKE_SUB)
            q = params.q
            want = params.rho / params.b * (1 - (1 + q)) * a2 / 3.0
            assert abs(out[1] - want) < 1e-12

    def test_beta_zero_b_one_reduces_to_ratio(self):
        from erfq.series import div, q_derivative

        rng = np.random.default_rng(1)
        a2, a3 = 0.7 - 0.2j, -0.4 + 0.9j
        F = family_F_from_a2_a3(a2, a3)
        out = lhs_functional(F, ANCHOR, ClassKind.STARLIKE_SUB)
        ratio = div(q_derivative(F, ANCHOR.ctx), F.shift_down(1))
        np.testing.assert_allclose(out.coeffs, ratio.coeffs, atol=1e-14)

    def test_ratio_expansion_identity(self):
        # z and z^2 coefficients of z D_q F / F for the three-term family image
        rng = np.random.default_rng(2)
        for _ in range(100):
            q = rng.uniform(0.05, 0.95)
            params = ClassParams(beta=0.0, q=float(q), b=1.0)
            a2 = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            a3 = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            out = lhs_functional(family_F_from_a2_a3(a2, a3), params, ClassKind.STARLIKE_SUB)
            b2 = 1.0 + q  # [2]_q
            b3 = 1.0 + q + q * q  # [3]_q
            assert abs(out[1] - (1 - b2) * a2 / 3.0) < 1e-11
            want2 = (b3 - 1) * a3 / 10.0 + (1 - b2) * a2 * a2 / 9.0
            assert abs(out[2] - want2) < 1e-11

    def test_convex_prime_variants_differ(self):
        F = family_F_from_a2_a3(1.0, 1.0)
        a = lhs_functional(F, ANCHOR, ClassKind.CONVEX_SUB, convex_prime="ordinary")
        b = lhs_functional(F, ANCHOR, ClassKind.CONVEX_SUB, convex_prime="q")
        assert abs(a[2] - b[2]) > 1e-3


class TestRecovery:
    def test_matches_starlike_closed_form_simple(self):
        outer = TruncatedSeries([1.0, 2.0, 2.0], order=12)  # half-plane map
        got = recover_coeffs_numeric(ANCHOR, ClassKind.STARLIKE_SUB, outer, SchwarzSpec.monomial(1))
        # hand arithmetic of the printed a2: 3*1*2*1/((1)(1-1.5)) = -12
        assert got.a2 == pytest.approx(-12.0, abs=1e-10)
        want = closed_form_a2_a3_starlike(ANCHOR, 2.0, 2.0, 1.0, 0.0, variant="derived")
        assert got.a3 == pytest.approx(want.a3, abs=1e-10)

    def test_w_squared_kills_a2(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            params = random_params(rng)
            outer = random_outer(rng)
            for kind in (ClassKind.STARLIKE_SUB, ClassKind.CONVEX_SUB):
                got = recover_coeffs_numeric(params, kind, outer, SchwarzSpec.monomial(2))
                assert abs(got.a2) < 1e-12

    def test_a2_ignores_w2_triangularity(self):
        rng = np.random.default_rng(4)
        outer = random_outer(rng)
        base = schwarz_series(SchwarzSpec.mobius_plus(0.4), 12)
        bumped = TruncatedSeries(
            np.concatenate([base.coeffs[:2], [base.coeffs[2] + 0.3], base.coeffs[3:]])
        )
        a = recover_coeffs_numeric(ANCHOR, ClassKind.STARLIKE_SUB, outer, SchwarzSpec.explicit(base))
        b = recover_coeffs_numeric(ANCHOR, ClassKind.STARLIKE_SUB, outer, SchwarzSpec.explicit(bumped))
        assert a.a2 == b.a2

    def test_printed_a2_agrees_everywhere(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            params = random_params(rng)
            outer = random_outer(rng)
            p1, p2 = outer[1].real, outer[2].real
            spec = sample_schwarz(rng)
            s = schwarz_series(spec, 4)
            got = recover_coeffs_numeric(params, ClassKind.STARLIKE_SUB, outer, spec)
            printed = closed_form_a2_a3_starlike(params, p1, p2, s[1], s[2], variant="printed")
            assert abs(got.a2 - printed.a2) < 1e-10 * (1 + abs(printed.a2))

    def test_printed_a3_sign_finding(self):
        # the derived variant matches the series solve; the printed one
        # disagrees exactly by the sign of the p2/p1 term
        rng = np.random.default_rng(6)
        disagreements = 0
        for _ in range(50):
            params = random_params(rng)
            outer = random_outer(rng)
            p1, p2 = outer[1].real, outer[2].real
            spec = sample_schwarz(rng)
            s = schwarz_series(spec, 4)
            got = recover_coeffs_numeric(params, ClassKind.STARLIKE_SUB, outer, spec)
            derived = closed_form_a2_a3_starlike(params, p1, p2, s[1], s[2], variant="derived")
            printed = closed_form_a2_a3_starlike(params, p1, p2, s[1], s[2], variant="printed")
            assert abs(got.a3 - derived.a3) < 1e-10 * (1 + abs(derived.a3))
            gap = printed.a3 - derived.a3
            want_gap = -10 * params.b * 2 * p2 / (params.theta3 * params.rho) * s[1] ** 2
            assert abs(gap - want_gap) < 1e-9 * (1 + abs(want_gap))
            if abs(gap) > 1e-9:
                disagreements += 1
        assert disagreements > 30  # systematic, not incidental

    def test_convex_closed_form_agrees(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            params = random_params(rng)
            outer = random_outer(rng)
            p1, p2 = outer[1].real, outer[2].real
            spec = sample_schwarz(rng)
            s = schwarz_series(spec, 4)
            got = recover_coeffs_numeric(params, ClassKind.CONVEX_SUB, outer, spec)
            want = closed_form_a2_a3_convex(params, p1, p2, s[1], s[2])
            assert abs(got.a2 - want.a2) < 1e-10 * (1 + abs(want.a2))
            assert abs(got.a3 - want.a3) < 1e-10 * (1 + abs(want.a3))

    def test_quasi_closed_forms_agree(self):
        rng = np.random.default_rng(8)
        for kind in (ClassKind.STARLIKE_QUASI, ClassKind.CONVEX_QUASI):
            for _ in range(50):
                params = random_params(rng)
                outer = random_outer(rng)
                c1, c2 = outer[1].real, outer[2].real
                spec = sample_schwarz(rng)
                phi = sample_phi(rng)
                s = schwarz_series(spec, 4)
                ph = phi_series(phi, 4)
                got = recover_coeffs_numeric(params, kind, outer, spec, phi=phi)
                want = quasi_closed_form_a2_a3(params, kind, c1, c2, ph[0], ph[1], s[1], s[2])
                assert abs(got.a2 - want.a2) < 1e-10 * (1 + abs(want.a2))
                assert abs(got.a3 - want.a3) < 1e-10 * (1 + abs(want.a3))

    def test_quasi_with_unit_phi_reduces_to_subordination(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            params = random_params(rng)
            outer = random_outer(rng)
            spec = sample_schwarz(rng)
            for quasi, sub in (
                (ClassKind.STARLIKE_QUASI, ClassKind.STARLIKE_SUB),
                (ClassKind.CONVEX_QUASI, ClassKind.CONVEX_SUB),
            ):
                a = recover_coeffs_numeric(params, quasi, outer, spec, phi=PhiSpec.constant(1.0))
                b = recover_coeffs_numeric(params, sub, outer, spec)
                assert abs(a.a2 - b.a2) < 1e-12 * (1 + abs(b.a2))
                assert abs(a.a3 - b.a3) < 1e-12 * (1 + abs(b.a3))


class TestSolveF:
    def test_unit_rhs_gives_identity(self):
        for kind in (ClassKind.STARLIKE_SUB, ClassKind.CONVEX_SUB):
            F = solve_F_from_subordination(ANCHOR, kind, one(12), 12)
            want = np.zeros(13)
            want[1] = 1.0
            np.testing.assert_allclose(F.coeffs, want, atol=1e-15)

    def test_round_trip_through_functional_anchor(self):
        # flat 1e-10 at the well-conditioned anchor parameters
        rng = np.random.default_rng(10)
        for _ in range(20):
            outer = random_outer(rng)
            spec = sample_schwarz(rng)
            rhs = compose(outer, schwarz_series(spec, 12))
            for kind in (ClassKind.STARLIKE_SUB, ClassKind.CONVEX_SUB):
                F = solve_F_from_subordination(ANCHOR, kind, rhs, 12)
                back = lhs_functional(F, ANCHOR, kind)
                np.testing.assert_allclose(
                    back.coeffs, rhs.coeffs[: back.order + 1], atol=1e-10
                )

    def test_round_trip_through_functional_random(self):
        # extreme q or beta inflate ||F|| geometrically; tolerance follows it
        rng = np.random.default_rng(10)
        for _ in range(20):
            params = random_params(rng)
            outer = random_outer(rng)
            spec = sample_schwarz(rng)
            rhs = compose(outer, schwarz_series(spec, 12))
            for kind in (ClassKind.STARLIKE_SUB, ClassKind.CONVEX_SUB):
                F = solve_F_from_subordination(params, kind, rhs, 12)
                back = lhs_functional(F, params, kind)
                scale = max(1.0, float(np.max(np.abs(F.coeffs))))
                np.testing.assert_allclose(
                    back.coeffs, rhs.coeffs[: back.order + 1], atol=1e-10 * scale
                )

    def test_extremal_self_consistency(self):
        # recover from the solved F and from the Schwarz data directly
        rng = np.random.default_rng(11)
        outer = TruncatedSeries([1.0, 2.0, 2.0], order=12)
        for spec in [
            SchwarzSpec.monomial(1),
            SchwarzSpec.monomial(2),
            SchwarzSpec.mobius_plus(0.3),
            SchwarzSpec.mobius_minus(0.8),
        ]:
            rhs = compose(outer, schwarz_series(spec, 12))
            F = solve_F_from_subordination(ANCHOR, ClassKind.STARLIKE_SUB, rhs, 12)
            via_F = coeffs_from_F(F)
            direct = recover_coeffs_numeric(ANCHOR, ClassKind.STARLIKE_SUB, outer, spec)
            assert abs(via_F.a2 - direct.a2) < 1e-10
            assert abs(via_F.a3 - direct.a3) < 1e-10


class TestFeketeSzego:
    def test_zero_a2(self):
        r = CoeffResult(a2=0.0, a3=3.0 - 4.0j, source="series-solve")
        assert fekete_szego(r, 2.0) == pytest.approx(5.0, abs=1e-15)

    def test_mu_zero(self):
        r = CoeffResult(a2=7.0, a3=3.0 - 4.0j, source="series-solve")
        assert fekete_szego(r, 0.0) == pytest.approx(5.0, abs=1e-15)

    def test_direct_arithmetic(self):
        r = CoeffResult(a2=2.0, a3=5.0, source="series-solve")
        assert fekete_szego(r, 1.0) == pytest.approx(1.0, abs=1e-15)
