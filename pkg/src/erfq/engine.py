"""Coefficient recovery for the conic-domain classes under the q-derivative.

A normalized f(z) = z + a2 z^2 + ... is carried into the working family by
the error-function weighting (``families.to_family_E``); with F that image,
the class-defining functional is

    starlike kinds:  1 + (rho/b) (z D_q F / F - 1)
    convex kinds:    1 + (rho/b) ((z D_q F)' / D_q F - 1)

with rho = 1 + i tan(beta).  Subordination kinds equate this with
outer(w(z)) for a Schwarz function w; quasi kinds equate the functional
minus one with phi(z) (outer(omega(z)) - 1) for a scale function phi.

The prime in the convex kind is the ordinary derivative as printed; since
the source mixes operators without comment, ``convex_prime="q"`` switches
to the all-q reading D_q(z D_q F).

Recovery of a2 and a3 goes order by order: the z^1 relation is linear in
a2 and the z^2 relation is affine in a3 once a2 is known, so the solve is
two exact back-substitutions with multipliers probed through the series
engine itself (never through a hand-derived formula).  The printed closed
forms are exposed separately so the reconciliation layer can compare them
against this derivation-independent path; the a3 closed form also has a
"derived" variant with the opposite sign on the p2/p1 term, which is what
the order-by-order algebra actually yields.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NotNormalized, RecursionBreakdown, SingularRelation
from .families import PhiSpec, SchwarzSpec, from_family_E, phi_series, schwarz_series
from .series import (
    DEFAULT_ORDER,
    QBracketContext,
    TruncatedSeries,
    compose,
    div,
    mul,
    q_derivative,
)


class ClassKind(Enum):
    STARLIKE_SUB = "starlike-sub"
    CONVEX_SUB = "convex-sub"
    STARLIKE_QUASI = "starlike-quasi"
    CONVEX_QUASI = "convex-quasi"

    @property
    def is_convex(self) -> bool:
        return self in (ClassKind.CONVEX_SUB, ClassKind.CONVEX_QUASI)

    @property
    def is_quasi(self) -> bool:
        return self in (ClassKind.STARLIKE_QUASI, ClassKind.CONVEX_QUASI)


@dataclass(frozen=True)
class ClassParams:
    """Spiral angle beta, deformation q, and the nonzero weight b."""

    beta: float
    q: float
    b: complex

    def __post_init__(self):
        if not (-math.pi / 2 < self.beta < math.pi / 2):
            raise DomainError(f"|beta| must be < pi/2, got {self.beta}")
        if not (0.0 < self.q < 1.0):
            raise DomainError(f"q must lie in (0, 1), got {self.q}")
        if self.b == 0:
            raise DomainError("b must be nonzero")
        # algebraic identities of the derived quantities
        assert abs(self.theta2 - self.q) < 1e-12
        assert abs(self.theta3 - (self.q + self.q**2)) < 1e-12
        assert abs(self.rho.real - 1.0) < 1e-15

    @property
    def rho(self) -> complex:
        return complex(1.0, math.tan(self.beta))

    @property
    def ctx(self) -> QBracketContext:
        return QBracketContext(self.q)

    @property
    def theta2(self) -> float:
        """[2]_q - 1."""
        return self.ctx.bracket(2) - 1.0

    @property
    def theta3(self) -> float:
        """[3]_q - 1."""
        return self.ctx.bracket(3) - 1.0

    def to_json(self) -> dict:
        return {"beta": self.beta, "q": self.q, "b": [self.b.real, self.b.imag]}


@dataclass(frozen=True)
class CoeffResult:
    a2: complex
    a3: complex
    source: str  # "closed-form" | "series-solve"

    def to_json(self) -> dict:
        return {
            "a2": [self.a2.real, self.a2.imag],
            "a3": [self.a3.real, self.a3.imag],
            "source": self.source,
        }


def fekete_szego(result: CoeffResult, mu: complex) -> float:
    """|a3 - mu a2^2|."""
    return abs(result.a3 - mu * result.a2**2)


def family_F_from_a2_a3(a2: complex, a3: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The family image of z + a2 z^2 + a3 z^3 (higher coefficients zero)."""
    c = np.zeros(order + 1, dtype=np.complex128)
    c[1] = 1.0
    c[2] = -a2 / 3.0
    c[3] = a3 / 10.0
    return TruncatedSeries(c)


def lhs_functional(
    F: TruncatedSeries,
    params: ClassParams,
    kind: ClassKind,
    convex_prime: str = "ordinary",
) -> TruncatedSeries:
    """The class-defining left-hand side, a series with constant term 1."""
    if abs(F[1] - 1.0) > 1e-12 or abs(F[0]) > 1e-14:
        raise NotNormalized("the family image must satisfy F(0) = 0, F'(0) = 1")
    ctx = params.ctx
    dqF = q_derivative(F, ctx)
    if not kind.is_convex:
        # z D_q F / F = D_q F / (F/z); both sides regular at the origin
        ratio = div(dqF, F.shift_down(1))
    else:
        zdq = dqF.shift_up(1)
        if convex_prime == "ordinary":
            num = zdq.derivative()
        elif convex_prime == "q":
            num = q_derivative(zdq, ctx)
        else:
            raise DomainError(f"convex_prime must be 'ordinary' or 'q', got {convex_prime!r}")
        ratio = div(num, dqF)
    return (ratio - 1.0) * (params.rho / params.b) + 1.0


def _probe_multipliers(params, kind, order, convex_prime):
    """z^1 and z^2 multipliers of (a2, a3) in the shifted functional.

    tau(F(a2, a3)) has z-coefficient m1 a2 and z^2-coefficient s2 a2^2 + m2 a3;
    probing with unit coefficients through the full series path keeps the
    solve independent of any printed formula.
    """
    tau10 = lhs_functional(family_F_from_a2_a3(1.0, 0.0, order), params, kind, convex_prime)
    tau01 = lhs_functional(family_F_from_a2_a3(0.0, 1.0, order), params, kind, convex_prime)
    m1 = tau10[1]
    s2 = tau10[2]
    m2 = tau01[2]
    if abs(m1) < 1e-14 or abs(m2) < 1e-14:
        raise SingularRelation(
            f"degenerate recovery multipliers m1={m1!r}, m2={m2!r}"
        )  # impossible for q in (0,1): they reduce to nonzero q-bracket combinations
    return m1, s2, m2


def subordination_target(
    outer: TruncatedSeries, w: SchwarzSpec, order: int = DEFAULT_ORDER
) -> TruncatedSeries:
    """outer(w(z)) - 1 as a series (the shifted right-hand side)."""
    return compose(outer.truncate(order), schwarz_series(w, order)) - 1.0


def quasi_target(
    outer: TruncatedSeries,
    w: SchwarzSpec,
    phi: PhiSpec,
    order: int = DEFAULT_ORDER,
) -> TruncatedSeries:
    """phi(z) (outer(omega(z)) - 1): the proof-form right-hand side."""
    shifted = compose(outer.truncate(order), schwarz_series(w, order)) - 1.0
    return mul(phi_series(phi, order), shifted)


def recover_coeffs_numeric(
    params: ClassParams,
    kind: ClassKind,
    outer: TruncatedSeries,
    w: SchwarzSpec,
    phi: PhiSpec | None = None,
    order: int = DEFAULT_ORDER,
    convex_prime: str = "ordinary",
) -> CoeffResult:
    """Solve the defining relation order by order for a2, then a3.

    The z^1 and z^2 relations are triangular: a2 enters z^1 linearly and z^2
    only through a2^2, a3 enters z^2 linearly.  The two-step back-substitution
    below is therefore exact linear algebra in two unknowns.
    """
    if abs(outer[0] - 1.0) > 1e-12:
        raise DomainError("outer target must have constant term 1")
    if kind.is_quasi:
        if phi is None:
            phi = PhiSpec.constant(1.0)
        target = quasi_target(outer, w, phi, order)
    else:
        if phi is not None:
            raise DomainError("phi only applies to quasi kinds")
        target = subordination_target(outer, w, order)
    m1, _, _ = _probe_multipliers(params, kind, order, convex_prime)
    a2 = target[1] / m1

    tau_a2 = lhs_functional(family_F_from_a2_a3(a2, 0.0, order), params, kind, convex_prime)
    tau_a2_1 = lhs_functional(family_F_from_a2_a3(a2, 1.0, order), params, kind, convex_prime)
    s = tau_a2[2]
    m2 = tau_a2_1[2] - s
    if abs(m2) < 1e-14:
        raise SingularRelation(f"vanishing a3 multiplier {m2!r}")
    a3 = (target[2] - s) / m2
    return CoeffResult(a2=complex(a2), a3=complex(a3), source="series-solve")


def batch_recovery_constants(
    params: ClassParams,
    kind: ClassKind,
    order: int = DEFAULT_ORDER,
    convex_prime: str = "ordinary",
):
    """(m1, s2, m2) for the vectorized sweep path; probed via the series engine."""
    return _probe_multipliers(params, kind, order, convex_prime)


def closed_form_a2_a3_starlike(
    params: ClassParams,
    p1: float,
    p2: float,
    w1: complex,
    w2: complex,
    variant: str = "printed",
) -> CoeffResult:
    """The starlike-subordination closed forms.

    variant="printed" reproduces the source displays verbatim, including the
    +p2/p1 sign inside the subtracted bracket of a3.  variant="derived" is the
    independent order-by-order derivation, which flips that sign.  Neither is
    assumed correct here; the reconciliation layer reports which one matches
    the series oracle.
    """
    if p1 <= 0:
        raise DomainError(f"need p1 > 0, got {p1}")
    rho, q = params.rho, params.q
    b = params.b
    one_m_2q = 1.0 - (1.0 + q)  # 1 - [2]_q
    theta3 = params.theta3
    a2 = 3.0 * b * p1 * w1 / (rho * one_m_2q)
    sign = +1.0 if variant == "printed" else -1.0
    bracket = sign * (p2 / p1) + p1 * b / (rho * one_m_2q)
    a3 = 10.0 * b * p1 / (theta3 * rho) * (w2 - bracket * w1 * w1)
    return CoeffResult(a2=complex(a2), a3=complex(a3), source="closed-form")


def closed_form_a2_a3_convex(
    params: ClassParams, p1: float, p2: float, w1: complex, w2: complex
) -> CoeffResult:
    """Derived convex-subordination closed forms (no printed counterpart exists).

    a2 = -3 b p1 w1 / (rho [2]_q),
    a3 = (5 b p1 / (rho [3]_q)) (w2 + (p2/p1 + b p1/rho) w1^2).
    """
    if p1 <= 0:
        raise DomainError(f"need p1 > 0, got {p1}")
    rho, b = params.rho, params.b
    br2 = params.ctx.bracket(2)
    br3 = params.ctx.bracket(3)
    a2 = -3.0 * b * p1 * w1 / (rho * br2)
    a3 = 5.0 * b * p1 / (rho * br3) * (w2 + (p2 / p1 + b * p1 / rho) * w1 * w1)
    return CoeffResult(a2=complex(a2), a3=complex(a3), source="closed-form")


def quasi_closed_form_a2_a3(
    params: ClassParams,
    kind: ClassKind,
    c1: float,
    c2: float,
    d0: complex,
    d1: complex,
    w1: complex,
    w2: complex,
) -> CoeffResult:
    """Proof-display closed forms for the quasi kinds.

    The starlike display is printed in the source; the convex analog follows
    by the same algebra on the convex functional ("analysis similar to that
    in the proof" is all the source offers for it).
    """
    if c1 <= 0:
        raise DomainError(f"need c1 > 0, got {c1}")
    if abs(d0) > 1.0 + 1e-12 or abs(d1) > 1.0 + 1e-12:
        raise DomainError("scale coefficients must satisfy |d0|, |d1| <= 1")
    rho, b, q = params.rho, params.b, params.q
    if not kind.is_quasi:
        raise DomainError("quasi closed forms require a quasi kind")
    if kind is ClassKind.STARLIKE_QUASI:
        one_m_2q = -q  # 1 - [2]_q
        theta3 = params.theta3
        a2 = 3.0 * b * c1 * d0 * w1 / (rho * one_m_2q)
        inner = c1 * d1 * w1 + c1 * d0 * w2 + d0 * (c2 - b * c1 * c1 * d0 / (rho * one_m_2q)) * w1 * w1
        a3 = 10.0 * b / (rho * theta3) * inner
    else:
        br2 = params.ctx.bracket(2)
        br3 = params.ctx.bracket(3)
        a2 = -3.0 * b * c1 * d0 * w1 / (rho * br2)
        inner = c1 * d1 * w1 + c1 * d0 * w2 + d0 * (c2 + b * c1 * c1 * d0 / rho) * w1 * w1
        a3 = 5.0 * b / (rho * br3) * inner
    return CoeffResult(a2=complex(a2), a3=complex(a3), source="closed-form")


def solve_F_from_subordination(
    params: ClassParams,
    kind: ClassKind,
    rhs: TruncatedSeries,
    order: int = DEFAULT_ORDER,
    convex_prime: str = "ordinary",
) -> TruncatedSeries:
    """The unique normalized F with lhs_functional(F) = rhs to the given order.

    Writing S = 1 + (b/rho)(rhs - 1), the starlike relation z D_q F = F S
    and the convex relation (z D_q F)' = (D_q F) S are both triangular in
    the coefficients of F, so F is built by recursion; the m-th multiplier
    ([m]_q - 1, respectively (m-1)[m]_q or [m]_q([m]_q - 1)) cannot vanish
    for m >= 2 and q in (0, 1).
    """
    if abs(rhs[0] - 1.0) > 1e-12:
        raise DomainError("rhs must have constant term 1")
    ctx = params.ctx
    S = (rhs - 1.0) * (params.b / params.rho) + 1.0
    n = min(order, S.order)
    Sc = S.coeffs
    F = np.zeros(n + 1, dtype=np.complex128)
    F[1] = 1.0
    for m in range(2, n + 1):
        acc = 0.0 + 0.0j
        if not kind.is_convex:
            for j in range(1, m):
                acc += F[m - j] * Sc[j]
            mult = ctx.bracket(m) - 1.0
        else:
            for j in range(1, m):
                acc += ctx.bracket(m - j) * F[m - j] * Sc[j]
            if convex_prime == "ordinary":
                mult = (m - 1) * ctx.bracket(m)
            else:
                mult = ctx.bracket(m) * (ctx.bracket(m) - 1.0)
        if abs(mult) < 1e-14:
            raise RecursionBreakdown(f"vanishing recursion multiplier at m={m}")
        F[m] = acc / mult
    return TruncatedSeries(F)


def coeffs_from_F(F: TruncatedSeries) -> CoeffResult:
    """(a2, a3) read off a family image by undoing the coefficient weighting."""
    f = from_family_E(F)
    return CoeffResult(a2=f[2], a3=f[3], source="series-solve")
