"""Closed-form coefficient bounds as pure functions of parameters.

The admissible-function inequality at the bottom of everything: for a
Schwarz function w = w1 z + w2 z^2 + ... and real t,

    |w2 - t w1^2| <= -t (t < -1),  1 (-1 <= t <= 1),  t (t > 1),

sharp with witnesses z (|t| > 1), z^2 (|t| <= 1) and the two Mobius
families at t = -/+ 1; for -1 < t < 1 it improves to
|w2 - t w1^2| + (1 -/+ |t|-side) |w1|^2 <= 1.  For complex t the usable
form is max(1, |t|), since |w2| <= 1 - |w1|^2 gives a convex combination.

Every class bound in the catalog is |printed prefactor| times the
admissible-function value of the engine-derived t:

    starlike:  t(mu) = -p2/p1 - b p1/(rho theta2) + 9 mu theta3 b p1/(10 rho theta2^2)
    convex:    t(mu) = -p2/p1 - b p1/rho          + 9 mu [3]_q b p1/(5 [2]_q^2 rho)

with prefactors 10|b|p1/(|rho| theta3) and 5|b|p1/(|rho| [3]_q).  The t is
always recomputed from this derivation, never read from a printed bracket:
the printed starlike bracket carries the p2/p1 sign issue, and the printed
starlike sigma_1/sigma_2 are label-mangled (sigma_1 is the t = +1 edge and
sigma_2 is minus the t = -1 edge, while sigma_3 matches t = 0 exactly; the
convex thresholds match the engine t at -1, 0, +1 as printed).  Thresholds
therefore carry both the printed quotients and the effective window edges.
Raw printed expressions stay available for the reconciliation reports.

Whether the sources mean b or |b| in the bound displays is never stated;
the modulus reading is the unique one that makes the right-hand sides
real, nonnegative and attained, and it is recorded in every report header.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import ClassKind, ClassParams
from .errors import DomainError, RegimeError

#: Slack for threshold comparisons; ties resolve to the middle regime, where
#: the branch values agree by continuity.
REGIME_SLACK = 1e-12

#: Tolerance deciding whether the real-parameter trichotomy applies.
REAL_REGIME_TOL = 1e-10


def lemma_bound(t: float) -> float:
    """Sharp bound of |w2 - t w1^2| over Schwarz functions, real t."""
    if t < -1.0:
        return -t
    if t > 1.0:
        return t
    return 1.0


def lemma_bound_complex(t: complex) -> float:
    """max(1, |t|); agrees with :func:`lemma_bound` on the real axis."""
    return max(1.0, abs(t))


def lemma_improved_check(w1: complex, w2: complex, t: float) -> float:
    """Left side of the improved inequality; <= 1 for admissible data."""
    if not (-1.0 < t < 1.0):
        raise DomainError(f"the improvement needs -1 < t < 1, got {t}")
    if t <= 0.0:
        return abs(w2 - t * w1 * w1) + (1.0 + t) * abs(w1) ** 2
    return abs(w2 - t * w1 * w1) + (1.0 - t) * abs(w1) ** 2


# ---------------------------------------------------------------------------
# engine t and prefactors
# ---------------------------------------------------------------------------


def _check_p1(p1: float):
    if p1 <= 0:
        raise DomainError(f"need p1 > 0, got {p1}")


def prefactor(params: ClassParams, p1: float, kind: ClassKind) -> float:
    """|printed prefactor| of the Fekete-Szego displays."""
    _check_p1(p1)
    if kind.is_convex:
        return 5.0 * abs(params.b) * p1 / (abs(params.rho) * params.ctx.bracket(3))
    return 10.0 * abs(params.b) * p1 / (abs(params.rho) * params.theta3)


def engine_t(params: ClassParams, p1: float, p2: float, mu: complex, kind: ClassKind) -> complex:
    """The t of the quadratic-coefficient identity a3 - mu a2^2 = P (w2 - t w1^2)."""
    _check_p1(p1)
    rho, b = params.rho, params.b
    if kind.is_convex:
        br2, br3 = params.ctx.bracket(2), params.ctx.bracket(3)
        return -p2 / p1 - b * p1 / rho + 9.0 * mu * br3 * b * p1 / (5.0 * br2**2 * rho)
    th2, th3 = params.theta2, params.theta3
    return -p2 / p1 - b * p1 / (rho * th2) + 9.0 * mu * th3 * b * p1 / (10.0 * rho * th2**2)


def printed_t_starlike(params: ClassParams, p1: float, p2: float, mu: complex) -> complex:
    """The bracket as printed (p2/p1 sign flipped); reconciliation data only."""
    return engine_t(params, p1, p2, mu, ClassKind.STARLIKE_SUB) + 2.0 * p2 / p1


def _t_window(params, p1, p2, kind):
    # t is affine in mu; solve t = -1, 0, +1
    t0 = engine_t(params, p1, p2, 0.0, kind)
    slope = engine_t(params, p1, p2, 1.0, kind) - t0
    lo = (-1.0 - t0) / slope
    mid = (0.0 - t0) / slope
    hi = (1.0 - t0) / slope
    real = max(abs(t0.imag), abs(slope.imag)) < REAL_REGIME_TOL
    if real and lo.real > hi.real:
        lo, hi = hi, lo
    return lo, mid, hi, real


@dataclass(frozen=True)
class Thresholds:
    """Printed threshold quotients plus the effective regime window.

    sigma1/sigma2/sigma3 are the printed formulas (complex in general).  The
    mu_* fields are the engine-t window edges; for the convex theorem they
    coincide with the printed sigmas, for the starlike one they do not (see
    the module docstring).  real_regime says whether the trichotomy applies.
    """

    sigma1: complex
    sigma2: complex
    sigma3: complex
    mu_lower: complex
    mu_mid: complex
    mu_upper: complex
    real_regime: bool

    def to_json(self) -> dict:
        as_pair = lambda z: [z.real, z.imag]
        return {
            "sigma1": as_pair(self.sigma1),
            "sigma2": as_pair(self.sigma2),
            "sigma3": as_pair(self.sigma3),
            "mu_lower": as_pair(self.mu_lower),
            "mu_mid": as_pair(self.mu_mid),
            "mu_upper": as_pair(self.mu_upper),
            "real_regime": self.real_regime,
        }


@dataclass(frozen=True)
class PiecewiseBound:
    value: float
    regime: str  # "below" | "middle" | "above" | "complex-mu"
    t: complex

    def to_json(self) -> dict:
        return {"value": self.value, "regime": self.regime, "t": [self.t.real, self.t.imag]}


def thresholds_starlike(params: ClassParams, p1: float, p2: float) -> Thresholds:
    """Printed quotients of the starlike theorem plus the effective window."""
    _check_p1(p1)
    rho, b = params.rho, params.b
    th2, th3 = params.theta2, params.theta3
    den = 9.0 * th3 * b * p1**2
    s1 = (10.0 * (p1 + p2) * rho * th2**2 + 10.0 * th2 * b * p1**2) / den
    s2 = (10.0 * (p1 - p2) * rho * th2**2 - 10.0 * th2 * b * p1**2) / den
    s3 = (10.0 * rho * th2**2 * p2 + 10.0 * th2 * b * p1**2) / den
    lo, mid, hi, real = _t_window(params, p1, p2, ClassKind.STARLIKE_SUB)
    return Thresholds(s1, s2, s3, lo, mid, hi, real)


def thresholds_convex(params: ClassParams, p1: float, p2: float) -> Thresholds:
    """Printed quotients of the convex theorem; they equal the window edges."""
    _check_p1(p1)
    rho, b = params.rho, params.b
    br2, br3 = params.ctx.bracket(2), params.ctx.bracket(3)
    pref = 5.0 * br2**2 * rho / (9.0 * br3 * b * p1**2)
    s1 = pref * (p2 - p1 + b * p1**2 / rho)
    s2 = pref * (p1 + p2 + b * p1**2 / rho)
    s3 = pref * (p2 + b * p1**2 / rho)
    lo, mid, hi, real = _t_window(params, p1, p2, ClassKind.CONVEX_SUB)
    return Thresholds(s1, s2, s3, lo, mid, hi, real)


def _fs_bound(params, p1, p2, mu, kind) -> PiecewiseBound:
    P = prefactor(params, p1, kind)
    t = engine_t(params, p1, p2, mu, kind)
    _, _, _, real_params = _t_window(params, p1, p2, kind)
    mu = complex(mu)
    if real_params and abs(mu.imag) < REAL_REGIME_TOL:
        tr = t.real
        if tr < -1.0 - REGIME_SLACK:
            return PiecewiseBound(P * (-tr), "below", t)
        if tr > 1.0 + REGIME_SLACK:
            return PiecewiseBound(P * tr, "above", t)
        return PiecewiseBound(P, "middle", t)
    return PiecewiseBound(P * lemma_bound_complex(t), "complex-mu", t)


def fs_bound_starlike(params: ClassParams, p1: float, p2: float, mu: complex) -> PiecewiseBound:
    """Sharp |a3 - mu a2^2| bound for the starlike subordination class."""
    return _fs_bound(params, p1, p2, mu, ClassKind.STARLIKE_SUB)


def fs_bound_convex(params: ClassParams, p1: float, p2: float, mu: complex) -> PiecewiseBound:
    """Sharp |a3 - mu a2^2| bound for the convex subordination class."""
    return _fs_bound(params, p1, p2, mu, ClassKind.CONVEX_SUB)


def thresholds_and_bound_convex(
    params: ClassParams, p1: float, p2: float, mu: complex
) -> tuple[Thresholds, PiecewiseBound]:
    return thresholds_convex(params, p1, p2), fs_bound_convex(params, p1, p2, mu)


def _w1_per_a2_sq(params: ClassParams, p1: float, kind: ClassKind) -> float:
    # |w1|^2 = kappa |a2|^2 along the coefficient identities
    if kind.is_convex:
        br2 = params.ctx.bracket(2)
        return (abs(params.rho) * br2) ** 2 / (9.0 * abs(params.b) ** 2 * p1**2)
    return (abs(params.rho) * params.theta2) ** 2 / (9.0 * abs(params.b) ** 2 * p1**2)


def _fs_improved(params, p1, p2, mu, a2, a3, kind):
    P = prefactor(params, p1, kind)
    t = engine_t(params, p1, p2, mu, kind)
    if abs(t.imag) > REAL_REGIME_TOL:
        raise RegimeError(f"improvement requires real t, got {t}")
    tr = t.real
    if not (-1.0 - REGIME_SLACK <= tr <= 1.0 + REGIME_SLACK):
        raise RegimeError(f"mu places t = {tr} outside [-1, 1]")
    weight = (1.0 + tr) if tr <= 0.0 else (1.0 - tr)
    lhs = abs(a3 - mu * a2 * a2) + P * weight * _w1_per_a2_sq(params, p1, kind) * abs(a2) ** 2
    return lhs, P


def fs_improved_starlike(params, p1, p2, mu, a2, a3) -> tuple[float, float]:
    """(lhs, rhs) of the improved starlike inequality inside the middle window."""
    return _fs_improved(params, p1, p2, mu, a2, a3, ClassKind.STARLIKE_SUB)


def fs_improved_convex(params, p1, p2, mu, a2, a3) -> tuple[float, float]:
    """(lhs, rhs) of the improved convex inequality inside the middle window."""
    return _fs_improved(params, p1, p2, mu, a2, a3, ClassKind.CONVEX_SUB)


# ---------------------------------------------------------------------------
# quasi-subordination bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuasiBounds:
    a2_bound: float
    a3_bound: float
    fs_bound: float

    def to_json(self) -> dict:
        return {"a2": self.a2_bound, "a3": self.a3_bound, "fs": self.fs_bound}


def quasi_inner_coefficient(params: ClassParams, c1: float, mu: complex, kind: ClassKind) -> float:
    """c1 |B(mu)|: modulus of the mu-dependent coefficient inside the max.

    B is read from the engine derivation.  For the starlike kind it agrees
    with the printed display |(10(1-[2]q) + 9 mu b ([3]q-1)) / (10 rho
    (1-[2]q)^2)| b c1^2; for the convex kind the printed display disagrees
    beyond mu = 0 and is exposed separately.
    """
    rho, b = params.rho, params.b
    if kind is ClassKind.STARLIKE_QUASI:
        one_m_2q = -params.q
        B = b * c1 / (rho * one_m_2q) + 9.0 * mu * b**2 * c1 * params.theta3 / (
            10.0 * rho * one_m_2q**2
        )
    elif kind is ClassKind.CONVEX_QUASI:
        br2, br3 = params.ctx.bracket(2), params.ctx.bracket(3)
        B = (b * c1 / rho) * (1.0 - 9.0 * mu * br3 * b / (5.0 * br2**2))
    else:
        raise DomainError("quasi inner coefficient requires a quasi kind")
    return c1 * abs(B)


def printed_quasi_inner_convex(params: ClassParams, c1: float, mu: complex) -> float:
    """The convex quasi display as printed; reconciliation data only."""
    rho, b = params.rho, params.b
    br2 = params.ctx.bracket(2)
    return abs((rho**2 * br2**2 + 9.0 * mu * b) / (rho**2 * br2**2)) * abs(b) * c1**2


def quasi_bounds_starlike(params: ClassParams, c1: float, c2: float, mu: complex) -> QuasiBounds:
    """|a2|, |a3| and Fekete-Szego bounds of the starlike quasi class."""
    _check_p1(c1)
    ab, arho = abs(params.b), abs(params.rho)
    th2, th3 = params.theta2, params.theta3
    a2b = 3.0 * ab * c1 / (arho * th2)
    outer = 10.0 * ab / (arho * th3)
    a3b = outer * (c1 + max(c1, ab * c1**2 / (arho * th2) + abs(c2)))
    inner = quasi_inner_coefficient(params, c1, mu, ClassKind.STARLIKE_QUASI)
    fsb = outer * (c1 + max(c1, inner + abs(c2)))
    return QuasiBounds(a2b, a3b, fsb)


def quasi_bounds_convex(params: ClassParams, c1: float, c2: float, mu: complex) -> QuasiBounds:
    """|a2|, |a3| and Fekete-Szego bounds of the convex quasi class."""
    _check_p1(c1)
    ab, arho = abs(params.b), abs(params.rho)
    br2, br3 = params.ctx.bracket(2), params.ctx.bracket(3)
    a2b = 3.0 * ab * c1 / (arho * br2)
    outer = 5.0 * ab / (arho * br3)
    a3b = outer * (c1 + max(c1, ab * c1**2 / arho + abs(c2)))
    inner = quasi_inner_coefficient(params, c1, mu, ClassKind.CONVEX_QUASI)
    fsb = outer * (c1 + max(c1, inner + abs(c2)))
    return QuasiBounds(a2b, a3b, fsb)


# ---------------------------------------------------------------------------
# raw printed piecewise expressions (reconciliation only)
# ---------------------------------------------------------------------------


def printed_piecewise_raw(
    params: ClassParams, p1: float, p2: float, mu: complex, kind: ClassKind
) -> dict:
    """The signed branch expressions exactly as printed, no modulus applied.

    The convex theorem's third branch carries an overall minus sign in the
    source; callers flag wherever a signed expression goes negative where a
    bound is required.
    """
    rho, b = params.rho, params.b
    if kind.is_convex:
        br2, br3 = params.ctx.bracket(2), params.ctx.bracket(3)
        pref = 5.0 * b * p1 / (rho * br3)
        bracket = p2 / p1 + b * p1 / rho - 9.0 * mu * br3 * b * p1 / (5.0 * br2**2 * rho)
        return {"below": pref * bracket, "middle": pref, "above": -pref * bracket}
    th2, th3 = params.theta2, params.theta3
    pref = 10.0 * b * p1 / (rho * th3)
    below = pref * (p2 / p1 + (9.0 * mu * th3 - 10.0 * th2) * b * p1 / (10.0 * rho * th2**2))
    above = pref * (p2 / p1 + (10.0 * th2 - 9.0 * mu * th3) * b * p1 / (rho * th2))
    return {"below": below, "middle": pref, "above": above}
