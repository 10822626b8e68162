"""Conic-domain mapping functions and the elliptic integrals behind them.

The domain with cone parameter k >= 0 and order 0 <= alpha < 1 is

    Omega_{k,alpha} = { u + iv : (u - alpha)^2 > k^2 (u - 1)^2 + k^2 v^2 },

a half-plane (k = 0), parabolic region (k = 1), hyperbolic region (0 < k < 1)
or ellipse interior (k > 1), always containing the point 1 and symmetric
about the real axis.  The mapping function of the unit disk onto the
component of 1 has four closed-form branches; the elliptic branch is driven
by the Legendre integral of the first kind

    K(w, t) = int_0^w dx / (sqrt(1 - x^2) sqrt(1 - t^2 x^2)),
    kappa(t) = K(1, t),

with the modulus t in (0, 1) tied to k through
k = cosh(pi kappa'(t) / (4 kappa(t))), kappa'(t) = kappa(sqrt(1 - t^2)).

Numerical notes.  The complete integral uses the arithmetic-geometric mean,
kappa(t) = pi / (2 agm(1, t')) with t' = sqrt(1 - t^2).  The modulus solver
bisects on log t' because for k near 1 the root satisfies 1 - t < 1 ulp while
t' stays comfortably representable.  The elliptic branch is evaluated through
mpmath's incomplete Legendre F (complex amplitude) at elevated precision:
near k = 1 the disk automorphism inside the map cancels to ~t'^2 ~ 1e-23 and
plain doubles lose everything.  Principal square roots and logarithms are
used throughout, which keeps every branch real on (0, 1); the k-between-0-
and-1 branch switches to a cosh reformulation on the positive real axis to
avoid cancellation in cos of an imaginary argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import BracketingFailure, BranchPointProximity, DomainError, ImaginaryResidue
from .series import TruncatedSeries, coefficients_via_cauchy

#: Taylor extraction settings: every branch is analytic on the closed disk of
#: radius 0.5, where aliasing with 256 samples is far below coefficient size.
EXTRACTION_RADIUS = 0.5
EXTRACTION_SAMPLES = 256

#: Tolerances of the modulus solver and coefficient realness check.
MODULUS_RESIDUAL_TOL = 1e-9
IMAG_DISCARD_TOL = 1e-9

_BRANCH_CLEARANCE = 1e-6


def elliptic_K_complete(t: float) -> float:
    """kappa(t) = int_0^1 dx / sqrt((1-x^2)(1-t^2 x^2)) via the AGM."""
    if not (0.0 < t < 1.0):
        raise DomainError(f"modulus must lie in (0, 1), got {t}")
    return _K_from_comodulus(math.sqrt((1.0 - t) * (1.0 + t)))


def _K_from_comodulus(t_prime: float) -> float:
    # kappa(t) = pi / (2 agm(1, t')); quadratic convergence, and the final
    # iterates may oscillate one ulp apart, hence the bounded loop
    a, b = 1.0, t_prime
    for _ in range(64):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def elliptic_K_incomplete(omega: complex, t: float) -> complex:
    """Path integral of the Legendre integrand along the segment [0, omega].

    Principal square-root branches are taken factor by factor; for points of
    the segment inside the unit disk this coincides with the analytic
    continuation from 0.  The segment must stay clear of the branch points
    +-1 and +-1/t.
    """
    if not (0.0 < t < 1.0):
        raise DomainError(f"modulus must lie in (0, 1), got {t}")
    omega = complex(omega)
    if omega == 0:
        return 0.0 + 0.0j
    for bp in (1.0, -1.0, 1.0 / t, -1.0 / t):
        if _segment_distance(omega, bp) < _BRANCH_CLEARANCE:
            raise BranchPointProximity(
                f"segment [0, {omega}] passes within {_BRANCH_CLEARANCE:g} of {bp}"
            )

    def integrand(s: np.ndarray) -> np.ndarray:
        x = s * omega
        return omega / (np.sqrt(1.0 - x * x) * np.sqrt(1.0 - (t * x) * (t * x)))

    return _adaptive_gl(integrand, 0.0, 1.0, 1e-13)


def _segment_distance(omega: complex, p: float) -> float:
    # distance from the real point p to the segment [0, omega]
    w = complex(omega)
    denom = abs(w) ** 2
    if denom == 0.0:
        return abs(p)
    s = max(0.0, min(1.0, (p * w.real) / denom))
    return abs(s * w - p)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_MAX_PANELS = 20_000


def _adaptive_gl(f, a: float, b: float, tol: float) -> complex:
    budget = [_MAX_PANELS]

    def recurse(a, b, tol, depth):
        mid = 0.5 * (a + b)
        whole = _gl_panel(f, a, b)
        left = _gl_panel(f, a, mid)
        right = _gl_panel(f, mid, b)
        budget[0] -= 3
        err = abs(left + right - whole)
        if err <= tol or depth >= 22 or budget[0] <= 0:
            return left + right
        return recurse(a, mid, 0.5 * tol, depth + 1) + recurse(mid, b, 0.5 * tol, depth + 1)

    return recurse(a, b, tol, 0)


def _gl_panel(f, a: float, b: float) -> complex:
    h = 0.5 * (b - a)
    x = a + h * (_GL_NODES + 1.0)
    return complex(h * np.sum(_GL_WEIGHTS * f(x)))


@dataclass(frozen=True)
class EllipticModulusSolution:
    """Root of k = cosh(pi kappa'(t)/(4 kappa(t))) with its residual in k.

    Both the modulus t and the complementary modulus t' = sqrt(1 - t^2) are
    kept: near k = 1 the root has 1 - t below one ulp while t' is fine.
    """

    t: float
    t_prime: float
    residual: float


def _k_of_comodulus(t_prime: float) -> float:
    kappa = _K_from_comodulus(t_prime)
    t = math.sqrt(max(0.0, (1.0 - t_prime) * (1.0 + t_prime)))
    kappa_p = _K_from_comodulus(t)
    return math.cosh(math.pi * kappa_p / (4.0 * kappa))


def solve_modulus_t(k: float) -> EllipticModulusSolution:
    """Invert the modulus relation for k > 1 by bisection on log t'.

    Monotonicity of t' -> cosh(pi kappa'/4 kappa) is not assumed blindly: a
    sign change over the bracket is required, and its absence is reported as
    a failure rather than guessed around.
    """
    if not (k > 1.0):
        raise DomainError(f"the elliptic branch needs k > 1, got {k}")
    lo, hi = math.log(1e-308), math.log(1.0 - 1e-16)
    f_lo = _k_of_comodulus(math.exp(lo)) - k
    f_hi = _k_of_comodulus(math.exp(hi)) - k
    if not (f_lo < 0.0 < f_hi) and not (f_hi < 0.0 < f_lo):
        raise BracketingFailure(
            f"no sign change bracketing the modulus for k = {k}: "
            f"f(lo) = {f_lo:.3e}, f(hi) = {f_hi:.3e}"
        )
    for _ in range(200):
        midlog = 0.5 * (lo + hi)
        fm = _k_of_comodulus(math.exp(midlog)) - k
        if (fm <= 0.0) == (f_lo <= 0.0):
            lo, f_lo = midlog, fm
        else:
            hi = midlog
    t_prime = math.exp(0.5 * (lo + hi))
    t = math.sqrt(max(0.0, (1.0 - t_prime) * (1.0 + t_prime)))
    residual = abs(_k_of_comodulus(t_prime) - k)
    if residual > MODULUS_RESIDUAL_TOL:
        raise BracketingFailure(f"modulus residual {residual:.3e} exceeds {MODULUS_RESIDUAL_TOL:g}")
    return EllipticModulusSolution(t=t, t_prime=t_prime, residual=residual)


@dataclass(frozen=True)
class ConicParams:
    """Cone parameter and order with their derived quantities precomputed.

    For 0 < k < 1 the derived A = (2/pi) arccos k enters the cosine branch;
    for k > 1 the elliptic modulus is solved once at construction so that
    repeated evaluation stays read-only and thread-safe.
    """

    k: float
    alpha: float
    A: float | None = None
    modulus: EllipticModulusSolution | None = None

    def __post_init__(self):
        if not (0.0 <= self.k < math.inf):
            raise DomainError(f"need 0 <= k < infinity, got {self.k}")
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"need 0 <= alpha < 1, got {self.alpha}")
        if 0.0 < self.k < 1.0 and self.A is None:
            object.__setattr__(self, "A", 2.0 / math.pi * math.acos(self.k))
        if self.k > 1.0 and self.modulus is None:
            object.__setattr__(self, "modulus", solve_modulus_t(self.k))

    def real_part_floor(self) -> float:
        return (self.k + self.alpha) / (self.k + 1.0)

    def to_json(self) -> dict:
        doc = {"k": self.k, "alpha": self.alpha, "A": self.A}
        doc["t"] = self.modulus.t if self.modulus else None
        return doc


def in_conic_domain(w: complex, k: float, alpha: float) -> bool:
    """Literal inequality test (u - alpha)^2 > k^2 (u - 1)^2 + k^2 v^2."""
    u, v = w.real, w.imag
    return (u - alpha) ** 2 > k * k * ((u - 1.0) ** 2 + v * v)


def _artanh_sqrt_log(z: np.ndarray) -> np.ndarray:
    # log((1 + sqrt z)/(1 - sqrt z)) with the principal square root
    s = np.sqrt(z.astype(np.complex128))
    return np.log((1.0 + s) / (1.0 - s))


def eval_pk(params: ConicParams, z) -> complex | np.ndarray:
    """Value of the conic mapping function; p(0) = 1 in every branch."""
    scalar = np.isscalar(z) or np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if np.any(np.abs(zz) >= 1.0):
        raise DomainError("the mapping function is only evaluated for |z| < 1")
    k, alpha = params.k, params.alpha

    if k == 0.0:
        out = (1.0 + (1.0 - 2.0 * alpha) * zz) / (1.0 - zz)
    elif k == 1.0:
        L = _artanh_sqrt_log(zz)
        out = 1.0 + 2.0 * (1.0 - alpha) / math.pi**2 * L * L
    elif k < 1.0:
        L = _artanh_sqrt_log(zz)
        # cos(A i L) = cosh(A L); on the positive real axis L is real and the
        # cosh form avoids cancellation, off-axis complex cosh is used as is
        body = np.cosh(params.A * L)
        out = (1.0 - alpha) / (1.0 - k * k) * body - (k * k - alpha) / (1.0 - k * k)
    else:
        out = np.array([_eval_elliptic_branch(params, complex(w)) for w in zz])
    return complex(out[0]) if scalar else out


def _mp_dps_for(t_prime: float) -> int:
    # cancellation in the inner automorphism scales like t'^2
    if t_prime > 1e-3:
        return 25
    return 25 + int(2.2 * abs(math.log10(t_prime)))


def _eval_elliptic_branch(params: ConicParams, z: complex) -> complex:
    """Ellipse branch via sin of the incomplete Legendre integral.

    The inner disk automorphism u(z) = (z - sqrt t)/(1 - z sqrt t) places
    z = 0 on the branch point -1 of the integrand, where sin of the
    quarter-period turns the square-root behavior analytic and pins
    p(0) = 1 exactly.
    """
    sol = params.modulus
    k, alpha = params.k, params.alpha
    with mp.workdps(_mp_dps_for(sol.t_prime)):
        tp = mp.mpf(sol.t_prime)
        t = mp.sqrt((1 - tp) * (1 + tp))
        sq = mp.sqrt(t)
        kappa = mp.pi / (2 * mp.agm(1, tp))
        u = (z - sq) / (1 - sq * z)
        F = mp.ellipf(mp.asin(u / sq), t * t)
        s = mp.sin(mp.pi * F / (2 * kappa))
        val = (1 - alpha) * s / (k * k - 1) + (k * k - alpha) / (k * k - 1)
        return complex(val)


def pk_taylor(params: ConicParams, order: int) -> TruncatedSeries:
    """Taylor coefficients of the mapping function; provably real.

    k = 0 is closed form (1, then 2(1 - alpha) repeated); the other branches
    go through the discrete Cauchy integral at radius 0.5.  Imaginary residue
    beyond 1e-9 signals an evaluation bug and raises instead of being
    silently dropped.
    """
    if order < 2:
        raise DomainError(f"need order >= 2, got {order}")
    if params.k == 0.0:
        c = np.full(order + 1, 2.0 * (1.0 - params.alpha))
        c[0] = 1.0
        return TruncatedSeries(c)
    raw = _pk_taylor_cached(params.k, params.alpha, order)
    return TruncatedSeries(np.asarray(raw))


@lru_cache(maxsize=64)
def _pk_taylor_cached(k: float, alpha: float, order: int) -> tuple:
    params = ConicParams(k, alpha)
    series = coefficients_via_cauchy(
        lambda nodes: eval_pk(params, nodes),
        order,
        radius=EXTRACTION_RADIUS,
        samples=EXTRACTION_SAMPLES,
    )
    worst = float(np.max(np.abs(series.coeffs.imag)))
    if worst > IMAG_DISCARD_TOL:
        raise ImaginaryResidue(
            f"imaginary residue {worst:.3e} in the Taylor coefficients of p_({k},{alpha})"
        )
    return tuple(series.coeffs.real)


def pk_low_coefficients(params: ConicParams) -> tuple[float, float]:
    """(p1, p2) of the mapping function, the only inputs the bounds need."""
    s = pk_taylor(params, 4)
    return float(s[1].real), float(s[2].real)
