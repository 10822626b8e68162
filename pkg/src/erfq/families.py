"""Normalized error-function series and the admissible-function families.

Three ingredients feed the coefficient engine:

* the odd error-function series and its normalized cousin
      z + sum_{n>=2} (-1)^(n-1) z^n / ((2n-1)(n-1)!),
  together with the coefficientwise (Hadamard) weighting that carries a
  normalized f into the associated family and back;

* Schwarz functions w (w(0) = 0, |w| < 1 on the disk), described by small
  parametric specs: monomials z^n, the two Mobius families z(l+z)/(1+lz)
  and its negative, finite Blaschke products of degree <= 3, and explicit
  truncated series.  Rotations are stored as a pair (theta, theta'), acting
  as e^{i theta} w(e^{-i theta'} z), so extremal rotation families stay
  first-class and enumerable;

* scale functions phi with |phi| <= 1 but no vanishing condition at 0,
  used by quasi-subordination.

The seeded sampler is the only stateful object here; everything else is
pure construction and evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidSpec, NotNormalized
from .series import DEFAULT_ORDER, TruncatedSeries, div, hadamard, mul

#: Boundary-grid validation settings (maximum-modulus principle makes a fine
#: grid at radius 0.999 sufficient for the rational specs used here).
VALIDATION_RADIUS = 0.999
VALIDATION_GRID = 512
SPEC_GRID = 256
BOUNDARY_TOL = 1e-9

#: Sampled Blaschke zeros stay inside |a| <= 0.95 so series coefficients
#: remain well-conditioned at order 12.
ZERO_CAP = 0.95


def erf_series(order: int) -> TruncatedSeries:
    """Taylor series of erf: (2/sqrt(pi)) sum (-1)^n z^(2n+1) / ((2n+1) n!)."""
    c = np.zeros(order + 1, dtype=np.complex128)
    pref = 2.0 / math.sqrt(math.pi)
    n = 0
    while 2 * n + 1 <= order:
        c[2 * n + 1] = pref * (-1) ** n / ((2 * n + 1) * math.factorial(n))
        n += 1
    return TruncatedSeries(c)


def normalized_erf_coefficient(n: int) -> float:
    """Coefficient of z^n in the normalized series: (-1)^(n-1)/((2n-1)(n-1)!)."""
    if n < 1:
        return 0.0
    return (-1) ** (n - 1) / ((2 * n - 1) * math.factorial(n - 1))


def normalized_erf_series(order: int) -> TruncatedSeries:
    """z + sum_{n>=2} (-1)^(n-1) z^n / ((2n-1)(n-1)!)."""
    c = np.zeros(order + 1, dtype=np.complex128)
    for n in range(1, order + 1):
        c[n] = normalized_erf_coefficient(n)
    return TruncatedSeries(c)


def to_family_E(f: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise weighting of a normalized f into the associated family.

    Requires f(0) = 0 and f'(0) = 1; coefficient n of the result equals
    (-1)^(n-1) a_n / ((2n-1)(n-1)!).
    """
    if abs(f[0]) > 1e-14 or abs(f[1] - 1.0) > 1e-14:
        raise NotNormalized(f"need c0 = 0 and c1 = 1, got c0={f[0]!r}, c1={f[1]!r}")
    return hadamard(f, normalized_erf_series(f.order))


def from_family_E(F: TruncatedSeries) -> TruncatedSeries:
    """Exact coefficientwise inverse of :func:`to_family_E`."""
    if abs(F[1] - 1.0) > 1e-12:
        raise NotNormalized(f"need c1 = 1, got {F[1]!r}")
    weights = np.array(
        [1.0] + [1.0 / normalized_erf_coefficient(n) for n in range(1, F.order + 1)]
    )
    return TruncatedSeries(F.coeffs * weights)


# ---------------------------------------------------------------------------
# Schwarz functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchwarzSpec:
    """Parametric description of an admissible inner function.

    variant is one of "monomial", "mobius_plus", "mobius_minus", "blaschke",
    "explicit".  The rotation pair acts as e^{i theta} w(e^{-i theta'} z).
    """

    variant: str
    n: int = 1
    lam: float = 0.0
    zeros: tuple = ()
    theta: float = 0.0
    theta_prime: float = 0.0
    series: TruncatedSeries | None = None

    def __post_init__(self):
        if self.variant == "monomial":
            if self.n < 1:
                raise InvalidSpec("monomial degree must be >= 1")
        elif self.variant in ("mobius_plus", "mobius_minus"):
            if not (0.0 <= self.lam <= 1.0):
                raise InvalidSpec(f"lambda must lie in [0, 1], got {self.lam}")
        elif self.variant == "blaschke":
            if len(self.zeros) > 2:
                raise InvalidSpec("blaschke degree is capped at 3 (z times <= 2 factors)")
            if any(abs(a) > ZERO_CAP for a in self.zeros):
                raise InvalidSpec(f"blaschke zeros must satisfy |a| <= {ZERO_CAP}")
        elif self.variant == "explicit":
            if self.series is None:
                raise InvalidSpec("explicit variant needs a series")
            if abs(self.series[0]) > 1e-14:
                raise InvalidSpec("Schwarz series must vanish at the origin")
        else:
            raise InvalidSpec(f"unknown Schwarz variant {self.variant!r}")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def monomial(n: int, theta: float = 0.0, theta_prime: float = 0.0) -> "SchwarzSpec":
        return SchwarzSpec("monomial", n=n, theta=theta, theta_prime=theta_prime)

    @staticmethod
    def mobius_plus(lam: float, theta: float = 0.0, theta_prime: float = 0.0) -> "SchwarzSpec":
        return SchwarzSpec("mobius_plus", lam=lam, theta=theta, theta_prime=theta_prime)

    @staticmethod
    def mobius_minus(lam: float, theta: float = 0.0, theta_prime: float = 0.0) -> "SchwarzSpec":
        return SchwarzSpec("mobius_minus", lam=lam, theta=theta, theta_prime=theta_prime)

    @staticmethod
    def blaschke(zeros: Sequence[complex], theta: float = 0.0, theta_prime: float = 0.0) -> "SchwarzSpec":
        return SchwarzSpec("blaschke", zeros=tuple(complex(a) for a in zeros), theta=theta, theta_prime=theta_prime)

    @staticmethod
    def explicit(series: TruncatedSeries) -> "SchwarzSpec":
        return SchwarzSpec("explicit", series=series)

    # -- evaluation ------------------------------------------------------------

    def eval(self, z):
        """Exact pointwise value (vectorized over numpy arrays)."""
        zz = np.asarray(z, dtype=np.complex128) * np.exp(-1j * self.theta_prime)
        if self.variant == "monomial":
            base = zz**self.n
        elif self.variant == "mobius_plus":
            base = zz * (self.lam + zz) / (1.0 + self.lam * zz)
        elif self.variant == "mobius_minus":
            base = -zz * (self.lam + zz) / (1.0 + self.lam * zz)
        elif self.variant == "blaschke":
            base = np.array(zz, dtype=np.complex128)
            for a in self.zeros:
                base = base * (zz - a) / (1.0 - np.conj(a) * zz)
        else:
            base = self.series.eval_many(np.atleast_1d(zz))
            if np.isscalar(z) or np.ndim(z) == 0:
                base = base[0]
        out = np.exp(1j * self.theta) * base
        return complex(out) if (np.isscalar(z) or np.ndim(z) == 0) else out

    def boundary_sup(self, grid: int = SPEC_GRID, radius: float = VALIDATION_RADIUS) -> float:
        z = radius * np.exp(2j * np.pi * np.arange(grid) / grid)
        return float(np.max(np.abs(self.eval(z))))

    def to_json(self) -> dict:
        doc = {
            "variant": self.variant,
            "theta": self.theta,
            "theta_prime": self.theta_prime,
        }
        if self.variant == "monomial":
            doc["params"] = [self.n]
        elif self.variant in ("mobius_plus", "mobius_minus"):
            doc["params"] = [self.lam]
        elif self.variant == "blaschke":
            doc["params"] = [[a.real, a.imag] for a in self.zeros]
        else:
            doc["params"] = self.series.to_json()
        return doc


def schwarz_series(spec: SchwarzSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor series of the spec to the requested order."""
    if spec.variant == "explicit":
        base = spec.series.truncate(order)
    elif spec.variant == "monomial":
        c = np.zeros(order + 1, dtype=np.complex128)
        if spec.n <= order:
            c[spec.n] = 1.0
        base = TruncatedSeries(c)
    elif spec.variant in ("mobius_plus", "mobius_minus"):
        num = TruncatedSeries([spec.lam, 1.0], order=order)
        den = TruncatedSeries([1.0, spec.lam], order=order)
        base = div(num, den).shift_up(1).truncate(order)
        if spec.variant == "mobius_minus":
            base = -base
    else:
        base = TruncatedSeries([0.0, 1.0], order=order)
        for a in spec.zeros:
            num = TruncatedSeries([-a, 1.0], order=order)
            den = TruncatedSeries([1.0, -np.conj(a)], order=order)
            base = mul(base, div(num, den))
    # apply the rotation pair e^{i theta} w(e^{-i theta'} z)
    k = np.arange(order + 1)
    phase = np.exp(1j * (spec.theta - k * spec.theta_prime))
    return TruncatedSeries(base.coeffs * phase)


def validate_schwarz(series: TruncatedSeries) -> bool:
    """c0 = 0 and grid-sup of the series at radius 0.999 within 1 + 1e-9.

    Note the truncation caveat: the series is evaluated as the polynomial it
    is, so specs should be expanded to an order where their tail is below the
    boundary margin before validation (>= 24 is enough for the Mobius and
    capped Blaschke families).
    """
    if abs(series[0]) > 1e-12:
        return False
    z = VALIDATION_RADIUS * np.exp(2j * np.pi * np.arange(VALIDATION_GRID) / VALIDATION_GRID)
    return float(np.max(np.abs(series.eval_many(z)))) <= 1.0 + BOUNDARY_TOL


def sample_schwarz(rng: np.random.Generator) -> SchwarzSpec:
    """Random Blaschke spec of degree <= 3; valid by construction."""
    degree = int(rng.integers(1, 4))
    zeros = []
    for _ in range(degree - 1):
        r = ZERO_CAP * math.sqrt(rng.uniform())
        ang = rng.uniform(0.0, 2.0 * math.pi)
        zeros.append(r * np.exp(1j * ang))
    theta = rng.uniform(0.0, 2.0 * math.pi)
    theta_prime = rng.uniform(0.0, 2.0 * math.pi)
    return SchwarzSpec.blaschke(zeros, theta=theta, theta_prime=theta_prime)


def sample_schwarz_batch(rng: np.random.Generator, count: int):
    """Vectorized sampler: zero/rotation arrays for the hot kernels.

    Returns (zeros[count, 2], n_extra[count], theta[count], theta_prime[count]);
    unused zero slots are zero-filled and masked by n_extra.  Draws match
    :func:`sample_schwarz` in distribution (but not in stream position).
    """
    n_extra = rng.integers(0, 3, size=count)
    r = ZERO_CAP * np.sqrt(rng.uniform(size=(count, 2)))
    ang = rng.uniform(0.0, 2.0 * math.pi, size=(count, 2))
    zeros = r * np.exp(1j * ang)
    zeros[np.arange(2) >= n_extra[:, None]] = 0.0
    theta = rng.uniform(0.0, 2.0 * math.pi, size=count)
    theta_prime = rng.uniform(0.0, 2.0 * math.pi, size=count)
    return zeros, n_extra, theta, theta_prime


def spec_from_batch(zeros_row, n_extra, theta, theta_prime) -> SchwarzSpec:
    return SchwarzSpec.blaschke(
        tuple(zeros_row[:n_extra]), theta=float(theta), theta_prime=float(theta_prime)
    )


# ---------------------------------------------------------------------------
# Scale functions phi (quasi-subordination)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiSpec:
    """Scale function with |phi| <= 1 on the disk; phi(0) need not vanish.

    variant "constant": phi = d0 with |d0| <= 1.
    variant "mobius": phi(z) = e^{i psi} (a + z)/(1 + conj(a) z), |a| < 1.
    variant "explicit": a truncated series checked by the caller.
    """

    variant: str
    d0: complex = 1.0
    psi: float = 0.0
    series: TruncatedSeries | None = None

    def __post_init__(self):
        if self.variant == "constant":
            if abs(self.d0) > 1.0 + 1e-12:
                raise InvalidSpec(f"|d0| must be <= 1, got {abs(self.d0)}")
        elif self.variant == "mobius":
            if abs(self.d0) >= 1.0:
                raise InvalidSpec(f"mobius parameter needs |a| < 1, got {abs(self.d0)}")
        elif self.variant == "explicit":
            if self.series is None:
                raise InvalidSpec("explicit variant needs a series")
        else:
            raise InvalidSpec(f"unknown phi variant {self.variant!r}")

    @staticmethod
    def constant(d0: complex) -> "PhiSpec":
        return PhiSpec("constant", d0=complex(d0))

    @staticmethod
    def mobius(a: complex, psi: float = 0.0) -> "PhiSpec":
        return PhiSpec("mobius", d0=complex(a), psi=psi)

    @staticmethod
    def explicit(series: TruncatedSeries) -> "PhiSpec":
        return PhiSpec("explicit", series=series)

    def eval(self, z):
        zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        if self.variant == "constant":
            out = np.full_like(zz, self.d0)
        elif self.variant == "mobius":
            out = np.exp(1j * self.psi) * (self.d0 + zz) / (1.0 + np.conj(self.d0) * zz)
        else:
            out = self.series.eval_many(zz)
        return complex(out[0]) if (np.isscalar(z) or np.ndim(z) == 0) else out

    def boundary_sup(self, grid: int = SPEC_GRID, radius: float = VALIDATION_RADIUS) -> float:
        z = radius * np.exp(2j * np.pi * np.arange(grid) / grid)
        return float(np.max(np.abs(self.eval(z))))

    def to_json(self) -> dict:
        doc = {"variant": self.variant}
        if self.variant == "constant":
            doc["params"] = [self.d0.real, self.d0.imag]
        elif self.variant == "mobius":
            doc["params"] = [self.d0.real, self.d0.imag, self.psi]
        else:
            doc["params"] = self.series.to_json()
        return doc


def phi_series(spec: PhiSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    if spec.variant == "constant":
        return TruncatedSeries([spec.d0], order=order)
    if spec.variant == "mobius":
        num = TruncatedSeries([spec.d0, 1.0], order=order)
        den = TruncatedSeries([1.0, np.conj(spec.d0)], order=order)
        return div(num, den) * np.exp(1j * spec.psi)
    return spec.series.truncate(order)


def validate_phi(series: TruncatedSeries) -> bool:
    """Grid-sup of the series at radius 0.999 within 1 + 1e-9 (no c0 condition)."""
    z = VALIDATION_RADIUS * np.exp(2j * np.pi * np.arange(VALIDATION_GRID) / VALIDATION_GRID)
    return float(np.max(np.abs(series.eval_many(z)))) <= 1.0 + BOUNDARY_TOL


def sample_phi(rng: np.random.Generator) -> PhiSpec:
    """Random scale spec: a constant in the closed disk or a rotated automorphism."""
    if rng.uniform() < 0.5:
        r = math.sqrt(rng.uniform())
        ang = rng.uniform(0.0, 2.0 * math.pi)
        return PhiSpec.constant(r * np.exp(1j * ang))
    r = ZERO_CAP * math.sqrt(rng.uniform())
    ang = rng.uniform(0.0, 2.0 * math.pi)
    psi = rng.uniform(0.0, 2.0 * math.pi)
    return PhiSpec.mobius(r * np.exp(1j * ang), psi=psi)


def sample_phi_batch(rng: np.random.Generator, count: int):
    """Vectorized phi sampler: (d0[count], d1[count]) plus spec-rebuild data."""
    is_const = rng.uniform(size=count) < 0.5
    r = np.sqrt(rng.uniform(size=count))
    ang = rng.uniform(0.0, 2.0 * math.pi, size=count)
    psi = rng.uniform(0.0, 2.0 * math.pi, size=count)
    a = r * np.exp(1j * ang)
    a_mob = ZERO_CAP * a
    d0 = np.where(is_const, a, np.exp(1j * psi) * a_mob)
    d1 = np.where(is_const, 0.0 + 0.0j, np.exp(1j * psi) * (1.0 - np.abs(a_mob) ** 2))
    return d0, d1, is_const, a, a_mob, psi


def phi_from_batch(is_const, a, a_mob, psi) -> PhiSpec:
    if is_const:
        return PhiSpec.constant(complex(a))
    return PhiSpec.mobius(complex(a_mob), psi=float(psi))
