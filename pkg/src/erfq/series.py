"""Truncated complex power series and the Jackson q-calculus operators.

A :class:`TruncatedSeries` holds the Taylor coefficients ``c0..cN`` of an
analytic function about the origin, truncated at a fixed ``order`` N.  All
arithmetic closes at that order: coefficients beyond N are discarded, never
invented, and binary operations between series of different orders truncate
to the smaller one.  Coefficients are double-precision complex throughout;
exact rational arithmetic is out of scope.

This module is the ground-truth engine the rest of the package checks its
closed forms against, so the operations here stay deliberately boring:
Cauchy products, order-by-order division, Horner composition, and the
q-derivative/q-integral pair

    D_q f(z) = (f(z) - f(qz)) / ((1 - q) z),        [n]_q = (1 - q^n)/(1 - q),

which reduce to the ordinary derivative/integral as q -> 1.

Everything is immutable after construction and every operation is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NearZeroConstantTerm, NonVanishingInner

#: Default working order.  The bounds only need coefficients through z^3;
#: twelve leaves ample guard room for composition and division.
DEFAULT_ORDER = 12

#: Division pivot: below this the order-by-order recursion is numerically
#: meaningless.
DIV_PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class QBracketContext:
    """Deformation parameter q, restricted to the open interval (0, 1)."""

    q: float

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise DomainError(f"q must lie strictly inside (0, 1), got {self.q}")

    def bracket(self, n: int) -> float:
        """The basic number [n]_q = (1 - q^n)/(1 - q); [0]_q = 0, [1]_q = 1."""
        if n < 0:
            raise DomainError(f"q-bracket needs n >= 0, got {n}")
        return (1.0 - self.q**n) / (1.0 - self.q)


def q_bracket(ctx: QBracketContext, n: int) -> float:
    return ctx.bracket(n)


class TruncatedSeries:
    """Coefficients ``c[0] + c[1] z + ... + c[N] z^N`` with fixed order N."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[complex], order: int | None = None):
        c = np.asarray(coeffs, dtype=np.complex128).ravel()
        if order is not None:
            if order < 0:
                raise DomainError(f"order must be non-negative, got {order}")
            if len(c) > order + 1:
                c = c[: order + 1]
            elif len(c) < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - len(c), dtype=np.complex128)])
        elif len(c) == 0:
            c = np.zeros(1, dtype=np.complex128)
        c = np.array(c, dtype=np.complex128)
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    # -- basic structure ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of length order + 1."""
        return self._c

    def __getitem__(self, k: int) -> complex:
        """Coefficient of z^k; zero beyond the truncation order."""
        if k < 0:
            raise IndexError("negative coefficient index")
        if k > self.order:
            return 0.0 + 0.0j
        return complex(self._c[k])

    def __len__(self) -> int:
        return len(self._c)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._c, order=order)

    def __repr__(self) -> str:
        return f"TruncatedSeries({np.array2string(self._c, separator=', ')})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(self._c[: n + 1] + other._c[: n + 1])
        c = np.array(self._c)
        c[0] += other
        return TruncatedSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self._c / complex(other))

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TruncatedSeries":
        """Ordinary derivative; order drops by one."""
        if self.order == 0:
            return TruncatedSeries([0.0])
        k = np.arange(1, self.order + 1)
        return TruncatedSeries(self._c[1:] * k)

    def shift_up(self, m: int = 1) -> "TruncatedSeries":
        """Multiply by z^m, keeping order + m."""
        return TruncatedSeries(np.concatenate([np.zeros(m, dtype=np.complex128), self._c]))

    def shift_down(self, m: int = 1) -> "TruncatedSeries":
        """Divide by z^m; requires the low coefficients to vanish."""
        if np.max(np.abs(self._c[:m]), initial=0.0) > 1e-13:
            raise DomainError("cannot deflate: low-order coefficients are nonzero")
        return TruncatedSeries(self._c[m:])

    def eval(self, z: complex) -> complex:
        """Horner evaluation; meaningful for |z| < 1 (documented, not enforced)."""
        acc = 0.0 + 0.0j
        for ck in self._c[::-1]:
            acc = acc * z + ck
        return complex(acc)

    def eval_many(self, z: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(z, dtype=np.complex128)
        for ck in self._c[::-1]:
            acc = acc * z + ck
        return acc

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "re": [float(x) for x in self._c.real],
            "im": [float(x) for x in self._c.imag],
        }

    @staticmethod
    def from_json(doc: dict) -> "TruncatedSeries":
        c = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
        return TruncatedSeries(c, order=doc["order"])


def monomial(m: int, order: int = DEFAULT_ORDER, coeff: complex = 1.0) -> TruncatedSeries:
    """The series coeff * z^m at the given order."""
    c = np.zeros(order + 1, dtype=np.complex128)
    if m <= order:
        c[m] = coeff
    return TruncatedSeries(c)


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The series z."""
    return monomial(1, order)


def one(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return monomial(0, order)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    full = np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])
    return TruncatedSeries(full[: n + 1])


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Order-by-order division a/b; requires |b[0]| above the pivot tolerance."""
    if abs(b[0]) < DIV_PIVOT_TOL:
        raise NearZeroConstantTerm(
            f"division pivot |b[0]| = {abs(b[0]):.3e} below {DIV_PIVOT_TOL:.0e}"
        )
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = np.zeros(n + 1, dtype=np.complex128)
    for m in range(n + 1):
        acc = ac[m]
        for j in range(m):
            acc -= out[j] * bc[m - j]
        out[m] = acc / bc[0]
    return TruncatedSeries(out)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Taylor coefficients of outer(inner(z)).

    The inner series must vanish at the origin, which makes the order-k
    output coefficient depend only on inner coefficients up to index k.
    """
    if abs(inner[0]) != 0.0:
        raise NonVanishingInner(f"inner series has constant term {inner[0]!r}")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = TruncatedSeries([outer[n]], order=n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, inner) + outer[k]
    return acc


def hadamard(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise (convolution) product, no rescaling of any index."""
    n = min(a.order, b.order)
    return TruncatedSeries(a.coeffs[: n + 1] * b.coeffs[: n + 1])


def q_derivative(a: TruncatedSeries, ctx: QBracketContext) -> TruncatedSeries:
    """Jackson q-derivative: coefficient k of the result is [k+1]_q a_{k+1}.

    The order drops by one, mirroring the ordinary derivative.
    """
    if a.order == 0:
        return TruncatedSeries([0.0])
    brackets = np.array([ctx.bracket(k + 1) for k in range(a.order)])
    return TruncatedSeries(a.coeffs[1:] * brackets)


def q_integral(a: TruncatedSeries, ctx: QBracketContext) -> TruncatedSeries:
    """Jackson q-integral: z^m integrates to z^{m+1}/[m+1]_q."""
    brackets = np.array([ctx.bracket(m + 1) for m in range(a.order + 1)])
    return TruncatedSeries(
        np.concatenate([[0.0], a.coeffs / brackets]).astype(np.complex128)
    )


def coefficients_via_cauchy(
    f: Callable[[np.ndarray], np.ndarray],
    order: int,
    radius: float = 0.5,
    samples: int | None = None,
) -> TruncatedSeries:
    """Taylor coefficients by a discrete Cauchy integral on |z| = radius.

    ``f`` is evaluated on ``samples`` equispaced points of the circle and the
    coefficients come out of the inverse DFT, c_k ~ DFT_k / (M r^k).  Accuracy
    is the caller's responsibility through the choice of radius and sample
    count; aliasing is bounded by the tail of f at that radius.
    """
    if not (0.0 < radius < 1.0):
        raise DomainError(f"extraction radius must lie in (0, 1), got {radius}")
    m = samples if samples is not None else max(256, 4 * (order + 1))
    if m < 4 * (order + 1):
        raise DomainError(f"need at least {4 * (order + 1)} samples, got {m}")
    nodes = radius * np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.asarray(f(nodes), dtype=np.complex128)
    dft = np.fft.fft(vals) / m
    k = np.arange(order + 1)
    return TruncatedSeries(dft[: order + 1] / radius**k)
