"""Exact Laurent data of rational functions at finite points and infinity.

At a finite point rho the valuation is the leading order (most negative
exponent with nonzero coefficient of (r-rho)); at infinity it is the
trailing order (largest exponent of r).  Zero functions get the sentinel
+inf (finite points) or -inf (infinity); sentinels are dedicated objects
from rode.orders, never large integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gaussian import GaussianRational, ZERO
from .orders import POS_INF, NEG_INF, is_finite
from .poly import Poly
from .ratfunc import RatFunc


@dataclass(frozen=True)
class ExpansionPoint:
    """A finite Gaussian-rational center, or the point at infinity."""

    rho: GaussianRational | None  # None means infinity

    @classmethod
    def finite(cls, rho) -> "ExpansionPoint":
        if not isinstance(rho, GaussianRational):
            rho = GaussianRational(rho)
        return cls(rho)

    @classmethod
    def infinity(cls) -> "ExpansionPoint":
        return cls(None)

    @property
    def is_infinity(self):
        return self.rho is None

    def __str__(self):
        return "inf" if self.is_infinity else str(self.rho)


ORIGIN = ExpansionPoint.finite(0)
INFINITY = ExpansionPoint.infinity()


@dataclass(frozen=True)
class LaurentExpansion:
    """A truncated exact Laurent expansion.

    ``coeffs`` starts at ``valuation`` and moves inward: increasing powers
    of (r-rho) at a finite point, decreasing powers of r at infinity.
    ``truncation_order`` is the first order NOT computed.  The expansion
    of the zero function has sentinel valuation and no coefficients.
    """

    point: ExpansionPoint
    valuation: object  # int or sentinel
    coeffs: tuple
    truncation_order: object


def root_multiplicity(p: Poly, rho) -> int:
    """Multiplicity of rho as a root of p (0 if not a root or p = 0)."""
    if p.is_zero:
        return 0
    return p.shift(rho).trailing_zero_count()


def valuation(f: RatFunc, point: ExpansionPoint):
    """Order of f at the point; sentinel for the zero function."""
    if f.is_zero:
        return NEG_INF if point.is_infinity else POS_INF
    if point.is_infinity:
        return f.num.degree - f.den.degree
    rho = point.rho
    return root_multiplicity(f.num, rho) - root_multiplicity(f.den, rho)


def _series_quotient(num, den, terms):
    """First ``terms`` coefficients of the power series num/den, where
    den[0] != 0."""
    inv0 = den[0].inverse()
    out = []
    for k in range(terms):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def expand(f: RatFunc, point: ExpansionPoint, terms: int) -> LaurentExpansion:
    """Exact first ``terms`` Laurent coefficients of f at the point."""
    if terms < 1:
        raise ValueError("need at least one term")
    if f.is_zero:
        v = NEG_INF if point.is_infinity else POS_INF
        return LaurentExpansion(point, v, (), v)
    if point.is_infinity:
        val = f.num.degree - f.den.degree
        # series in 1/r: reverse the coefficient lists
        nc = list(reversed(f.num.coeffs))
        dc = list(reversed(f.den.coeffs))
        coeffs = _series_quotient(nc, dc, terms)
        return LaurentExpansion(point, val, tuple(coeffs), val - terms)
    nsh = f.num.shift(point.rho)
    dsh = f.den.shift(point.rho)
    a = nsh.trailing_zero_count()
    b = dsh.trailing_zero_count()
    val = a - b
    nc = list(nsh.coeffs[a:])
    dc = list(dsh.coeffs[b:])
    coeffs = _series_quotient(nc, dc, terms)
    return LaurentExpansion(point, val, tuple(coeffs), val + terms)


def leading_coefficient(f: RatFunc, point: ExpansionPoint) -> GaussianRational:
    """Coefficient at the valuation; 0 for the zero function."""
    if f.is_zero:
        return ZERO
    return expand(f, point, 1).coeffs[0]


def vector_leading_order(vec, point: ExpansionPoint):
    """Per-component leading orders of a vector of rational functions at a
    finite point, the global minimum, and the coefficient vector at the
    global order (zero entries where a component's order is larger).
    """
    if point.is_infinity:
        raise ValueError("leading data is taken at finite points")
    return _vector_orders(vec, point, take=min, empty=POS_INF)


def vector_trailing_order(vec):
    """Trailing analogue at infinity: per-component trailing orders, the
    global maximum, and the trailing coefficient vector."""
    return _vector_orders(vec, INFINITY, take=max, empty=NEG_INF)


def _vector_orders(vec, point, take, empty):
    orders = [valuation(f, point) for f in vec]
    finite_orders = [o for o in orders if is_finite(o)]
    if not finite_orders:
        return orders, empty, [ZERO] * len(vec)
    glob = take(finite_orders)
    coeff = [
        leading_coefficient(f, point) if o == glob else ZERO
        for f, o in zip(vec, orders)
    ]
    return orders, glob, coeff
