"""Dense univariate polynomials over Q(i).

Each polynomial carries a variable tag ("r" for the independent variable,
"n" for recurrence indices); mixing tags in arithmetic is an error.
Coefficients are stored from degree 0 upward with no trailing zeros, so
the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussianRational, ZERO, ONE


def _coeff(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class Poly:
    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs=(), var="r"):
        cs = [_coeff(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var="r"):
        return cls((), var)

    @classmethod
    def one(cls, var="r"):
        return cls((1,), var)

    @classmethod
    def const(cls, c, var="r"):
        return cls((c,), var)

    @classmethod
    def x(cls, var="r"):
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, k: int, c=1, var="r"):
        return cls((0,) * k + (c,), var)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def _wrap(self, other):
        if isinstance(other, Poly):
            if other.var != self.var and other.coeffs and self.coeffs:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Poly((other,), self.var)
        return None

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.var)

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            (self.coeff(k) + other.coeff(k) for k in range(n)), self.var
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [ZERO] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        inv_lc = other.lc().inverse()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            c = rem[-1] * inv_lc
            q[k] = c
            for j in range(d + 1):
                rem[k + j] = rem[k + j] - c * other.coeffs[j]
            while rem and rem[-1].is_zero:
                rem.pop()
        return Poly(q, self.var), Poly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return (other % self).is_zero

    def monic(self):
        if self.is_zero or self.lc() == ONE:
            return self
        inv = self.lc().inverse()
        return Poly(tuple(c * inv for c in self.coeffs), self.var)

    def derivative(self):
        return Poly(
            (self.coeffs[k] * k for k in range(1, len(self.coeffs))), self.var
        )

    def eval(self, point) -> GaussianRational:
        point = _coeff(point)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift(self, rho) -> "Poly":
        """p(x + rho), computed by repeated synthetic division (exact)."""
        rho = _coeff(rho)
        if rho.is_zero or self.is_zero:
            return self
        work = list(self.coeffs)
        out = []
        while work:
            # divide work by (x - rho); remainder is the next Taylor coeff
            rem = work[-1]
            quot = [ZERO] * (len(work) - 1)
            for k in range(len(work) - 2, -1, -1):
                quot[k] = rem
                rem = work[k] + rho * rem
            out.append(rem)
            work = quot
        return Poly(out, self.var)

    def times_x_power(self, k: int) -> "Poly":
        if self.is_zero:
            return self
        return Poly((ZERO,) * k + self.coeffs, self.var)

    def trailing_zero_count(self) -> int:
        """Multiplicity of the root 0 (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        return 0

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
                continue
            xk = self.var if k == 1 else f"{self.var}^{k}"
            if cs == "1":
                parts.append(xk)
            elif cs == "-1":
                parts.append(f"-{xk}")
            elif c.is_real and "/" not in cs:
                parts.append(f"{cs}{xk}")
            else:
                parts.append(f"({cs}){xk}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if a.var != b.var and a.coeffs and b.coeffs:
        raise ValueError(f"variable mismatch: {a.var} vs {b.var}")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.var)
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()
