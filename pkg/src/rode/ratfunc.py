"""Rational functions of r over Q(i), and matrices of them.

Canonical form is maintained by construction: numerator and denominator
are coprime, the denominator is monic and nonzero, and zero is 0/1.
Rational functions over a field form a field themselves, so matrix
inversion below is plain exact Gauss-Jordan elimination.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError
from .gaussian import GaussianRational
from .poly import Poly, poly_gcd, poly_lcm


def _as_ratfunc(value, var="r"):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc(value, Poly.one(value.var))
    if isinstance(value, (int, Fraction, GaussianRational)):
        return RatFunc(Poly((value,), var), Poly.one(var))
    return None


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly((num,)) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly.one(num.var)
        elif not isinstance(den, Poly):
            den = Poly((den,), num.var) if not isinstance(den, (list, tuple)) else Poly(den, num.var)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly.zero(num.var), Poly.one(num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc()
            if lc != 1:
                inv = lc.inverse()
                num = Poly(tuple(c * inv for c in num.coeffs), num.var)
                den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, var="r"):
        return cls(Poly.zero(var))

    @classmethod
    def one(cls, var="r"):
        return cls(Poly.one(var))

    @classmethod
    def const(cls, c, var="r"):
        return cls(Poly((c,), var))

    @classmethod
    def var_func(cls, var="r"):
        return cls(Poly.x(var))

    @classmethod
    def x_power(cls, k: int, var="r"):
        """r^k for any integer k (negative k gives 1/r^|k|)."""
        if k >= 0:
            return cls(Poly.monomial(k, 1, var))
        return cls(Poly.one(var), Poly.monomial(-k, 1, var))

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_one(self):
        return self.num.degree == 0 and self.den.degree == 0 and self.num.coeffs[0] == 1

    @property
    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def const_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfunc(other, self.num.var)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def derivative(self):
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, point) -> GaussianRational:
        d = self.den.eval(point)
        if d.is_zero:
            raise ZeroDivisionError(f"pole at {point}")
        return self.num.eval(point) / d

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        num = str(self.num)
        if "+" in num[1:] or "-" in num[1:]:
            num = f"({num})"
        den = str(self.den)
        if "+" in den[1:] or "-" in den[1:]:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self})"


class RatFuncMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = [
            [self._entry(e) for e in row] for row in entries
        ]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = width
        self.entries = tuple(tuple(row) for row in rows)

    @staticmethod
    def _entry(e):
        rf = _as_ratfunc(e)
        if rf is None:
            raise TypeError(f"cannot use {type(e).__name__} as a matrix entry")
        return rf

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_zero(self):
        return all(e.is_zero for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, RatFuncMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, fn):
        return RatFuncMatrix([[fn(e) for e in row] for row in self.entries])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __add__(self, other):
        if not isinstance(other, RatFuncMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix addition shape mismatch")
        return RatFuncMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = self._entry(factor)
        return self.map(lambda e: e * factor)

    def __mul__(self, other):
        if isinstance(other, RatFuncMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            return RatFuncMatrix(
                [
                    [
                        sum(
                            (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                            RatFunc.zero(),
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        return self.scale(other)

    __rmul__ = scale

    def matvec(self, vec):
        vec = [self._entry(v) for v in vec]
        if len(vec) != self.cols:
            raise DimensionMismatchError("matrix-vector length mismatch")
        return [
            sum((self.entries[i][k] * vec[k] for k in range(self.cols)), RatFunc.zero())
            for i in range(self.rows)
        ]

    def transpose(self):
        return RatFuncMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def derivative(self):
        return self.map(lambda e: e.derivative())

    def det(self) -> RatFunc:
        if not self.is_square:
            raise DimensionMismatchError("determinant of a non-square matrix")
        return _det(self.entries)

    def inverse(self) -> "RatFuncMatrix":
        """Exact inverse by Gauss-Jordan; raises NotSolvableError-ish
        ZeroDivisionError via caller checks when singular."""
        if not self.is_square:
            raise DimensionMismatchError("inverse of a non-square matrix")
        n = self.rows
        aug = [
            list(self.entries[i]) + [RatFunc.one() if i == j else RatFunc.zero() for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            pivot = next(
                (k for k in range(col, n) if not aug[k][col].is_zero), None
            )
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = RatFunc.one() / aug[col][col]
            aug[col] = [e * inv for e in aug[col]]
            for k in range(n):
                if k == col or aug[k][col].is_zero:
                    continue
                factor = aug[k][col]
                aug[k] = [a - factor * b for a, b in zip(aug[k], aug[col])]
        return RatFuncMatrix([row[n:] for row in aug])

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries
        ) + "]"

    def __repr__(self):
        return f"RatFuncMatrix({self})"


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = RatFunc.zero()
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [
            [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        term = rows[0][j] * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def common_denominator(funcs) -> Poly:
    """Monic lcm of the denominators of the given rational functions."""
    out = Poly.one()
    for f in funcs:
        out = poly_lcm(out, f.den)
    return out
