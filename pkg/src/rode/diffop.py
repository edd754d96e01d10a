"""Matrix linear differential operators in d/dr with rational coefficients.

An operator is stored as a list of coefficient matrices C_0..C_p acting on
the left of derivative powers: e = sum_k C_k(r) d^k/dr^k.  Composition
normalizes with the Leibniz rule d^k (B u) = sum_j binom(k,j) B^(k-j) u^(j),
keeping all coefficients on the left.  The zero operator has no coefficient
matrices and sentinel order -inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DimensionMismatchError, NotSolvableError
from .laurent import ExpansionPoint
from .orders import NEG_INF
from .poly import Poly
from .ratfunc import RatFunc, RatFuncMatrix


class DiffOp:
    __slots__ = ("rows", "cols", "coeffs")

    def __init__(self, rows: int, cols: int, coeffs=()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, RatFuncMatrix):
                raise TypeError("operator coefficients must be RatFuncMatrix")
            if (c.rows, c.cols) != (rows, cols):
                raise DimensionMismatchError("coefficient matrix shape mismatch")
        while cs and cs[-1].is_zero:
            cs.pop()
        self.rows = rows
        self.cols = cols
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [RatFuncMatrix.identity(n)])

    @classmethod
    def from_matrix(cls, m: RatFuncMatrix):
        return cls(m.rows, m.cols, [m])

    @classmethod
    def derivative_op(cls, n: int = 1, order: int = 1):
        """d^order/dr^order acting on n components."""
        zero = RatFuncMatrix.zero(n, n)
        return cls(n, n, [zero] * order + [RatFuncMatrix.identity(n)])

    @classmethod
    def scalar(cls, coeffs):
        """1x1 operator from a list of scalar coefficients (order 0 up)."""
        return cls(1, 1, [RatFuncMatrix([[c]]) for c in coeffs])

    @classmethod
    def block(cls, grid):
        """Assemble an operator from a 2D grid of block operators."""
        rows = sum(row[0].rows for row in grid)
        cols = sum(b.cols for b in grid[0])
        order = max(
            (b.order for row in grid for b in row if not b.is_zero), default=None
        )
        if order is None:
            return cls.zero(rows, cols)
        coeffs = []
        for k in range(order + 1):
            big = []
            for row in grid:
                height = row[0].rows
                strips = [b.coeff(k) for b in row]
                for i in range(height):
                    big.append(
                        [e for strip in strips for e in strip.entries[i]]
                    )
            coeffs.append(RatFuncMatrix(big))
        return cls(rows, cols, coeffs)

    # -- basics ----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def order(self):
        """Differential order; -inf sentinel for the zero operator."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, k: int) -> RatFuncMatrix:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFuncMatrix.zero(self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.coeffs))

    def __neg__(self):
        return DiffOp(self.rows, self.cols, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("operator addition shape mismatch")
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(
            self.rows, self.cols, [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    def __sub__(self, other):
        return self + (-other)

    def left_mul(self, m: RatFuncMatrix) -> "DiffOp":
        """Multiply by an r-dependent matrix from the left (order-0 action)."""
        if m.cols != self.rows:
            raise DimensionMismatchError("left multiplier shape mismatch")
        return DiffOp(m.rows, self.cols, [m * c for c in self.coeffs])

    def scale(self, f) -> "DiffOp":
        return DiffOp(self.rows, self.cols, [c.scale(f) for c in self.coeffs])

    # -- action and composition -------------------------------------------

    def apply(self, u) -> list[RatFunc]:
        """e[u] for a vector u of rational functions."""
        u = [v if isinstance(v, RatFunc) else RatFunc.const(v) for v in u]
        if len(u) != self.cols:
            raise DimensionMismatchError(
                f"operator of width {self.cols} applied to {len(u)} components"
            )
        out = [RatFunc.zero() for _ in range(self.rows)]
        deriv = list(u)
        for k, c in enumerate(self.coeffs):
            if k > 0:
                deriv = [v.derivative() for v in deriv]
            if c.is_zero:
                continue
            term = c.matvec(deriv)
            out = [a + b for a, b in zip(out, term)]
        return out

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self o other, so (self.compose(other))[u] = self[other[u]]."""
        if self.cols != other.rows:
            raise DimensionMismatchError("composition shape mismatch")
        if self.is_zero or other.is_zero:
            return DiffOp.zero(self.rows, other.cols)
        out = [
            RatFuncMatrix.zero(self.rows, other.cols)
            for _ in range(len(self.coeffs) + len(other.coeffs) - 1)
        ]
        for j, b in enumerate(other.coeffs):
            # successive derivatives of B_j, reused across k
            derivs = [b]
            for k, c in enumerate(self.coeffs):
                if c.is_zero:
                    continue
                while len(derivs) <= k:
                    derivs.append(derivs[-1].derivative())
                for m in range(k + 1):
                    term = c * derivs[k - m]
                    if comb(k, m) != 1:
                        term = term.scale(comb(k, m))
                    out[m + j] = out[m + j] + term
        return DiffOp(self.rows, other.cols, out)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            d = "" if k == 0 else (" d" if k == 1 else f" d^{k}")
            parts.append(f"{c}{d}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp({self})"


@dataclass(frozen=True)
class MonicForm:
    """P e = d^p + tail with an invertible rational matrix P and
    ord(tail) < p."""

    P: RatFuncMatrix
    tail: DiffOp
    order: int


def monic_normalize(e: DiffOp) -> MonicForm:
    """Solve the operator for its highest derivatives.

    Raises NotSolvableError when the leading coefficient matrix is
    singular (hypothesis failure: the system cannot be put in the form
    d^p u + tail[u]).
    """
    if e.is_zero or e.rows != e.cols:
        raise NotSolvableError("operator must be square and nonzero")
    p = e.order
    try:
        inv = e.coeffs[p].inverse()
    except ZeroDivisionError:
        raise NotSolvableError(
            "not solvable for highest derivatives: leading coefficient matrix is singular"
        ) from None
    normalized = e.left_mul(inv)
    tail = DiffOp(e.rows, e.cols, normalized.coeffs[:p])
    return MonicForm(inv, tail, p)


def right_divide(f: DiffOp, e: DiffOp):
    """Division with remainder from the right: f = g + q o e, ord(g) < ord(e).

    Rewrites the highest derivative block of f through d^p = P e - tail
    until the order drops below p; each step strictly lowers the top
    uncancelled order, so the loop terminates.  Requires e square of
    order >= 1 and solvable for its highest derivatives.
    """
    if f.cols != e.rows:
        raise DimensionMismatchError("dividend width must match divisor size")
    monic = monic_normalize(e)
    p = monic.order
    if p < 1:
        raise NotSolvableError("right division needs a divisor of order >= 1")
    p_op = DiffOp.from_matrix(monic.P)
    g = f
    q = DiffOp.zero(f.rows, e.rows)
    while not g.is_zero and g.order >= p:
        k = g.order - p
        top = g.coeff(g.order)
        shifted = DiffOp(
            f.rows, e.rows, [RatFuncMatrix.zero(f.rows, e.rows)] * k + [top]
        )
        step = shifted.compose(p_op)
        q = q + step
        g = g - step.compose(e)
    return g, q


@dataclass(frozen=True)
class PowerAction:
    """The action of an operator on S(r) c (r-rho)^n for constant vectors c.

    ``layers[m]`` is the rational matrix multiplying n^m, so the full
    symbol is M(r, n) = sum_m layers[m] n^m with
    e[S c (r-rho)^n] = M(r, n) c (r-rho)^n exactly for every integer n.
    At infinity the monomials are plain powers r^n.
    """

    point: ExpansionPoint
    rows: int
    cols: int
    layers: tuple

    def at_n(self, n: int) -> RatFuncMatrix:
        out = RatFuncMatrix.zero(self.rows, self.cols)
        power = 1
        for layer in self.layers:
            if power != 1:
                out = out + layer.scale(power)
            else:
                out = out + layer
            power *= n
        return out

    def entry_npoly_coeffs(self, i: int, j: int) -> list[RatFunc]:
        return [layer[i, j] for layer in self.layers]


def _falling_factorial_polys(max_j: int):
    """Coefficient lists (in n) of n(n-1)...(n-j+1) for j = 0..max_j."""
    polys = [Poly.one("n")]
    n_var = Poly.x("n")
    for j in range(1, max_j + 1):
        polys.append(polys[-1] * (n_var - (j - 1)))
    return polys


def apply_to_power(e: DiffOp, s: RatFuncMatrix, point: ExpansionPoint) -> PowerAction:
    """Exact symbol of e acting on S-twisted monomials at the given point.

    Uses d^k (r-rho)^n = n(n-1)...(n-k+1) (r-rho)^(n-k) together with the
    Leibniz rule on S, so every entry is rational in r with coefficients
    polynomial in n.
    """
    if e.cols != s.rows:
        raise DimensionMismatchError("source multiplier shape mismatch")
    if e.is_zero:
        return PowerAction(point, e.rows, s.cols, ())
    p = e.order
    ff = _falling_factorial_polys(p)
    rho = None if point.is_infinity else point.rho
    # (r - rho)^(-j) factors
    base = RatFunc(Poly((0, 1)) - (0 if rho is None else rho))
    inv_powers = [RatFunc.one()]
    for _ in range(p):
        inv_powers.append(inv_powers[-1] / base)
    s_derivs = [s]
    for _ in range(p):
        s_derivs.append(s_derivs[-1].derivative())
    layers = [RatFuncMatrix.zero(e.rows, s.cols) for _ in range(p + 1)]
    for k, c in enumerate(e.coeffs):
        if c.is_zero:
            continue
        for j in range(k + 1):
            prefix = c * s_derivs[k - j]
            if comb(k, j) != 1:
                prefix = prefix.scale(comb(k, j))
            for m, nc in enumerate(ff[j].coeffs):
                if nc.is_zero:
                    continue
                layers[m] = layers[m] + prefix.scale(inv_powers[j] * nc)
    while layers and layers[-1].is_zero:
        layers.pop()
    return PowerAction(point, e.rows, s.cols, tuple(layers))
