"""Rational solving of linear ODE systems with rational coefficients.

The pipeline: characteristic matrices from multiplier pairs turn the
equation into a coefficient recurrence whose integer exponents bound the
Laurent orders of any rational solution; pole locations are confined by
monic normalization; a universal multiplier absorbs poles away from the
expansion center; the remaining bounded Laurent ansatz reduces everything
to one exact finite linear system.

Multiplier pairs are inputs with defaults: identity source multipliers
are tried first, then diagonal powers over a bounded exponent window.
When the search fails the engine reports failure rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diffop import DiffOp, apply_to_power, monic_normalize
from .errors import (
    DimensionMismatchError,
    InvalidMultipliersError,
    MultiplierSearchError,
    NonRationalPoleError,
    ResidualError,
)
from .gaussian import GaussianRational
from .laurent import (
    INFINITY,
    ORIGIN,
    ExpansionPoint,
    valuation,
    vector_leading_order,
    vector_trailing_order,
)
from .linsolve import linsolve_exact
from .orders import NEG_INF, POS_INF, is_finite
from .poly import Poly
from .ratfunc import RatFunc, RatFuncMatrix, common_denominator
from .roots import gaussian_roots, integer_roots


def _is_laurent_monomial(f: RatFunc, point: ExpansionPoint) -> bool:
    """True when f is a nonzero constant times a single power of (r-rho)
    (a power of r when the point is infinity or the origin)."""
    if f.is_zero:
        return False
    rho = 0 if point.is_infinity else point.rho
    num = f.num.shift(rho)
    den = f.den.shift(rho)
    return (
        sum(1 for c in num.coeffs if not c.is_zero) == 1
        and sum(1 for c in den.coeffs if not c.is_zero) == 1
    )


def _is_laurent_poly(f: RatFunc, point: ExpansionPoint) -> bool:
    """True when f has poles at most at the point (and infinity)."""
    if f.is_zero:
        return True
    rho = 0 if point.is_infinity else point.rho
    den = f.den.shift(rho)
    return den.degree == den.trailing_zero_count()


@dataclass(frozen=True)
class MultiplierPair:
    """Source/target multiplier matrices S, T normalizing the action of an
    operator on monomials at one expansion point.

    S, T and their inverses may only have poles at the point itself (and
    at infinity), equivalently their determinants are a constant times a
    single power of (r-rho) (of r, at infinity); checked at construction.
    """

    point: ExpansionPoint
    S: RatFuncMatrix
    T: RatFuncMatrix

    def __post_init__(self):
        for name, m in (("S", self.S), ("T", self.T)):
            if not m.is_square:
                raise InvalidMultipliersError(f"{name} must be square")
            for i in range(m.rows):
                for j in range(m.cols):
                    if not _is_laurent_poly(m[i, j], self.point):
                        raise InvalidMultipliersError(
                            f"{name}[{i},{j}] = {m[i, j]} has a pole away from {self.point}"
                        )
            det = m.det()
            if not _is_laurent_monomial(det, self.point):
                raise InvalidMultipliersError(
                    f"det {name} = {det} is not a single power of the local parameter"
                )


@dataclass(frozen=True)
class CharMatrix:
    """Characteristic matrix E_n of an operator at one point: the exact
    n-indexed matrix acting on Laurent coefficients, its determinant as a
    polynomial in n, and the integer exponents (the integer roots of the
    determinant, the only orders where coefficients are not forced)."""

    point: ExpansionPoint
    entries: tuple  # tuple of tuples of Poly in n
    det: Poly
    exponents: tuple

    @property
    def size(self):
        return len(self.entries)

    def at_n(self, n: int):
        return [[p.eval(n) for p in row] for row in self.entries]


def char_matrix(e: DiffOp, pair: MultiplierPair) -> CharMatrix:
    """Characteristic matrix of e with respect to a multiplier pair.

    Computes M(r, n) = T^-1 e[S c (r-rho)^n] / (r-rho)^n and demands that
    every entry is regular at the point (finite case) or bounded at
    infinity (trailing case); E_n is then the exact order-zero datum.
    Raises InvalidMultipliersError naming the violating entry, or when
    det E_n vanishes identically.
    """
    point = pair.point
    try:
        t_inv = pair.T.inverse()
    except ZeroDivisionError:
        raise InvalidMultipliersError("target multiplier is singular") from None
    action = apply_to_power(e, pair.S, point)
    layers = [t_inv * layer for layer in action.layers]
    size = e.rows
    entry_polys = []
    for i in range(size):
        row = []
        for j in range(pair.S.cols):
            values = []
            for m, layer in enumerate(layers):
                f = layer[i, j]
                val = valuation(f, point)
                if not is_finite(val):
                    values.append(GaussianRational(0))
                    continue
                if point.is_infinity:
                    if val > 0:
                        raise InvalidMultipliersError(
                            f"entry ({i},{j}) of T^-1 e[S r^n] grows like r^{val} "
                            f"(n^{m} part) at infinity; trailing normalization fails"
                        )
                    values.append(
                        f.num.lc() / f.den.lc() if val == 0 else GaussianRational(0)
                    )
                else:
                    if val < 0:
                        raise InvalidMultipliersError(
                            f"entry ({i},{j}) of T^-1 e[S (r-rho)^n] has order {val} "
                            f"(n^{m} part) at r = {point.rho}; leading normalization fails"
                        )
                    values.append(f.eval(point.rho) if val == 0 else GaussianRational(0))
            row.append(Poly(values, "n"))
        entry_polys.append(tuple(row))
    det = _poly_det(entry_polys)
    if det.is_zero:
        raise InvalidMultipliersError(
            "det E_n vanishes identically; E_n is not invertible for almost all n"
        )
    return CharMatrix(point, tuple(entry_polys), det, tuple(integer_roots(det)))


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly.zero("n")
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [
            [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        term = rows[0][j] * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def leading_bound(e_char: CharMatrix, n_v):
    """Lower bound for the leading order of S^-1 u at the point, given the
    leading order n_v of T^-1 v: min over {n_v} and the exponent set.
    +inf (only u = 0 possible) when both are empty/infinite."""
    options = [x for x in list(e_char.exponents) + [n_v] if is_finite(x)]
    return min(options) if options else POS_INF


def trailing_bound(e_char: CharMatrix, n_v):
    """Upper bound mirror of leading_bound at infinity (-inf = only 0)."""
    options = [x for x in list(e_char.exponents) + [n_v] if is_finite(x)]
    return max(options) if options else NEG_INF


def pole_candidates(e: DiffOp, v) -> set:
    """Finite points where a rational solution of e[u] = v may have poles:
    the poles of P v and of the coefficients of the normalized tail.

    Raises NonRationalPoleError when a denominator has an irreducible
    factor of degree >= 2 over Q(i); such singular points cannot be used
    as expansion centers in this field.
    """
    monic = monic_normalize(e)
    dens = [f.den for f in monic.P.matvec(list(v))]
    for c in monic.tail.coeffs:
        dens.extend(entry.den for row in c.entries for entry in row)
    points = set()
    for den in dens:
        if den.degree <= 0:
            continue
        found, residue = gaussian_roots(den)
        if residue.degree > 0:
            raise NonRationalPoleError(
                f"denominator factor {residue} has no roots in Q(i); "
                "its singular points are outside the coefficient field"
            )
        points.update(root for root, _ in found)
    return points


def find_multipliers(e: DiffOp, point: ExpansionPoint, window: int | None = None):
    """Bounded heuristic search for a valid multiplier pair at a point.

    Tries the identity source multiplier first, then diagonal powers of
    the local parameter with exponents in [-window, window] (default
    order x size), pairing each with the target built from row-wise
    extreme valuations.  Returns (pair, char_matrix).  Raises
    MultiplierSearchError when nothing in the window validates.
    """
    size = e.cols
    order = e.order if is_finite(e.order) else 0
    if window is None:
        window = max(1, order * size)
    base = (
        RatFunc.var_func()
        if point.is_infinity or point.rho.is_zero
        else RatFunc(Poly((-point.rho, 1)))
    )
    tuples = sorted(
        product(range(-window, window + 1), repeat=size),
        key=lambda t: (sum(abs(a) for a in t), t),
    )
    for exps in tuples:
        s = RatFuncMatrix.diag([base**a for a in exps])
        pair = _target_from_rows(e, s, point, base)
        if pair is None:
            continue
        try:
            return pair, char_matrix(e, pair)
        except InvalidMultipliersError:
            continue
    raise MultiplierSearchError(
        f"no valid multiplier pair found at {point} within exponent window {window}"
    )


def _target_from_rows(e, s, point, base):
    action = apply_to_power(e, s, point)
    if not action.layers:
        return None
    exps = []
    for i in range(e.rows):
        vals = [
            valuation(layer[i, j], point)
            for layer in action.layers
            for j in range(s.cols)
        ]
        finite = [x for x in vals if is_finite(x)]
        if not finite:
            return None  # identically zero row; det E_n would vanish
        exps.append(max(finite) if point.is_infinity else min(finite))
    t = RatFuncMatrix.diag([base**b for b in exps])
    return MultiplierPair(point, s, t)


def _resolve_pair(e, point, multipliers):
    if multipliers and point in multipliers:
        pair = multipliers[point]
        return pair, char_matrix(e, pair)
    return find_multipliers(e, point)


def universal_multiplier(e: DiffOp, v, multipliers=None) -> RatFuncMatrix:
    """A rational matrix R such that every rational solution u of
    e[u] = v factors as u = R u~ with u~ a Laurent-polynomial vector.

    Built as the product over non-origin pole candidates rho of
    S_rho (r-rho)^(n_rho), where n_rho is the leading bound at rho.
    """
    r_matrix, _ = _universal_multiplier_data(e, v, multipliers)
    return r_matrix


def _universal_multiplier_data(e, v, multipliers):
    candidates = sorted(
        (rho for rho in pole_candidates(e, v) if not rho.is_zero),
        key=str,
    )
    r_matrix = RatFuncMatrix.identity(e.cols)
    used = {}
    for rho in candidates:
        point = ExpansionPoint.finite(rho)
        pair, e_char = _resolve_pair(e, point, multipliers)
        normalized = pair.T.inverse().matvec(list(v))
        _, n_v, _ = vector_leading_order(normalized, point)
        bound = leading_bound(e_char, n_v)
        if not is_finite(bound):
            bound = 0  # only u = 0 can solve; no pole allowed at rho
        factor = RatFunc(Poly((-rho, 1))) ** bound
        r_matrix = r_matrix * pair.S.scale(factor)
        used[point] = (pair, e_char, bound)
    return r_matrix, used


@dataclass
class SolutionSpace:
    """Affine space of rational solutions: the universal multiplier used,
    the Laurent order bounds of the ansatz, one particular solution (None
    when no rational solution exists) and a basis of the rational kernel."""

    R: RatFuncMatrix
    bounds: tuple
    particular: list[RatFunc] | None
    kernel_basis: list[list[RatFunc]]
    certificate: list[GaussianRational] | None = None

    @property
    def exists(self):
        return self.particular is not None

    @property
    def is_unique(self):
        return self.exists and not self.kernel_basis


def _min_entry_valuation(m: RatFuncMatrix, point: ExpansionPoint):
    vals = [
        valuation(m[i, j], point)
        for i in range(m.rows)
        for j in range(m.cols)
        if not m[i, j].is_zero
    ]
    return min(vals) if vals else 0


def _max_entry_valuation(m: RatFuncMatrix, point: ExpansionPoint):
    vals = [
        valuation(m[i, j], point)
        for i in range(m.rows)
        for j in range(m.cols)
        if not m[i, j].is_zero
    ]
    return max(vals) if vals else 0


def solve_rational(e: DiffOp, v, multipliers=None) -> SolutionSpace:
    """Find all rational solutions of e[u] = v.

    ``multipliers`` optionally maps expansion points to MultiplierPairs;
    points without an entry fall back to the bounded heuristic search.
    Every returned solution is re-verified by an exact residual check.
    An inconsistent reduced linear system is conclusive: no rational
    solution exists, and the Farkas certificate row is attached.
    """
    if e.rows != e.cols:
        raise DimensionMismatchError("solver requires a square system")
    v = [x if isinstance(x, RatFunc) else RatFunc.const(x) for x in v]
    if len(v) != e.rows:
        raise DimensionMismatchError("source vector length mismatch")

    r_matrix, _ = _universal_multiplier_data(e, v, multipliers)
    twisted = e.compose(DiffOp.from_matrix(r_matrix))

    pair0, char0 = _resolve_pair(twisted, ORIGIN, multipliers)
    _, n_v0, _ = vector_leading_order(pair0.T.inverse().matvec(v), ORIGIN)
    nmin = leading_bound(char0, n_v0)
    if is_finite(nmin):
        nmin += _min_entry_valuation(pair0.S, ORIGIN)

    pair_inf, char_inf = _resolve_pair(twisted, INFINITY, multipliers)
    _, n_vinf, _ = vector_trailing_order(pair_inf.T.inverse().matvec(v))
    nmax = trailing_bound(char_inf, n_vinf)
    if is_finite(nmax):
        nmax += _max_entry_valuation(pair_inf.S, INFINITY)

    return solve_with_ansatz(e, v, r_matrix, nmin, nmax)


def solve_with_ansatz(e: DiffOp, v, r_matrix: RatFuncMatrix, nmin, nmax) -> SolutionSpace:
    """Solve e[u] = v over the ansatz u = R * sum_{n=nmin}^{nmax} u_n r^n.

    Clears denominators componentwise, equates polynomial coefficients,
    and hands the resulting finite system to the exact linear solver.
    Sentinel or crossed bounds mean the ansatz is empty, leaving u = 0 as
    the only candidate.
    """
    v = [x if isinstance(x, RatFunc) else RatFunc.const(x) for x in v]
    width = e.cols
    if not (is_finite(nmin) and is_finite(nmax)) or nmax < nmin:
        zero = [RatFunc.zero() for _ in range(width)]
        if all(x.is_zero for x in v):
            return SolutionSpace(r_matrix, (nmin, nmax), zero, [])
        return SolutionSpace(r_matrix, (nmin, nmax), None, [])

    twisted = e.compose(DiffOp.from_matrix(r_matrix))
    unknowns = [(n, j) for n in range(nmin, nmax + 1) for j in range(width)]
    columns = []
    for n, j in unknowns:
        mono = [
            RatFunc.x_power(n) if jj == j else RatFunc.zero() for jj in range(width)
        ]
        columns.append(twisted.apply(mono))

    a_rows = []
    b_vals = []
    for i in range(e.rows):
        funcs = [col[i] for col in columns] + [v[i]]
        den = common_denominator(funcs)
        polys = []
        for fct in funcs:
            cleared = fct * RatFunc(den)
            if cleared.den.degree != 0:
                raise ResidualError("denominator clearing failed")  # unreachable
            polys.append(cleared.num)
        depth = max(p.degree for p in polys) + 1
        for k in range(depth):
            a_rows.append([p.coeff(k) for p in polys[:-1]])
            b_vals.append(polys[-1].coeff(k))

    linear = linsolve_exact(a_rows, b_vals, ncols=len(unknowns))

    def to_function_vector(coeffs):
        tilde = [RatFunc.zero() for _ in range(width)]
        for (n, j), c in zip(unknowns, coeffs):
            if not c.is_zero:
                tilde[j] = tilde[j] + RatFunc.x_power(n) * c
        return r_matrix.matvec(tilde)

    particular = None
    if linear.is_consistent:
        particular = to_function_vector(linear.particular)
        residual = [a - b for a, b in zip(e.apply(particular), v)]
        if any(not x.is_zero for x in residual):
            raise ResidualError("particular solution residual is nonzero")
    kernel = []
    for vec in linear.kernel_basis:
        func = to_function_vector(vec)
        if any(not x.is_zero for x in e.apply(func)):
            raise ResidualError("kernel member residual is nonzero")
        kernel.append(func)

    return SolutionSpace(
        r_matrix, (nmin, nmax), particular, kernel, linear.certificate
    )
