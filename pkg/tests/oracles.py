"""Independent brute-force oracles for the test suite.

These deliberately avoid the multiplier/bound machinery under test: they
expand a bounded Laurent ansatz directly, assemble the linear equations
by collecting polynomial coefficients of residual *functions* (for ODE
systems) or residual *operators* (for the decoupling identity), and call
only the exact linear solver.  Widened windows make them strictly more
permissive than the engine's bounds.
"""

from __future__ import annotations

from rode.diffop import DiffOp
from rode.gaussian import GaussianRational, ZERO
from rode.linsolve import linsolve_exact
from rode.poly import Poly, poly_lcm
from rode.ratfunc import RatFunc, RatFuncMatrix
from rode.reggewheeler import RWParams, delta_op, eps_param, regge_wheeler


def _poly_rows(funcs):
    """Rows of coefficients of the given rational functions over their
    common denominator (last element is treated as the right-hand side)."""
    den = Poly.one()
    for f in funcs:
        den = poly_lcm(den, f.den)
    cleared = []
    for f in funcs:
        g = f * RatFunc(den)
        assert g.den.degree == 0
        cleared.append(g.num)
    depth = max(p.degree for p in cleared) + 1
    rows = []
    for k in range(depth):
        rows.append([p.coeff(k) for p in cleared])
    return rows


def bruteforce_solve(e: DiffOp, v, nmin: int, nmax: int, twist=None):
    """All solutions of e[u] = v of the form twist * sum c_nj r^n e_j.

    Returns (particular, kernel) as vectors of rational functions, with
    particular None when no such solution exists.  Independent of
    rode.ratsolve: works by direct application to ansatz basis functions.
    """
    width = e.cols
    if twist is None:
        twist = RatFuncMatrix.identity(width)
    basis = []
    images = []
    for n in range(nmin, nmax + 1):
        for j in range(width):
            vec = [
                RatFunc.x_power(n) if jj == j else RatFunc.zero()
                for jj in range(width)
            ]
            vec = twist.matvec(vec)
            basis.append(vec)
            images.append(e.apply(vec))
    a_rows, b_vals = [], []
    for i in range(e.rows):
        rows = _poly_rows([img[i] for img in images] + [v[i]])
        for row in rows:
            a_rows.append(row[:-1])
            b_vals.append(row[-1])
    sol = linsolve_exact(a_rows, b_vals, ncols=len(basis))

    def combine(coeffs):
        out = [RatFunc.zero() for _ in range(width)]
        for c, vec in zip(coeffs, basis):
            if not c.is_zero:
                out = [acc + c * comp for acc, comp in zip(out, vec)]
        return out

    particular = combine(sol.particular) if sol.is_consistent else None
    kernel = [combine(k) for k in sol.kernel_basis]
    return particular, kernel


def rw_identity_bruteforce(delta_src, s0, s1, params: RWParams, nmin, nmax, twist=None):
    """All (delta0, delta1) with delta = twist * bounded Laurent ansatz such
    that D_s0 o delta = Delta + eps o D_s1 holds with eps completed by its
    unique first-order form.

    Works on the operator identity itself, never on the decoupling
    system: each ansatz basis element is turned into a residual operator
    and the vanishing of all its coefficients gives the linear system.
    Returns (particular, kernel) over coefficient pairs of rational
    functions, particular None if no solution exists.
    """
    if twist is None:
        twist = RatFunc.one()
    d_s0 = regge_wheeler(params, s0)
    d_s1 = regge_wheeler(params, s1)
    basis = []
    residuals = []
    for n in range(nmin, nmax + 1):
        for j in range(2):
            mono = twist * RatFunc.x_power(n)
            pair = (mono, RatFunc.zero()) if j == 0 else (RatFunc.zero(), mono)
            basis.append(pair)
            res = d_s0.compose(delta_op(*pair)) - eps_param(*pair, params).compose(
                d_s1
            )
            residuals.append(res)
    target = delta_src.as_operator()
    max_order = max(
        [len(r.coeffs) for r in residuals] + [len(target.coeffs)]
    )
    a_rows, b_vals = [], []
    for k in range(max_order):
        funcs = [r.coeff(k)[0, 0] for r in residuals] + [target.coeff(k)[0, 0]]
        for row in _poly_rows(funcs):
            a_rows.append(row[:-1])
            b_vals.append(row[-1])
    sol = linsolve_exact(a_rows, b_vals, ncols=len(basis))

    def combine(coeffs):
        d0 = RatFunc.zero()
        d1 = RatFunc.zero()
        for c, (b0, b1) in zip(coeffs, basis):
            if not c.is_zero:
                d0 = d0 + c * b0
                d1 = d1 + c * b1
        return d0, d1

    particular = combine(sol.particular) if sol.is_consistent else None
    kernel = [combine(k) for k in sol.kernel_basis]
    return particular, kernel


def in_function_span(vectors, target) -> bool:
    """Exact membership of a rational-function vector in the span of others."""
    if all(f.is_zero for f in target):
        return True
    if not vectors:
        return False
    width = len(target)
    a_rows, b_vals = [], []
    for i in range(width):
        rows = _poly_rows([vec[i] for vec in vectors] + [target[i]])
        for row in rows:
            a_rows.append(row[:-1])
            b_vals.append(row[-1])
    return linsolve_exact(a_rows, b_vals, ncols=len(vectors)).is_consistent


def same_affine_solution_set(space, oracle_particular, oracle_kernel, e, v) -> bool:
    """Check that an engine SolutionSpace and an oracle result describe the
    same affine set of solutions of e[u] = v."""
    if space.particular is None or oracle_particular is None:
        return (space.particular is None) == (oracle_particular is None) and len(
            space.kernel_basis
        ) == len(oracle_kernel)
    if len(space.kernel_basis) != len(oracle_kernel):
        return False
    shift = [a - b for a, b in zip(space.particular, oracle_particular)]
    if not in_function_span(oracle_kernel, shift):
        return False
    for k in space.kernel_basis:
        if not in_function_span(oracle_kernel, k):
            return False
    for k in oracle_kernel:
        if not in_function_span(space.kernel_basis, k):
            return False
    return True
