"""Reduction of block upper triangular ODE systems to diagonal form.

A system [[e0, Delta], [0, e1]] reduces to diag(e0, e1) exactly when the
operator identity e0 o delta = Delta + epsilon o e1 has a solution with
rational coefficients; the transformations [[id, delta], [0, id]] and
[[id, epsilon], [0, id]] then witness the equivalence.  Order reduction
brings delta below ord(e1) and epsilon below ord(e0), and the remaining
existence question becomes a rational ODE system on the coefficients of
delta, solved by rode.ratsolve.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .diffop import DiffOp, monic_normalize, right_divide
from .errors import DimensionMismatchError
from .orders import NEG_INF, is_finite
from .ratfunc import RatFunc, RatFuncMatrix
from .ratsolve import SolutionSpace, solve_rational


@dataclass(frozen=True)
class TriangularSystem:
    """Upper triangular system data: diagonal blocks e0, e1 and the
    off-diagonal block Delta.  Both diagonal blocks must be solvable for
    their highest derivatives."""

    e0: DiffOp
    e1: DiffOp
    delta_block: DiffOp

    def __post_init__(self):
        if self.e0.rows != self.e0.cols or self.e1.rows != self.e1.cols:
            raise DimensionMismatchError("diagonal blocks must be square")
        if (self.delta_block.rows, self.delta_block.cols) != (
            self.e0.rows,
            self.e1.cols,
        ):
            raise DimensionMismatchError("off-diagonal block shape mismatch")
        monic_normalize(self.e0)
        monic_normalize(self.e1)

    @property
    def p0(self):
        return self.e0.order

    @property
    def p1(self):
        return self.e1.order


@dataclass(frozen=True)
class ReductionPair:
    """A solution (delta, epsilon) of e0 o delta = Delta + epsilon o e1."""

    delta: DiffOp
    epsilon: DiffOp

    def residual(self, sys: TriangularSystem) -> DiffOp:
        return (
            sys.e0.compose(self.delta)
            - sys.delta_block
            - self.epsilon.compose(sys.e1)
        )

    def holds(self, sys: TriangularSystem) -> bool:
        return self.residual(sys).is_zero


@dataclass(frozen=True)
class EquivalenceWitness:
    """The two commuting squares certifying the reduction: block
    transformations whose horizontal arrows are mutual inverses."""

    forward: DiffOp
    backward: DiffOp
    source_transform: DiffOp
    source_inverse: DiffOp
    upper: DiffOp
    diagonal: DiffOp

    def verify(self) -> bool:
        n = self.forward.rows
        ident = DiffOp.identity(n)
        return (
            self.forward.compose(self.backward) == ident
            and self.backward.compose(self.forward) == ident
            and self.diagonal.compose(self.forward)
            == self.source_transform.compose(self.upper)
            and self.upper.compose(self.backward)
            == self.source_inverse.compose(self.diagonal)
        )


def equivalence_witness(sys: TriangularSystem, pair: ReductionPair) -> EquivalenceWitness:
    if not pair.holds(sys):
        raise ValueError("pair does not satisfy the off-diagonal identity")
    n0, n1 = sys.e0.rows, sys.e1.rows
    ident0, ident1 = DiffOp.identity(n0), DiffOp.identity(n1)
    zero10 = DiffOp.zero(n1, n0)

    def upper_block(op):
        return DiffOp.block([[ident0, op], [zero10, ident1]])

    return EquivalenceWitness(
        forward=upper_block(pair.delta),
        backward=upper_block(-pair.delta),
        source_transform=upper_block(pair.epsilon),
        source_inverse=upper_block(-pair.epsilon),
        upper=DiffOp.block([[sys.e0, sys.delta_block], [zero10, sys.e1]]),
        diagonal=DiffOp.block([[sys.e0, DiffOp.zero(n0, n1)], [zero10, sys.e1]]),
    )


def gauge_shift(pair: ReductionPair, alpha: DiffOp, sys: TriangularSystem) -> ReductionPair:
    """The gauge orbit: (delta + alpha o e1, epsilon + e0 o alpha) solves
    the same identity for any alpha."""
    return ReductionPair(
        pair.delta + alpha.compose(sys.e1),
        pair.epsilon + sys.e0.compose(alpha),
    )


def reduce_delta_order(sys: TriangularSystem, delta: DiffOp, epsilon: DiffOp) -> ReductionPair:
    """Trade a high-order solution for one with ord(delta) < ord(e1) and
    ord(epsilon) < ord(e0), assuming ord(Delta) < p0 + p1.

    Right division delta = delta~ + q o e1 absorbs the excess into the
    gauge freedom; the returned pair still satisfies the identity.
    """
    given = ReductionPair(delta, epsilon)
    if not given.holds(sys):
        raise ValueError("input (delta, epsilon) does not satisfy the identity")
    delta_block_order = sys.delta_block.order
    if is_finite(delta_block_order) and delta_block_order >= sys.p0 + sys.p1:
        raise ValueError("order reduction requires ord(Delta) < p0 + p1")
    reduced_delta, quotient = right_divide(delta, sys.e1)
    reduced_eps = epsilon - sys.e0.compose(quotient)
    out = ReductionPair(reduced_delta, reduced_eps)
    assert out.holds(sys)
    assert out.delta.order < sys.p1
    assert out.epsilon.order < sys.p0
    return out


def reconstruct_epsilon(sys: TriangularSystem, delta: DiffOp):
    """Recover the unique epsilon for a given delta, or certify that none
    exists.

    Returns (epsilon, residual): right-dividing e0 o delta - Delta by e1
    gives epsilon as the quotient exactly when the remainder vanishes;
    a nonzero remainder is the auditable nonexistence certificate.
    """
    difference = sys.e0.compose(delta) - sys.delta_block
    remainder, quotient = right_divide(difference, sys.e1)
    if remainder.is_zero:
        return quotient, remainder
    return None, remainder


def _power_reduction_tables(e1: DiffOp, max_order: int):
    """Matrices W[j][m] with rem(A d^j, e1) = sum_m A W[j][m] d^m for any
    constant-in-d matrix A; the right-division rewriting never touches A,
    so the tables depend on e1 alone."""
    n1 = e1.rows
    p1 = e1.order
    monic = monic_normalize(e1)
    ident = RatFuncMatrix.identity(n1)
    zero = RatFuncMatrix.zero(n1, n1)
    tables = []
    for j in range(max_order + 1):
        if j < p1:
            tables.append([ident if m == j else zero for m in range(p1)])
            continue
        # d^j = d^(j-p1) o (P e1 - tail): the e1 part has zero remainder
        shifted_tail = DiffOp.derivative_op(n1, j - p1).compose(monic.tail)
        row = [zero for _ in range(p1)]
        for b in range(len(shifted_tail.coeffs)):
            zb = shifted_tail.coeff(b)
            if zb.is_zero:
                continue
            for m in range(p1):
                if not tables[b][m].is_zero:
                    row[m] = row[m] - zb * tables[b][m]
        tables.append(row)
    return tables


def decoupling_system(sys: TriangularSystem):
    """The rational ODE system equivalent to the off-diagonal identity.

    Parametrizes delta = sum_{k<p1} D_k d^k with unknown rational matrix
    coefficients; the condition rem(e0 o delta - Delta, e1) = 0 is linear
    in the entries of the D_k and their derivatives.  Returns (op, rhs)
    where op acts on the stacked entry vector (D_0, ..., D_{p1-1}) and
    rhs collects the coefficients of rem(Delta, e1).
    """
    p0, p1 = sys.p0, sys.p1
    n0, n1 = sys.e0.rows, sys.e1.cols
    delta_order = sys.delta_block.order
    if is_finite(delta_order) and delta_order >= p0 + p1:
        raise DimensionMismatchError("Delta order must be below p0 + p1")
    tables = _power_reduction_tables(sys.e1, p0 + p1 - 1)

    n_unknowns = p1 * n0 * n1

    def uidx(k, alpha, beta):
        return (k * n0 + alpha) * n1 + beta

    def qidx(m, i, j):
        return (m * n0 + i) * n1 + j

    coeffs = [
        [[RatFunc.zero() for _ in range(n_unknowns)] for _ in range(n_unknowns)]
        for _ in range(p0 + 1)
    ]
    for s in range(p0 + 1):
        for a in range(s, p0 + 1):
            c_a = sys.e0.coeff(a)
            if c_a.is_zero:
                continue
            scale = comb(a, s)
            b = a - s
            for k in range(p1):
                w_row = tables[b + k]
                for m in range(p1):
                    w = w_row[m]
                    if w.is_zero:
                        continue
                    for i in range(n0):
                        for alpha in range(n0):
                            left = c_a[i, alpha]
                            if left.is_zero:
                                continue
                            for beta in range(n1):
                                for j in range(n1):
                                    right = w[beta, j]
                                    if right.is_zero:
                                        continue
                                    row = qidx(m, i, j)
                                    col = uidx(k, alpha, beta)
                                    coeffs[s][row][col] = (
                                        coeffs[s][row][col] + left * right * scale
                                    )

    op = DiffOp(
        n_unknowns,
        n_unknowns,
        [RatFuncMatrix(layer) for layer in coeffs],
    )

    rhs = [RatFunc.zero() for _ in range(n_unknowns)]
    for c in range(len(sys.delta_block.coeffs)):
        dc = sys.delta_block.coeff(c)
        if dc.is_zero:
            continue
        for m in range(p1):
            w = tables[c][m]
            if w.is_zero:
                continue
            block = dc * w
            for i in range(n0):
                for j in range(n1):
                    row = qidx(m, i, j)
                    rhs[row] = rhs[row] + block[i, j]
    return op, rhs


@dataclass
class ReductionResult:
    """Outcome of decide_reduction: the pair (with uniqueness datum) or a
    conclusive nonexistence verdict backed by the solver's certificate."""

    pair: ReductionPair | None
    space: SolutionSpace
    kernel_dim: int

    @property
    def exists(self):
        return self.pair is not None

    @property
    def unique(self):
        return self.exists and self.kernel_dim == 0


def _assemble_delta(sys: TriangularSystem, coefficients) -> DiffOp:
    p1 = sys.p1
    n0, n1 = sys.e0.rows, sys.e1.cols
    mats = []
    for k in range(p1):
        block = [
            [
                coefficients[(k * n0 + alpha) * n1 + beta]
                for beta in range(n1)
            ]
            for alpha in range(n0)
        ]
        mats.append(RatFuncMatrix(block))
    return DiffOp(n0, n1, mats)


def decide_reduction(sys: TriangularSystem, multipliers=None) -> ReductionResult:
    """Conclusively decide reducibility to block diagonal form.

    Solves the decoupling system for rational coefficients of delta; a
    solution yields (delta, epsilon) verified against the identity, an
    inconsistent system proves no rational reduction exists.  The kernel
    dimension of the decoupling system is the uniqueness datum (gauge
    shifts are invisible below ord(e1), so no quotienting is needed).
    """
    op, rhs = decoupling_system(sys)
    space = solve_rational(op, rhs, multipliers)
    if not space.exists:
        return ReductionResult(None, space, len(space.kernel_basis))
    delta = _assemble_delta(sys, space.particular)
    epsilon, remainder = reconstruct_epsilon(sys, delta)
    if epsilon is None:
        raise AssertionError(
            f"decoupling solution failed epsilon reconstruction: {remainder}"
        )
    pair = ReductionPair(delta, epsilon)
    if not pair.holds(sys):
        raise AssertionError("reduction pair fails the operator identity")
    return ReductionResult(pair, space, len(space.kernel_basis))
