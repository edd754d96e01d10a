"""Exact affine solving of linear systems over Q(i).

Plain exact Gaussian elimination to reduced row echelon form; with
normalized Fraction coefficients every intermediate entry is already in
lowest terms, so there is no fraction-free bookkeeping to do.  Pivots are
chosen by first nonzero column, breaking ties between rows by smallest
coefficient bit-size, for reproducible output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatchError
from .gaussian import GaussianRational, ZERO, ONE


@dataclass
class AffineSolutionSet:
    """All solutions of A x = b: one particular solution plus a basis of
    the kernel of A.  ``particular`` is None when the system is
    inconsistent; ``certificate`` then holds a row combination y with
    y^T A = 0 and y^T b != 0, proving inconsistency."""

    particular: list[GaussianRational] | None
    kernel_basis: list[list[GaussianRational]]
    certificate: list[GaussianRational] | None = None
    rank: int = 0

    @property
    def is_consistent(self):
        return self.particular is not None


def _as_gr(value):
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


def linsolve_exact(matrix, rhs, ncols: int | None = None) -> AffineSolutionSet:
    """Solve A x = b exactly, returning the full affine solution set.

    ``matrix`` is a list of rows of Gaussian rationals (possibly empty),
    ``rhs`` the right-hand side of matching length.  ``ncols`` pins the
    number of unknowns when the matrix has no rows.  Inconsistent systems
    still report the kernel basis of A.
    """
    a = [[_as_gr(e) for e in row] for row in matrix]
    b = [_as_gr(e) for e in rhs]
    if len(a) != len(b):
        raise DimensionMismatchError(
            f"{len(a)} rows but {len(b)} right-hand sides"
        )
    nrows = len(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if any(len(row) != ncols for row in a):
        raise DimensionMismatchError("ragged coefficient matrix")

    # augmented rows: [A | b | I] -- the identity block tracks the row
    # combination that produced each row, for inconsistency certificates
    rows = [
        a[i] + [b[i]] + [ONE if j == i else ZERO for j in range(nrows)]
        for i in range(nrows)
    ]

    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        candidates = [
            (rows[k][col].bitsize(), k)
            for k in range(rank, nrows)
            if not rows[k][col].is_zero
        ]
        if not candidates:
            continue
        _, k = min(candidates)
        rows[rank], rows[k] = rows[k], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [e * inv for e in rows[rank]]
        for other in range(nrows):
            if other == rank or rows[other][col].is_zero:
                continue
            factor = rows[other][col]
            rows[other] = [
                e - factor * p for e, p in zip(rows[other], rows[rank])
            ]
        pivots.append(col)
        rank += 1

    certificate = None
    consistent = True
    for k in range(rank, nrows):
        if not rows[k][ncols].is_zero:
            consistent = False
            certificate = rows[k][ncols + 1 :]
            break

    free_cols = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for fc in free_cols:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for k, pc in enumerate(pivots):
            vec[pc] = -rows[k][fc]
        kernel.append(vec)

    particular = None
    if consistent:
        particular = [ZERO] * ncols
        for k, pc in enumerate(pivots):
            particular[pc] = rows[k][ncols]

    return AffineSolutionSet(particular, kernel, certificate, rank)
