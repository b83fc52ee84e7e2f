"""Gaussian elimination over the parametric field with explicit pivot gating.

Every pivot is a symbolic expression that might vanish for some parameter
values.  In *gated* mode (an assumption list is given) the eliminator only
divides by expressions that :func:`~sigmasl2.scalar.covered_by` certifies as
nonzero, and raises :class:`AssumptionRequired` otherwise.  In *generic*
mode (``assumptions=None``) any symbolically nonzero pivot is accepted; the
pivots used are returned so callers can report them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AssumptionRequired, InconsistentSystem
from .scalar import ParamField, Scalar, covered_by


@dataclass
class LinearSolution:
    particular: list[Scalar]
    nullspace: list[list[Scalar]]
    pivots: list[Scalar] = field(default_factory=list)
    free_columns: list[int] = field(default_factory=list)


def _pick_pivot(rows, col, start, assumptions):
    blocked = None
    for r in range(start, len(rows)):
        c = rows[r][col]
        if c.is_zero():
            continue
        if assumptions is None or c.is_constant() or covered_by(c, assumptions):
            return r, None
        if blocked is None:
            blocked = c
    return None, blocked


def solve(
    fieldspec: ParamField,
    matrix: Sequence[Sequence[Scalar]],
    rhs: Sequence[Scalar] | None = None,
    assumptions: Sequence[Scalar] | None = None,
) -> LinearSolution:
    """Solve ``matrix @ x = rhs`` exactly.

    Raises :class:`InconsistentSystem` (with the offending residual) when a
    zero row meets a nonzero right-hand side.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    zero = fieldspec.zero()
    if rhs is None:
        rhs = [zero] * nrows
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    pivot_cols: list[int] = []
    pivots: list[Scalar] = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        pr, blocked = _pick_pivot(rows, col, r, assumptions)
        if pr is None:
            if blocked is not None:
                raise AssumptionRequired(blocked)
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        pivots.append(piv)
        inv = piv.inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, nrows):
        if not rows[i][-1].is_zero():
            raise InconsistentSystem(f"no solution: residual {rows[i][-1]} must vanish", residual=rows[i][-1])
    free = [c for c in range(ncols) if c not in pivot_cols]
    particular = [zero] * ncols
    for i, c in enumerate(pivot_cols):
        particular[c] = rows[i][-1]
    null = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = fieldspec.one()
        for i, c in enumerate(pivot_cols):
            v[c] = -rows[i][fc]
        null.append(v)
    return LinearSolution(particular, null, pivots, free)


def nullspace(fieldspec: ParamField, matrix, assumptions=None) -> LinearSolution:
    return solve(fieldspec, matrix, None, assumptions)


def rank(fieldspec: ParamField, matrix) -> int:
    if not matrix:
        return 0
    sol = solve(fieldspec, matrix)
    return len(matrix[0]) - len(sol.free_columns)


def in_span(fieldspec: ParamField, vectors: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> bool:
    """Generic membership of ``target`` in the span of ``vectors``."""
    if all(x.is_zero() for x in target):
        return True
    if not vectors:
        return False
    cols = list(zip(*vectors))
    try:
        solve(fieldspec, [list(c) for c in cols], list(target))
    except InconsistentSystem:
        return False
    return True
