"""Exact simplex for small dense linear programs.

Solves

    maximize  c . x   subject to   A x <= b,  x >= 0,   with  b >= 0,

over the rationals.  Every row is scaled to integers and the dictionary is
updated with integer-preserving (Bareiss-style) pivots: each entry is an
integer numerator over one shared positive denominator, and the division in
the update step is always exact.  Bland's rule guarantees termination on the
heavily degenerate programs that come out of Lipschitz constraints.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import UnboundedObjective

__all__ = ["LPSolution", "solve_canonical"]


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple
    pivots: int


def _integer_row(values):
    values = [Fraction(v) for v in values]
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * scale) for v in values], scale


def solve_canonical(c, A, b, max_pivots=100_000):
    """Maximize ``c @ x`` over ``{x >= 0 : A x <= b}`` exactly.

    ``A`` is an ``m x k`` nested sequence, ``b`` has length ``m`` and must be
    nonnegative so that the all-slack basis is feasible.  Entries may be ints,
    Fractions or anything ``Fraction`` accepts.

    Raises UnboundedObjective when the objective has no finite maximum.
    """
    m, k = len(A), len(c)
    if len(b) != m:
        raise ValueError("A and b have inconsistent row counts")

    T = np.empty((m + 1, k + 1), dtype=object)
    for i in range(m):
        if len(A[i]) != k:
            raise ValueError(f"row {i} of A has length {len(A[i])}, expected {k}")
        row, _ = _integer_row(list(A[i]) + [b[i]])
        if row[-1] < 0:
            raise ValueError("right-hand side must be nonnegative")
        T[i, :] = row
    obj, cscale = _integer_row(c)
    T[m, :k] = [-v for v in obj]
    T[m, k] = 0

    D = 1
    basis = [k + i for i in range(m)]
    nonbasic = list(range(k))

    pivots = 0
    while True:
        # Bland: entering variable with smallest index among improving columns
        entering = None
        for j in range(k):
            if T[m, j] < 0 and (entering is None or nonbasic[j] < nonbasic[entering]):
                entering = j
        if entering is None:
            break
        s = entering

        leaving = None
        for i in range(m):
            t = T[i, s]
            if t <= 0:
                continue
            if leaving is None:
                leaving = i
                continue
            # compare T[i,k]/t against T[r,k]/T[r,s]
            r = leaving
            lhs = T[i, k] * T[r, s]
            rhs = T[r, k] * t
            if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                leaving = i
        if leaving is None:
            raise UnboundedObjective("objective is unbounded above")
        r = leaving

        p = T[r, s]
        row = T[r, :].copy()
        col = T[:, s].copy()
        T = (T * p - np.outer(col, row)) // D
        T[:, s] = -col
        T[r, :] = row
        T[r, s] = D
        D = p

        basis[r], nonbasic[s] = nonbasic[s], basis[r]
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex exceeded the pivot limit")

    x = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            x[var] = Fraction(T[i, k], D)
    value = Fraction(T[m, k], D * cscale)
    return LPSolution(value=value, x=tuple(x), pivots=pivots)
