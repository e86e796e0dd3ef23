"""Finite pointed metric spaces and the four-point condition."""

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt, lcm
from pathlib import Path

import numpy as np

from .errors import (
    DuplicatePoints,
    MetricError,
    NegativeDistance,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
    TriangleViolation,
)
from .scalar import EXACT, FLOAT, Arithmetic, parse_scalar

__all__ = [
    "FiniteMetric",
    "FourPointVerdict",
    "validate_metric",
    "four_point_check",
    "gromov_product",
    "line_metric",
    "discrete_metric",
    "metric_from_points",
    "read_metric",
    "parse_metric",
    "metric_to_json",
]


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A validated pointed metric on ``points`` with origin ``points[base]``.

    Build instances with :func:`validate_metric`; the constructor itself does
    not check anything.  ``merged`` maps original indices that were collapsed
    onto another point (only with ``merge_duplicates``) to their new index.
    """

    points: tuple
    base: int
    d: np.ndarray
    arith: Arithmetic = EXACT
    merged: dict = field(default_factory=dict)

    def __post_init__(self):
        self.d.setflags(write=False)

    @property
    def n(self):
        return len(self.points)

    @property
    def base_label(self):
        return self.points[self.base]

    def index(self, label):
        try:
            return self.points.index(label)
        except ValueError:
            raise KeyError(label) from None

    def dist(self, x, y):
        """Distance between two point labels."""
        return self.d[self.index(x), self.index(y)]

    def submetric(self, indices, base=None):
        """Restriction to ``indices``; ``base`` is an index into the original space."""
        indices = list(indices)
        if base is None:
            base = self.base if self.base in indices else indices[0]
        sub = self.d[np.ix_(indices, indices)].copy()
        return FiniteMetric(tuple(self.points[i] for i in indices), indices.index(base), sub, self.arith)

    def rebased(self, base):
        return FiniteMetric(self.points, base, self.d.copy(), self.arith)

    def permuted(self, order):
        """Same space with points listed in ``order`` (a permutation of indices)."""
        order = list(order)
        sub = self.d[np.ix_(order, order)].copy()
        return FiniteMetric(tuple(self.points[i] for i in order), order.index(self.base), sub, self.arith)

    def scaled(self, t):
        t = self.arith.coerce(t)
        return FiniteMetric(self.points, self.base, self.d * t, self.arith)

    def same_as(self, other):
        """Exact (or eps-) equality of labelled distances, independent of point order."""
        if set(self.points) != set(other.points) or self.base_label != other.base_label:
            return False
        order = [other.index(p) for p in self.points]
        od = other.d[np.ix_(order, order)]
        return all(self.arith.eq(self.d[i, j], od[i, j]) for i in range(self.n) for j in range(self.n))

    def __repr__(self):
        return f"FiniteMetric(n={self.n}, base={self.base_label!r}, exact={self.arith.exact})"


@dataclass(frozen=True)
class FourPointVerdict:
    """Outcome of :func:`four_point_check`.

    On failure ``witness = (a, b, c, d)`` are point indices and ``sums`` are
    ``(d(a,b)+d(c,d), d(a,c)+d(b,d), d(a,d)+d(b,c))`` with the first strictly
    largest.
    """

    holds: bool
    witness: tuple = None
    sums: tuple = None


def _comparable(M):
    """Array with the same order structure as ``M.d`` but cheap to compare.

    Exact metrics are scaled by the lcm of all denominators; the result is
    int64 when it fits and Python ints otherwise.
    """
    if not M.arith.exact:
        return M.d.astype(np.float64)
    scale = lcm(*(Fraction(v).denominator for v in M.d.flat)) if M.n else 1
    ints = [[int(Fraction(v) * scale) for v in row] for row in M.d]
    big = max((abs(v) for row in ints for v in row), default=0)
    if big < 2**60:
        return np.array(ints, dtype=np.int64).reshape(M.n, M.n)
    return np.array(ints, dtype=object).reshape(M.n, M.n)


def validate_metric(matrix, base=0, points=None, arith=EXACT, merge_duplicates=False):
    """Check that ``matrix`` is a metric and wrap it as a :class:`FiniteMetric`.

    Checks run in a fixed order (diagonal, sign, symmetry, triangle
    inequality, distinct points) and the first failure raises with the
    lexicographically smallest witness.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"matrix is not square ({n} rows, row lengths {[len(r) for r in rows]})")
    if points is None:
        points = list(range(n))
    points = tuple(points)
    if len(points) != n or len(set(points)) != n:
        raise MetricError("point labels must be distinct and match the matrix size")
    if n and not 0 <= base < n:
        raise MetricError(f"base index {base} out of range")
    d = arith.array(rows) if n else np.zeros((0, 0), dtype=arith.dtype)

    for i in range(n):
        if not arith.is_zero(d[i, i]):
            raise NonzeroDiagonal(i)
    d[np.diag_indices(n)] = arith.zero()
    for i in range(n):
        for j in range(n):
            if arith.lt(d[i, j], 0):
                raise NegativeDistance((i, j))
    for i in range(n):
        for j in range(i + 1, n):
            if not arith.eq(d[i, j], d[j, i]):
                raise NotSymmetric((i, j))
            d[j, i] = d[i, j]

    M = FiniteMetric(points, base, d, arith)
    X = _comparable(M)
    tol = 0 if arith.exact else arith.eps
    for i in range(n):
        # bad[j, k]: d(i,k) > d(i,j) + d(j,k)
        bad = X[i][None, :] > X[i][:, None] + X + tol
        if bad.any():
            j, k = np.argwhere(bad)[0]
            raise TriangleViolation((i, int(j), int(k)))

    dup = [(i, j) for i in range(n) for j in range(i + 1, n) if arith.is_zero(d[i, j])]
    if not dup:
        return M
    if not merge_duplicates:
        raise DuplicatePoints(dup[0])

    rep = list(range(n))
    for i, j in dup:
        rep[j] = min(rep[j], rep[i])
    keep = [i for i in range(n) if rep[i] == i]
    if rep[base] != base:
        base = rep[base]
    new_index = {old: k for k, old in enumerate(keep)}
    merged = {j: new_index[rep[j]] for j in range(n) if rep[j] != j}
    sub = d[np.ix_(keep, keep)].copy()
    return FiniteMetric(tuple(points[i] for i in keep), new_index[base], sub, arith, merged)


_TRIPLE_CACHE = {}


def _triples(n):
    if n not in _TRIPLE_CACHE:
        t = np.array(list(combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)
        _TRIPLE_CACHE[n] = t
    return _TRIPLE_CACHE[n]


def _first_failure(X, i, triples, starts, tol):
    """Lexicographically first failing (j, k, l, pairing) with smallest index i."""
    t = triples[starts[i]:]
    if not len(t):
        return None
    J, K, L = t[:, 0], t[:, 1], t[:, 2]
    s1 = X[i, J] + X[K, L]
    s2 = X[i, K] + X[J, L]
    s3 = X[i, L] + X[J, K]
    f1 = (s1 > s2 + tol) & (s1 > s3 + tol)
    f2 = (s2 > s1 + tol) & (s2 > s3 + tol)
    f3 = (s3 > s1 + tol) & (s3 > s2 + tol)
    fail = f1 | f2 | f3
    if not fail.any():
        return None
    p = int(np.argmax(fail))
    pairing = 1 if f1[p] else 2 if f2[p] else 3
    return int(J[p]), int(K[p]), int(L[p]), pairing


def four_point_check(M, threads=1):
    """Decide the four-point condition by scanning all 4-subsets.

    Quadruples with a repeated point reduce to the triangle inequality and
    always pass, so only subsets ``i < j < k < l`` are scanned, with the three
    pairings in a fixed order.  The witness is the first failure in that
    order regardless of ``threads``.
    """
    n = M.n
    if n < 4:
        return FourPointVerdict(True)
    X = _comparable(M)
    tol = 0 if M.arith.exact else M.arith.eps
    triples = _triples(n)
    starts = np.searchsorted(triples[:, 0], np.arange(n), side="right")

    hit = None
    if threads <= 1:
        for i in range(n - 3):
            r = _first_failure(X, i, triples, starts, tol)
            if r is not None:
                hit = (i, r)
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: _first_failure(X, i, triples, starts, tol), range(n - 3)))
        for i, r in enumerate(results):
            if r is not None:
                hit = (i, r)
                break
    if hit is None:
        return FourPointVerdict(True)

    i, (j, k, l, pairing) = hit
    witness = {1: (i, j, k, l), 2: (i, k, j, l), 3: (i, l, j, k)}[pairing]
    return FourPointVerdict(False, witness, pair_sums(M, witness))


def pair_sums(M, quad):
    a, b, c, d = quad
    D = M.d
    return (D[a, b] + D[c, d], D[a, c] + D[b, d], D[a, d] + D[b, c])


def gromov_product(M, x, y, z):
    """``(x|y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2`` for point indices."""
    D = M.d
    return M.arith.half(D[x, z] + D[y, z] - D[x, y])


# ---------------------------------------------------------------- builders


def line_metric(positions, base=None, arith=EXACT, labels=None):
    """Metric of a finite subset of the real line; base defaults to position 0."""
    pos = [arith.coerce(p) for p in positions]
    if base is None:
        base = pos.index(0) if 0 in pos else 0
    rows = [[abs(p - q) for q in pos] for p in pos]
    return validate_metric(rows, base=base, points=labels or list(range(len(pos))), arith=arith)


def discrete_metric(n_points, arith=EXACT):
    """``n_points`` points at mutual distance 1, base index 0."""
    rows = [[0 if i == j else 1 for j in range(n_points)] for i in range(n_points)]
    return validate_metric(rows, arith=arith)


def metric_from_points(coords, norm="l2", base=0, arith=None, labels=None):
    """Metric induced by a norm on points of R^k.

    ``l1`` and ``linf`` stay rational; ``l2`` is only exact when every
    distance happens to be rational, so it defaults to float mode.
    """
    if arith is None:
        arith = FLOAT if norm == "l2" else EXACT
    P = [[arith.coerce(c) for c in p] for p in coords]
    rows = []
    for p in P:
        row = []
        for q in P:
            diff = [abs(a - b) for a, b in zip(p, q)]
            if norm == "l1":
                row.append(sum(diff, arith.zero()))
            elif norm == "linf":
                row.append(max(diff, default=arith.zero()))
            elif norm == "l2":
                sq = sum((v * v for v in diff), arith.zero())
                if arith.exact:
                    num, den = Fraction(sq).numerator, Fraction(sq).denominator
                    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
                    if rn is None or rd is None:
                        raise ValueError("Euclidean distance is irrational; use float mode")
                    row.append(Fraction(rn, rd))
                else:
                    row.append(float(np.sqrt(sq)))
            else:
                raise ValueError(f"unknown norm {norm!r}")
        rows.append(row)
    return validate_metric(rows, base=base, points=labels, arith=arith)


def _isqrt_exact(v):
    r = isqrt(v)
    return r if r * r == v else None


# ---------------------------------------------------------------- file I/O


def _is_number(cell):
    try:
        parse_scalar(cell)
    except (TypeError, ValueError, ZeroDivisionError):
        return False
    return True


def parse_metric(text, fmt=None, arith=EXACT, base=None, merge_duplicates=False):
    """Parse CSV (header row of labels) or JSON ``{"points", "base", "d"}``."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        obj = json.loads(text)
        try:
            points = [str(p) for p in obj["points"]]
            rows = obj["d"]
        except (KeyError, TypeError) as exc:
            raise MetricError(f"metric JSON needs 'points' and 'd': {exc}") from None
        base_label = obj.get("base", points[0] if points else None) if base is None else base
    elif fmt == "csv":
        records = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
        if not records:
            raise MetricError("empty CSV")
        points = [c.strip() for c in records[0]]
        rows = [[c.strip() for c in rec] for rec in records[1:]]
        if rows and all(r and not _is_number(r[0]) for r in rows):
            # first column holds row labels
            rows = [r[1:] for r in rows]
            if len(points) == len(rows) + 1:
                points = points[1:]
        base_label = points[0] if base is None and points else base
    else:
        raise ValueError(f"unknown metric format {fmt!r}")
    if str(base_label) not in points:
        raise MetricError(f"base {base_label!r} is not a point label")
    try:
        return validate_metric(rows, base=points.index(str(base_label)), points=points, arith=arith,
                               merge_duplicates=merge_duplicates)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, MetricError):
            raise
        raise MetricError(f"malformed distance entry: {exc}") from None


def read_metric(path, arith=EXACT, base=None, merge_duplicates=False):
    path = Path(path)
    fmt = {".json": "json", ".csv": "csv"}.get(path.suffix.lower())
    return parse_metric(path.read_text(), fmt, arith=arith, base=base, merge_duplicates=merge_duplicates)


def metric_to_json(M):
    return {
        "points": [str(p) for p in M.points],
        "base": str(M.base_label),
        "d": [[M.arith.format(v) if M.arith.exact else float(v) for v in row] for row in M.d],
    }
