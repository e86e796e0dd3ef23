"""Random instances for property tests, demos and the acceptance suite.

All generators take a :class:`random.Random` so runs are reproducible from a
seed, and produce exact rationals unless noted.
"""

import random
from fractions import Fraction

import numpy as np

from .freenorm import Molecule
from .metric import metric_from_points, validate_metric
from .scalar import EXACT
from .tree import WeightedTree, induced_metric

__all__ = [
    "random_rational",
    "random_tree",
    "random_tree_metric",
    "random_molecule",
    "random_triangle",
    "concyclic_rational_metric",
    "perturbed_metric",
    "random_integer_metric",
    "random_glued_points",
]


def random_rational(rng, lo=0, hi=10, max_den=6, allow_zero=True):
    while True:
        den = rng.randint(1, max_den)
        num = rng.randint(lo * den, hi * den)
        q = Fraction(num, den)
        if allow_zero or q != 0:
            return q


def random_tree(rng, n_vertices, marked_fraction=1.0, max_den=4, arith=EXACT):
    """Random recursive tree with rational weights in (0, 10].

    With ``marked_fraction < 1`` some degree-2 vertices are left unmarked;
    leaves, branching points and the root are always marked.
    """
    edges = []
    for v in range(1, n_vertices):
        u = rng.randrange(v)
        edges.append((u, v, random_rational(rng, 0, 10, max_den, allow_zero=False)))
    degree = [0] * n_vertices
    for u, v, _ in edges:
        degree[u] += 1
        degree[v] += 1
    marked = {v for v in range(n_vertices)
              if v == 0 or degree[v] != 2 or rng.random() < marked_fraction}
    return WeightedTree.from_edges(0, edges, marked=marked, arith=arith)


def random_tree_metric(rng, n_points, max_den=4, steiner=True):
    """Metric on ``n_points`` leaves/vertices of a random tree (exact).

    With ``steiner`` the tree is built on extra hidden vertices so that the
    metric has genuine branching points outside the point set.
    """
    n_vertices = 2 * n_points - 2 if steiner and n_points > 2 else n_points
    while True:
        T = random_tree(rng, max(n_vertices, 1), max_den=max_den)
        M = induced_metric(T)
        if M.n >= n_points:
            break
    leaves = [M.index(v) for v in T.leaves]
    others = [i for i in range(M.n) if i not in leaves]
    rng.shuffle(others)
    keep = sorted((leaves + others)[:n_points]) if len(leaves) < n_points else sorted(rng.sample(leaves, n_points))
    base = keep[rng.randrange(len(keep))]
    return M.submetric(keep, base=base)


def random_molecule(rng, M, lo=-5, hi=5, max_den=3, density=0.8):
    coeffs = {p: random_rational(rng, lo, hi, max_den) for p in M.points if rng.random() < density}
    return Molecule.on(M, coeffs)


def random_triangle(rng, max_den=6):
    """Three rational distances satisfying the triangle inequality, all positive."""
    while True:
        d01, d02, d12 = (random_rational(rng, 0, 10, max_den, allow_zero=False) for _ in range(3))
        if d01 <= d02 + d12 and d02 <= d01 + d12 and d12 <= d01 + d02:
            return d01, d02, d12


def _pythagorean_angle(rng, max_t=12):
    # sin and cos of the half-angle are both rational
    t = Fraction(rng.randint(-max_t, max_t), rng.randint(1, max_t))
    return (2 * t / (1 + t * t), (1 - t * t) / (1 + t * t))


def concyclic_rational_metric(rng, n_points=4, max_radius=5):
    """Euclidean metric of points on a circle with all distances rational.

    A point at angle 2*phi with rational sin(phi), cos(phi) has rational
    coordinates, and the chord between two such points is
    ``2 r |sin(phi1 - phi2)|``, which is rational too.
    """
    r = Fraction(rng.randint(1, 4 * max_radius), 4)
    by_point = {}
    while len(by_point) < n_points:
        s, c = _pythagorean_angle(rng)
        # half-angles phi and phi + pi give the same point
        by_point.setdefault((c * c - s * s, 2 * s * c), (s, c))
    halves = sorted(by_point.values())
    rows = []
    for s1, c1 in halves:
        row = []
        for s2, c2 in halves:
            row.append(2 * r * abs(s1 * c2 - c1 * s2))
        rows.append(row)
    M = validate_metric(rows, arith=EXACT)
    # cross-check the closed form against exact Euclidean coordinates
    pts = [(r * (c * c - s * s), r * 2 * s * c) for s, c in halves]
    assert metric_from_points(pts, norm="l2", arith=EXACT).same_as(M)
    return M


def perturbed_metric(rng, M, scale=Fraction(1, 4)):
    """Random symmetric rational bump of ``M``, repaired into a metric.

    Each distance grows by up to ``scale``; shortest-path closure then
    restores the triangle inequality.  Distances never drop below the
    original ones, so the result is a genuine metric on the same points.
    """
    D = np.array([[Fraction(v) for v in row] for row in M.d], dtype=object).reshape(M.n, M.n)
    for i in range(M.n):
        for j in range(i + 1, M.n):
            D[i, j] = D[j, i] = D[i, j] + random_rational(rng, 0, 1, 4) * Fraction(scale)
    for k in range(M.n):
        D = np.minimum(D, D[:, k, None] + D[None, k, :])
    return validate_metric(D.tolist(), base=M.base, points=M.points)


def random_integer_metric(rng, n_points, lo=1, hi=10):
    """Random positive integer matrix repaired into a metric by shortest paths."""
    rows = [[0] * n_points for _ in range(n_points)]
    for i in range(n_points):
        for j in range(i + 1, n_points):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    for k in range(n_points):
        for i in range(n_points):
            for j in range(n_points):
                rows[i][j] = min(rows[i][j], rows[i][k] + rows[k][j])
    return validate_metric(rows)


def random_glued_points(rng, n_parts, max_part=4, spread=Fraction(1), gap=10):
    """Clustered points in the plane with the l1 metric, plus their partition.

    Part ``g`` sits near ``(gap * g, 0)`` with jitter ``spread``; the global
    base point is the first point of part 0.
    """
    coords, partition = [], {}
    for g in range(n_parts):
        size = rng.randint(1, max_part)
        for _ in range(size):
            label = len(coords)
            coords.append((gap * g + random_rational(rng, 0, 1, 4) * spread,
                           random_rational(rng, 0, 1, 4) * spread))
            partition[label] = g
    # distinct coordinates only
    seen, keep = set(), []
    for i, c in enumerate(coords):
        if c not in seen:
            seen.add(c)
            keep.append(i)
    coords = [coords[i] for i in keep]
    partition = {new: partition[old] for new, old in enumerate(keep)}
    M = metric_from_points(coords, norm="l1", arith=EXACT)
    return M, partition


def rng_from(seed):
    return random.Random(seed)
