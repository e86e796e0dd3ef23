"""Central symmetry of the faces of a four-point Lipschitz ball.

For four points a0..a3 the unit ball of Lip_0 is a polytope in R^3 with
coordinates (f(a1), f(a2), f(a3)).  Its face where ``f(a3) = d03`` is the
planar region

    a <= x <= b,   c <= y <= d,   x + e <= y <= x + f

with ``a = d03 - d13, b = d01, c = d03 - d23, d = d02, e = -d12, f = d12``.
That region is empty or centrally symmetric exactly when one of nine linear
conditions holds.  :func:`classify_nine` evaluates them and
:func:`brute_symmetry` checks the same property by enumerating the polygon.

Each unordered pairing of the four points is put in the (a0, a3) slot once,
so a quadruple yields three faces; all three are symmetric exactly when the
quadruple satisfies the four-point condition.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations

from .errors import TriangleViolation
from .scalar import EXACT

__all__ = [
    "FaceRegion",
    "SymmetryReport",
    "LabelingReport",
    "QuadrupleReport",
    "NINE_CONDITIONS",
    "face_region",
    "classify_nine",
    "polygon_vertices",
    "brute_symmetry",
    "distance_conditions",
    "quadruple_faces",
]

NINE_CONDITIONS = (
    "b<=a",
    "d<=c",
    "f<=e",
    "d<=a+e",
    "b+f<=c",
    "a+b+e+f=c+d",
    "d<=a+f & b+e<=c",
    "b+f<=d & c<=a+e",
    "a+f<=c & d<=b+e",
)

SHAPES = ("empty", "segment", "rectangle", "parallelogram", "symmetric-hexagon", "asymmetric")


@dataclass(frozen=True)
class FaceRegion:
    a: object
    b: object
    c: object
    d: object
    e: object
    f: object
    arith: object = EXACT

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, self.arith.coerce(getattr(self, name)))

    def astuple(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)


@dataclass(frozen=True)
class SymmetryReport:
    symmetric_or_empty: bool
    fired_conditions: tuple
    shape: str
    vertices: tuple = ()


def face_region(d01, d02, d03, d12, d13, d23, arith=EXACT):
    """Region parameters of the face ``f(a3) = d03``; the six distances must be a metric."""
    d01, d02, d03, d12, d13, d23 = (arith.coerce(v) for v in (d01, d02, d03, d12, d13, d23))
    D = {(0, 1): d01, (0, 2): d02, (0, 3): d03, (1, 2): d12, (1, 3): d13, (2, 3): d23}

    def dist(i, j):
        return 0 if i == j else D[(min(i, j), max(i, j))]

    for i in range(4):
        for j in range(4):
            for k in range(4):
                if arith.gt(dist(i, k), dist(i, j) + dist(j, k)):
                    raise TriangleViolation((i, j, k))
    return FaceRegion(d03 - d13, d01, d03 - d23, d02, -d12, d12, arith)


def _nine(R):
    ar = R.arith
    a, b, c, d, e, f = R.astuple()
    le, eq = ar.le, ar.eq
    return tuple(bool(x) for x in (
        le(b, a),
        le(d, c),
        le(f, e),
        le(d, a + e),
        le(b + f, c),
        eq(a + b + e + f, c + d),
        le(d, a + f) and le(b + e, c),
        le(b + f, d) and le(c, a + e),
        le(a + f, c) and le(d, b + e),
    ))


def polygon_vertices(R):
    """Vertices of the region in counterclockwise order (empty tuple if empty).

    Every vertex is the intersection of two of the six boundary lines, so the
    pairwise intersections that satisfy all six constraints are exactly the
    vertex set.
    """
    ar = R.arith
    a, b, c, d, e, f = R.astuple()
    # p*x + q*y <= r
    halfplanes = [(-1, 0, -a), (1, 0, b), (0, -1, -c), (0, 1, d), (1, -1, -e), (-1, 1, f)]
    pts = []
    for (p1, q1, r1), (p2, q2, r2) in combinations(halfplanes, 2):
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        x = (r1 * q2 - r2 * q1) / det
        y = (p1 * r2 - p2 * r1) / det
        if all(ar.le(p * x + q * y, r) for p, q, r in halfplanes):
            if not any(ar.eq(x, u) and ar.eq(y, v) for u, v in pts):
                pts.append((x, y))
    if len(pts) <= 2:
        return tuple(pts)
    k = len(pts)
    cx = sum(p[0] for p in pts) / k
    cy = sum(p[1] for p in pts) / k

    def half(p):
        x, y = p[0] - cx, p[1] - cy
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return tuple(sorted(pts, key=cmp_to_key(cmp)))


def _centrally_symmetric(R, verts):
    ar = R.arith
    k = len(verts)
    if k <= 2:
        return True
    if k % 2:
        return False
    h = k // 2
    sx, sy = verts[0][0] + verts[h][0], verts[0][1] + verts[h][1]
    return all(ar.eq(verts[i][0] + verts[i + h][0], sx) and ar.eq(verts[i][1] + verts[i + h][1], sy)
               for i in range(h))


def brute_symmetry(R):
    """Empty-or-centrally-symmetric by explicit vertex enumeration."""
    return bool(_centrally_symmetric(R, polygon_vertices(R)))


def _shape(R, verts, symmetric):
    if not verts:
        return "empty"
    if len(verts) <= 2:
        return "segment"
    if not symmetric:
        return "asymmetric"
    if len(verts) == 4:
        ar = R.arith
        axis = all(ar.eq(p[0], q[0]) or ar.eq(p[1], q[1]) for p, q in zip(verts, verts[1:] + verts[:1]))
        return "rectangle" if axis else "parallelogram"
    if len(verts) == 6:
        return "symmetric-hexagon"
    return "asymmetric"


def classify_nine(R):
    """Evaluate the nine conditions; the shape is read off the actual polygon."""
    fired = tuple(i + 1 for i, ok in enumerate(_nine(R)) if ok)
    verts = polygon_vertices(R)
    return SymmetryReport(bool(fired), fired, _shape(R, verts, bool(fired)), verts)


@dataclass(frozen=True)
class LabelingReport:
    labeling: tuple
    region: FaceRegion
    report: SymmetryReport
    brute: bool
    cd: dict
    reduced: bool


@dataclass(frozen=True)
class QuadrupleReport:
    quadruple: tuple
    labelings: tuple
    four_point: bool

    @property
    def aggregate(self):
        """True when every face is empty or centrally symmetric."""
        return all(lab.report.symmetric_or_empty for lab in self.labelings)


def distance_conditions(d01, d02, d03, d12, d13, d23, arith=EXACT):
    """Conditions cd1-cd6 on a labelled quadruple, keyed ``"cd1"`` .. ``"cd6"``."""
    eq, le = arith.eq, arith.le
    conds = {
        "cd1": eq(d03, d01 + d13),
        "cd2": eq(d03, d02 + d23),
        "cd3": le(d01 + d23, d03 + d12) and le(d02 + d13, d03 + d12),
        "cd4": eq(d02, d01 + d12) and eq(d23, d12 + d13),
        "cd5": eq(d01, d02 + d12) and eq(d13, d12 + d23),
        "cd6": eq(d01 + d23, d02 + d13),
    }
    return {k: bool(v) for k, v in conds.items()}


def labelings(quad):
    """Three labelings (a0, a1, a2, a3) with pairings ij|kl, ik|jl, il|jk as (0,3)|(1,2)."""
    i, j, k, l = quad
    return ((i, k, l, j), (i, j, l, k), (i, j, k, l))


def quadruple_faces(M, quad):
    """Face symmetry, nine-condition and cd1-cd6 analysis for one 4-subset of ``M``."""
    quad = tuple(quad)
    if len(set(quad)) != 4:
        raise ValueError("need four distinct points")
    ar, D = M.arith, M.d
    out = []
    for lab in labelings(quad):
        p0, p1, p2, p3 = lab
        ds = (D[p0, p1], D[p0, p2], D[p0, p3], D[p1, p2], D[p1, p3], D[p2, p3])
        region = face_region(*ds, arith=ar)
        report = classify_nine(region)
        d01, d02, d03, d12, d13, d23 = ds
        reduced = bool(ar.le(d01 + d23, max(d02 + d13, d03 + d12)))
        out.append(LabelingReport(lab, region, report, brute_symmetry(region),
                                  distance_conditions(*ds, arith=ar), reduced))
    s = sorted(((D[quad[0], quad[1]] + D[quad[2], quad[3]]),
                (D[quad[0], quad[2]] + D[quad[1], quad[3]]),
                (D[quad[0], quad[3]] + D[quad[1], quad[2]])))
    return QuadrupleReport(quad, tuple(out), bool(ar.eq(s[1], s[2])))
