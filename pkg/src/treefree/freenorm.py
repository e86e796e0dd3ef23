"""Norms of finitely supported elements of the Lipschitz-free space.

Four independent routes to the same number:

* :func:`lp_norm` maximizes the pairing against 1-Lipschitz functions
  vanishing at the base point (a linear program in the function values);
* :func:`flow_norm` computes the cheapest transport of the molecule's mass,
  with the base point absorbing the surplus;
* :func:`cut_norm` reads the norm off a tree realization as an l1 sum of
  edge-weighted cut masses;
* :func:`three_point_norm`, :func:`discrete_norm` and :func:`line_norm` are
  closed forms for three-point spaces, discrete spaces and subsets of R.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .embedding import build_tree
from .errors import (
    FourPointViolation,
    NotALine,
    TriangleViolation,
    UnboundedObjective,
    UnsortedInput,
    UnsupportedPoint,
)
from .metric import four_point_check
from .scalar import EXACT
from .simplex import solve_canonical

__all__ = [
    "Molecule",
    "NormResult",
    "lp_norm",
    "flow_norm",
    "cut_norm",
    "cut_vector",
    "three_point_norm",
    "discrete_norm",
    "line_norm",
    "line_positions",
    "verify_certificate",
    "norm",
    "cross_validate",
    "METHODS",
]

METHODS = ("lp", "flow", "tree-cut", "line", "three-point", "discrete")


@dataclass(frozen=True)
class Molecule:
    """Finitely supported combination of point evaluations.

    ``coeffs`` maps point labels to nonzero coefficients.  Build with
    :meth:`on`, which drops the base point (its evaluation is zero).
    """

    coeffs: dict = field(default_factory=dict)

    @classmethod
    def on(cls, M, mapping):
        out = {}
        for label, value in dict(mapping).items():
            if label not in M.points:
                raise UnsupportedPoint(label)
            if label == M.base_label:
                continue
            v = M.arith.coerce(value)
            if not M.arith.is_zero(v):
                out[label] = v
        return cls(out)

    @classmethod
    def delta(cls, M, x, y=None):
        """``delta_x`` or ``delta_x - delta_y``."""
        m = {x: 1}
        if y is not None:
            m[y] = m.get(y, 0) - 1
        return cls.on(M, m)

    @property
    def mass(self):
        return sum(self.coeffs.values())

    def vector(self, M):
        """Dense coefficients aligned with ``M.points``; the base entry is zero."""
        vec = np.array([M.arith.zero()] * M.n, dtype=M.arith.dtype)
        for label, value in self.coeffs.items():
            if label not in M.points:
                raise UnsupportedPoint(label)
            i = M.index(label)
            if i != M.base:
                vec[i] = vec[i] + value
        return vec

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Molecule({k: v for k, v in out.items() if v != 0})

    def __neg__(self):
        return Molecule({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return Molecule({k: c * v for k, v in self.coeffs.items() if c * v != 0})

    __rmul__ = __mul__


@dataclass(frozen=True)
class NormResult:
    value: object
    method: str
    certificate: dict = None


def _lipschitz_lp_exact(M, mu):
    """Exact LP in the shifted variables g(x) = f(x) + d(base, x) >= 0.

    The shift makes every right-hand side nonnegative (triangle inequality),
    so the all-slack basis is feasible and no phase one is needed.
    """
    b0 = M.base
    idx = [i for i in range(M.n) if i != b0]
    D = M.d
    col = {i: k for k, i in enumerate(idx)}
    A, rhs = [], []
    for x in idx:
        for y in idx:
            if x == y:
                continue
            row = [0] * len(idx)
            row[col[x]], row[col[y]] = 1, -1
            A.append(row)
            rhs.append(D[x, y] + D[b0, x] - D[b0, y])
    for x in idx:
        row = [0] * len(idx)
        row[col[x]] = 1
        A.append(row)
        rhs.append(2 * D[b0, x])
    c = [mu[x] for x in idx]
    sol = solve_canonical(c, A, rhs)
    f = np.array([Fraction(0)] * M.n, dtype=object)
    for x in idx:
        f[x] = sol.x[col[x]] - D[b0, x]
    value = sol.value - sum((mu[x] * D[b0, x] for x in idx), Fraction(0))
    return value, f


def _lipschitz_lp_float(M, mu):
    from scipy.optimize import linprog

    b0 = M.base
    idx = [i for i in range(M.n) if i != b0]
    col = {i: k for k, i in enumerate(idx)}
    D = M.d.astype(float)
    A, rhs = [], []
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            x, y = idx[a], idx[b]
            row = np.zeros(len(idx))
            row[col[x]], row[col[y]] = 1.0, -1.0
            A.append(row)
            rhs.append(D[x, y])
            A.append(-row)
            rhs.append(D[x, y])
    bounds = [(-D[b0, x], D[b0, x]) for x in idx]
    c = -np.array([float(mu[x]) for x in idx])
    res = linprog(c, A_ub=np.array(A) if A else None, b_ub=np.array(rhs) if rhs else None,
                  bounds=bounds, method="highs")
    if res.status == 3:
        raise UnboundedObjective("Lipschitz LP reported unbounded")
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    f = np.zeros(M.n)
    f[idx] = res.x
    return float(-res.fun), f


def lp_norm(M, mu):
    """Supremum of ``sum mu(x) f(x)`` over 1-Lipschitz f with f(base) = 0.

    Exact mode pivots exactly in rationals; float mode uses HiGHS.  The
    certificate is an optimal f keyed by point label.
    """
    vec = mu.vector(M)
    if M.n == 1:
        return NormResult(M.arith.zero(), "lp", {"f": {M.base_label: M.arith.zero()}})
    value, f = (_lipschitz_lp_exact if M.arith.exact else _lipschitz_lp_float)(M, vec)
    return NormResult(value, "lp", {"f": dict(zip(M.points, f.tolist()))})


def flow_norm(M, mu):
    """Minimum transport cost of ``mu``, with the base point absorbing the net mass.

    Mass moves from positive to negative coefficients (the base counts with
    coefficient ``-mass``).  Direct shipping is optimal on a metric, so the
    transport runs on the bipartite source/sink graph by successive shortest
    augmenting paths.  The certificate holds the flow and a dual potential.
    """
    ar = M.arith
    n, b0 = M.n, M.base
    net = list(mu.vector(M))
    net[b0] = -sum(net, ar.zero())
    sources = [i for i in range(n) if ar.gt(net[i], 0)]
    sinks = [i for i in range(n) if ar.lt(net[i], 0)]
    supply = {i: net[i] for i in sources}
    demand = {j: -net[j] for j in sinks}
    flow = {}
    D = M.d

    while any(ar.gt(supply[i], 0) for i in sources):
        # Bellman-Ford from all sources that still have supply
        dist = {i: (ar.zero() if ar.gt(supply[i], 0) else None) for i in sources}
        dist.update({j: None for j in sinks})
        pred = {}
        for _ in range(len(sources) + len(sinks)):
            changed = False
            for i in sources:
                if dist[i] is None:
                    continue
                for j in sinks:
                    nd = dist[i] + D[i, j]
                    if dist[j] is None or ar.lt(nd, dist[j]):
                        dist[j], pred[j] = nd, i
                        changed = True
            for (i, j), t in flow.items():
                if dist[j] is None or not ar.gt(t, 0):
                    continue
                nd = dist[j] - D[i, j]
                if dist[i] is None or ar.lt(nd, dist[i]):
                    dist[i], pred[i] = nd, j
                    changed = True
            if not changed:
                break
        open_sinks = [j for j in sinks if ar.gt(demand[j], 0) and dist[j] is not None]
        if not open_sinks:
            raise RuntimeError("transport problem is infeasible; mass balance is broken")
        target = min(open_sinks, key=lambda j: (dist[j], j))

        path, v = [target], target
        while v in pred:
            v = pred[v]
            path.append(v)
            if len(path) > n + 1:
                raise RuntimeError("cycle in shortest-path tree")
        path.reverse()
        origin = path[0]
        amount = min(supply[origin], demand[target])
        for a, b in zip(path, path[1:]):
            if a in demand and b in supply:  # backward arc along existing flow b -> a
                amount = min(amount, flow[(b, a)])
        for a, b in zip(path, path[1:]):
            if a in supply and b in demand:
                flow[(a, b)] = flow.get((a, b), ar.zero()) + amount
            else:
                flow[(b, a)] = flow[(b, a)] - amount
        supply[origin] -= amount
        demand[target] -= amount

    flow = {k: v for k, v in flow.items() if ar.gt(v, 0)}
    value = sum((t * D[i, j] for (i, j), t in flow.items()), ar.zero())
    potential = _dual_potential(M, flow)
    return NormResult(value, "flow", {
        "flow": {(M.points[i], M.points[j]): t for (i, j), t in flow.items()},
        "f": dict(zip(M.points, potential)),
    })


def _dual_potential(M, flow):
    """1-Lipschitz f, zero at the base, tight on every arc carrying flow.

    Shortest-path distances in the residual graph of an optimal flow
    (complete graph forward, flow arcs backward) give such a potential.
    """
    ar, n, D = M.arith, M.n, M.d
    dist = [ar.zero()] * n
    back = [(i, j) for (i, j) in flow]
    for _ in range(n + 1):
        changed = False
        for x in range(n):
            for y in range(n):
                if x != y and ar.lt(dist[x] + D[x, y], dist[y]):
                    dist[y] = dist[x] + D[x, y]
                    changed = True
        for i, j in back:
            if ar.lt(dist[j] - D[i, j], dist[i]):
                dist[i] = dist[j] - D[i, j]
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("negative cycle in residual graph: flow is not optimal")
    return [dist[M.base] - dist[x] for x in range(n)]


def verify_certificate(M, mu, result):
    """Check a certificate: feasibility of f (and of the flow) and matching objectives."""
    ar = M.arith
    cert = result.certificate or {}
    vec = mu.vector(M)
    ok = True
    if "f" in cert:
        f = [cert["f"][p] for p in M.points]
        ok &= ar.is_zero(f[M.base])
        for i in range(M.n):
            for j in range(i + 1, M.n):
                ok &= ar.le(abs(f[i] - f[j]), M.d[i, j])
        ok &= ar.eq(sum((vec[i] * f[i] for i in range(M.n)), ar.zero()), result.value)
    if "flow" in cert:
        div = [ar.zero()] * M.n
        cost = ar.zero()
        for (a, b), t in cert["flow"].items():
            i, j = M.index(a), M.index(b)
            ok &= ar.ge(t, 0)
            div[i] += t
            div[j] -= t
            cost += t * M.d[i, j]
        for i in range(M.n):
            if i != M.base:
                ok &= ar.eq(div[i], vec[i])
        ok &= ar.eq(cost, result.value)
    return bool(ok)


def cut_vector(R, mu):
    """l1 coordinates of ``mu``: ``w(e) * mu(C_e)`` for each edge in vertex order."""
    T = R.tree
    mass = {v: T.arith.zero() for v in T.order}
    for label, value in mu.coeffs.items():
        if label not in R.point_map:
            raise UnsupportedPoint(label)
        if label == R.metric.base_label:
            continue
        mass[R.point_map[label]] += value
    below = {}
    for v in reversed(T.order):
        below[v] = mass[v] + sum((below[c] for c in T.children[v]), T.arith.zero())
    return [T.weight[c] * below[c] for c in T.order[1:]]


def cut_norm(R, mu):
    """Sum over edges of ``w(e) * |mu(C_e)|`` on a tree realization."""
    g = cut_vector(R, mu)
    return NormResult(sum((abs(v) for v in g), R.tree.arith.zero()), "tree-cut", {"g": g})


def three_point_norm(d01, d02, d12, a1, a2, arith=EXACT):
    """Norm of ``a1 delta_1 + a2 delta_2`` on the three-point space {0, 1, 2}."""
    d01, d02, d12, a1, a2 = (arith.coerce(v) for v in (d01, d02, d12, a1, a2))
    sides = {(0, 1): d01, (0, 2): d02, (1, 2): d12}

    def dd(i, j):
        return 0 if i == j else sides[(min(i, j), max(i, j))]

    for i, j, k in [(i, j, k) for i in range(3) for j in range(3) for k in range(3)]:
        if arith.gt(dd(i, k), dd(i, j) + dd(j, k)):
            raise TriangleViolation((i, j, k))
    lam0 = arith.half(d01 + d02 - d12)
    lam1 = arith.half(d01 + d12 - d02)
    lam2 = arith.half(d02 + d12 - d01)
    return lam0 * abs(a1 + a2) + lam1 * abs(a1) + lam2 * abs(a2)


def discrete_norm(alpha, arith=EXACT):
    """Norm of ``sum alpha_i delta_i`` on n+1 points at mutual distance 1."""
    alpha = [arith.coerce(a) for a in alpha]
    zero = arith.zero()
    return arith.half(abs(sum(alpha, zero))) + arith.half(sum((abs(a) for a in alpha), zero))


def line_norm(positions, mu, arith=EXACT):
    """Norm on a finite subset of R containing the base point 0.

    ``mu`` maps positions to coefficients, or is a sequence aligned with
    ``positions``.  Each gap between consecutive points contributes its
    length times the absolute mass beyond it, seen from 0.
    """
    pos = [arith.coerce(p) for p in positions]
    if any(not a < b for a, b in zip(pos, pos[1:])):
        raise UnsortedInput("positions must be strictly increasing")
    if 0 not in pos:
        raise ValueError("positions must contain the base point 0")
    if isinstance(mu, Molecule):
        mu = mu.coeffs
    if isinstance(mu, dict):
        coef = [arith.zero()] * len(pos)
        for p, v in mu.items():
            p = arith.coerce(p)
            if p not in pos:
                raise UnsupportedPoint(p)
            coef[pos.index(p)] += arith.coerce(v)
    else:
        coef = [arith.coerce(v) for v in mu]
        if len(coef) != len(pos):
            raise ValueError("coefficient sequence must match positions")
    zero = arith.zero()
    total = zero
    for k in range(len(pos) - 1):
        lo, hi = pos[k], pos[k + 1]
        beyond = coef[:k + 1] if hi <= 0 else coef[k + 1:]
        total += (hi - lo) * abs(sum(beyond, zero))
    return total


def line_positions(M):
    """Coordinates placing ``M`` isometrically in R with the base at 0.

    Raises NotALine when no such placement exists.
    """
    try:
        R = build_tree(M)
    except FourPointViolation:
        raise NotALine("metric is not even a tree metric") from None
    T = R.tree
    if any(T.degree(v) > 2 for v in T.order):
        raise NotALine("tree realization branches")
    sign = {}
    for k, c in enumerate(T.children[T.root]):
        stack = [c]
        while stack:
            v = stack.pop()
            sign[v] = 1 if k == 0 else -1
            stack.extend(T.children[v])
    return [T.depth[v] * sign.get(v, 0) for v in (R.point_map[p] for p in M.points)]


def _line_result(M, mu):
    pos = line_positions(M)
    order = sorted(range(M.n), key=lambda i: pos[i])
    vec = mu.vector(M)
    return NormResult(line_norm([pos[i] for i in order], [vec[i] for i in order], M.arith), "line")


def norm(M, mu, method="auto"):
    """Dispatch by method name; ``auto`` uses the tree cut formula on tree metrics."""
    if method == "auto":
        method = "tree-cut" if four_point_check(M).holds else "lp"
    if method == "lp":
        return lp_norm(M, mu)
    if method == "flow":
        return flow_norm(M, mu)
    if method in ("tree", "tree-cut"):
        return cut_norm(build_tree(M), mu)
    if method == "line":
        return _line_result(M, mu)
    raise ValueError(f"unknown method {method!r}")


def cross_validate(M, mu, tol_factor=10):
    """Run every applicable method; return ``(results, agree)``.

    Agreement is exact in exact mode and within ``tol_factor * eps`` in float
    mode.
    """
    results = {"lp": lp_norm(M, mu), "flow": flow_norm(M, mu)}
    if four_point_check(M).holds:
        results["tree-cut"] = cut_norm(build_tree(M), mu)
        try:
            results["line"] = _line_result(M, mu)
        except NotALine:
            pass
    ar = M.arith
    ref = results["lp"].value
    if ar.exact:
        agree = all(r.value == ref for r in results.values())
    else:
        agree = all(abs(r.value - ref) <= tol_factor * ar.eps for r in results.values())
    return results, agree
