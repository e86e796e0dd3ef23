"""Rooted weighted trees, gap weights, cut sets and discrete differentiation.

A :class:`WeightedTree` is the finite stand-in for a pointed R-tree.  Its
``marked`` vertices play the role of the subset A whose free space is being
described; the root is the base point and is always marked.  Every leaf and
every branching point must be marked, which is exactly what makes the cut
formula an isometry.
"""

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import TreeError
from .metric import FiniteMetric
from .scalar import EXACT

__all__ = [
    "WeightedTree",
    "path_distance",
    "induced_metric",
    "gap_weights",
    "nearest_marked_ancestor",
    "discrete_derivative",
    "integrate_derivative",
    "lipschitz_constant",
    "cut_sets",
    "reroot",
    "canonical",
    "to_dot",
    "to_newick",
    "tree_to_json",
    "tree_from_json",
]


@dataclass(frozen=True, eq=False)
class WeightedTree:
    """Rooted tree with strictly positive edge weights.

    ``order`` lists vertices with every parent before its children; ``parent``
    and ``weight`` are keyed by child.  Use :meth:`from_edges` to build one.
    """

    root: object
    order: tuple
    parent: dict
    weight: dict
    marked: frozenset
    arith: object = EXACT

    @classmethod
    def from_edges(cls, root, edges, marked=None, arith=EXACT, vertices=None):
        """Orient an undirected edge list ``(u, v, w)`` away from ``root``.

        Zero-weight edges are contracted; the merged vertex keeps the marked
        label (two marked vertices at distance 0 are an error).  When
        ``marked`` is None every vertex is marked.
        """
        edges = [(u, v, arith.coerce(w)) for u, v, w in edges]
        verts = list(vertices) if vertices is not None else []
        seen = set(verts)
        for v in [root] + [x for u, v, _ in edges for x in (u, v)]:
            if v not in seen:
                seen.add(v)
                verts.append(v)
        marks = set(verts) if marked is None else set(marked) | {root}
        if not marks <= seen:
            raise TreeError(f"marked vertices not in tree: {sorted(map(str, marks - seen))}")

        for u, v, w in edges:
            if arith.lt(w, 0):
                raise TreeError(f"negative weight on edge {u!r}-{v!r}")

        # contract zero-weight edges
        rep = {v: v for v in verts}

        def find(v):
            while rep[v] != v:
                rep[v] = rep[rep[v]]
                v = rep[v]
            return v

        for u, v, w in edges:
            if arith.is_zero(w):
                a, b = find(u), find(v)
                if a == b:
                    raise TreeError("cycle among zero-weight edges")
                if a in marks and b in marks:
                    raise TreeError(f"marked vertices {a!r} and {b!r} are at distance 0")
                if b in marks or (a not in marks and verts.index(b) < verts.index(a)):
                    a, b = b, a
                rep[b] = a
        if find(root) != root:
            raise TreeError("root was contracted away")
        kept = [v for v in verts if find(v) == v]
        adj = {v: [] for v in kept}
        for u, v, w in edges:
            if arith.is_zero(w):
                continue
            a, b = find(u), find(v)
            if a == b:
                raise TreeError(f"edge {u!r}-{v!r} closes a cycle")
            adj[a].append((b, w))
            adj[b].append((a, w))

        n_edges = sum(len(x) for x in adj.values()) // 2
        if n_edges != len(kept) - 1:
            raise TreeError(f"{len(kept)} vertices need {len(kept) - 1} edges, got {n_edges}")
        order, parent, weight = [root], {}, {}
        visited = {root}
        k = 0
        while k < len(order):
            u = order[k]
            k += 1
            for v, w in adj[u]:
                if v in visited:
                    continue
                visited.add(v)
                parent[v], weight[v] = u, w
                order.append(v)
        if len(order) != len(kept):
            raise TreeError("graph is not connected")
        marks = frozenset(find(v) for v in marks)
        tree = cls(root, tuple(order), parent, weight, marks, arith)
        tree._check_marks()
        return tree

    def _check_marks(self):
        for v in self.order:
            deg = self.degree(v)
            if v not in self.marked and (deg <= 1 or deg >= 3):
                kind = "leaf" if deg <= 1 else "branching point"
                raise TreeError(f"unmarked {kind} {v!r}")

    @cached_property
    def children(self):
        ch = {v: [] for v in self.order}
        for v in self.order[1:]:
            ch[self.parent[v]].append(v)
        return ch

    @cached_property
    def depth(self):
        dep = {self.root: self.arith.zero()}
        for v in self.order[1:]:
            dep[v] = dep[self.parent[v]] + self.weight[v]
        return dep

    def degree(self, v):
        return len(self.children[v]) + (v != self.root)

    def edges(self):
        """``(parent, child, weight)`` triples in vertex order."""
        return [(self.parent[v], v, self.weight[v]) for v in self.order[1:]]

    @property
    def branching_points(self):
        return [v for v in self.order if self.degree(v) >= 3]

    @property
    def leaves(self):
        return [v for v in self.order if self.degree(v) <= 1]

    @property
    def marked_order(self):
        return [v for v in self.order if v in self.marked]

    def total_weight(self):
        return sum(self.weight.values(), self.arith.zero())

    def ancestors(self, v):
        """Vertices from ``v`` up to the root, inclusive."""
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def __contains__(self, v):
        return v in self.parent or v == self.root

    def __repr__(self):
        return f"WeightedTree(root={self.root!r}, vertices={len(self.order)}, marked={len(self.marked)})"


def path_distance(T, u, v):
    """Sum of edge weights along the unique u-v path."""
    if u not in T or v not in T:
        raise KeyError(u if u not in T else v)
    up = set(T.ancestors(u))
    w = v
    while w not in up:
        w = T.parent[w]
    return T.depth[u] + T.depth[v] - 2 * T.depth[w]


def induced_metric(T):
    """Path metric on the marked vertices, based at the root."""
    pts = T.marked_order
    rows = [[path_distance(T, u, v) for v in pts] for u in pts]
    d = np.array(rows, dtype=T.arith.dtype).reshape(len(pts), len(pts))
    return FiniteMetric(tuple(pts), pts.index(T.root), d, T.arith)


def nearest_marked_ancestor(T):
    """Map each marked non-root vertex a to its nearest marked vertex strictly above it."""
    out = {}
    for a in T.marked_order:
        if a == T.root:
            continue
        v = T.parent[a]
        while v not in T.marked:
            v = T.parent[v]
        out[a] = v
    return out


def gap_weights(T):
    """Atom masses L(a) of the measure on the marked set.

    L(a) is the length of the gap between a and the next marked vertex on
    its root side.  The root carries no atom.
    """
    up = nearest_marked_ancestor(T)
    return {a: T.depth[a] - T.depth[b] for a, b in up.items()}


def discrete_derivative(T, f):
    """``f'(a) = (f(a) - f(a~)) / L(a)`` for every marked non-root ``a``."""
    if not T.arith.is_zero(f[T.root]):
        raise ValueError("f must vanish at the root")
    up = nearest_marked_ancestor(T)
    L = gap_weights(T)
    return {a: (f[a] - f[up[a]]) / L[a] for a in up}


def integrate_derivative(T, fprime):
    """Inverse of :func:`discrete_derivative`: sum ``L(b) f'(b)`` down the marked chain."""
    up = nearest_marked_ancestor(T)
    L = gap_weights(T)
    f = {T.root: T.arith.zero()}
    for a in T.marked_order:
        if a != T.root:
            f[a] = f[up[a]] + L[a] * fprime[a]
    return f


def lipschitz_constant(T, f):
    """Brute-force Lipschitz constant of ``f`` over all marked pairs."""
    pts = T.marked_order
    best = T.arith.zero()
    for i, u in enumerate(pts):
        for v in pts[i + 1:]:
            best = max(best, abs(f[u] - f[v]) / path_distance(T, u, v))
    return best


def cut_sets(T):
    """For each edge ``(parent, child)``, the marked vertices in the child's subtree."""
    below = {}
    for v in reversed(T.order):
        s = {v} if v in T.marked else set()
        for c in T.children[v]:
            s |= below[c]
        below[v] = s
    return {(T.parent[v], v): frozenset(below[v]) for v in T.order[1:]}


def reroot(T, new_root):
    """Same tree hung from another marked vertex."""
    if new_root not in T.marked:
        raise TreeError("the root must be a marked vertex")
    return WeightedTree.from_edges(new_root, T.edges(), marked=T.marked, arith=T.arith, vertices=T.order)


def canonical(T):
    """Contract unmarked degree-2 vertices into single edges."""
    edges, verts = [], [v for v in T.order if v in T.marked or T.degree(v) != 2]
    for v in T.order[1:]:
        if v not in verts:
            continue
        w, p = T.weight[v], T.parent[v]
        while p not in verts:
            w, p = w + T.weight[p], T.parent[p]
        edges.append((p, v, w))
    return WeightedTree.from_edges(T.root, edges, marked=T.marked, arith=T.arith, vertices=verts)


# ---------------------------------------------------------------- export


def _length(T, w):
    if T.arith.exact and w.denominator == 1:
        return str(w.numerator)
    return repr(float(w))


def _newick_label(v):
    s = str(v)
    if any(ch in s for ch in " ()[]':;,"):
        return "'" + s.replace("'", "''") + "'"
    return s


def to_newick(T):
    """Rooted Newick with branch lengths (lengths are decimal approximations)."""

    def rec(v):
        label = _newick_label(v)
        kids = T.children[v]
        inner = "(" + ",".join(rec(c) for c in kids) + ")" if kids else ""
        tail = f":{_length(T, T.weight[v])}" if v != T.root else ""
        return inner + label + tail

    return rec(T.root) + ";"


def to_dot(T, name="T"):
    lines = [f"graph {name} {{"]
    for v in T.order:
        attrs = []
        if v == T.root:
            attrs.append("shape=doublecircle")
        elif v not in T.marked:
            attrs.append("shape=point")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{v}"{suffix};')
    for p, c, w in T.edges():
        lines.append(f'  "{p}" -- "{c}" [label="{T.arith.format(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json_label(v):
    return v if isinstance(v, (str, int)) and not isinstance(v, bool) else str(v)


def tree_to_json(T):
    return {
        "root": _json_label(T.root),
        "vertices": [_json_label(v) for v in T.order],
        "edges": [
            {"u": _json_label(p), "v": _json_label(c), "w": T.arith.format(w) if T.arith.exact else float(w)}
            for p, c, w in T.edges()
        ],
        "marked": [_json_label(v) for v in T.marked_order],
    }


def tree_from_json(obj, arith=EXACT):
    if isinstance(obj, str):
        obj = json.loads(obj)
    edges = [(e["u"], e["v"], e["w"]) for e in obj["edges"]]
    return WeightedTree.from_edges(obj["root"], edges, marked=obj.get("marked"), arith=arith,
                                   vertices=obj.get("vertices"))
