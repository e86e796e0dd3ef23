"""Weighted-tree realizations of tree metrics."""

from dataclasses import dataclass

from .errors import FourPointViolation, NegativeAttachment
from .metric import four_point_check, gromov_product
from .tree import WeightedTree, induced_metric, path_distance

__all__ = ["TreeRealization", "build_tree", "l1_coordinates", "realization_of", "CHECK_FIRST_LIMIT"]

# above this size the O(n^4) scan costs more than building and verifying
CHECK_FIRST_LIMIT = 200


@dataclass(frozen=True, eq=False)
class TreeRealization:
    """A weighted tree together with an isometric placement of a metric's points.

    ``point_map`` sends each point label to its vertex; the base point goes to
    the root.  Unmapped vertices are Steiner points, all of them branching.
    """

    tree: WeightedTree
    point_map: dict
    metric: object

    @property
    def vertex_count(self):
        return len(self.tree.order)


def realization_of(T):
    """View a weighted tree as the realization of its own induced metric."""
    return TreeRealization(T, {v: v for v in T.marked_order}, induced_metric(T))


def _steiner_names(taken):
    k = 0
    while True:
        name = f"s{k}"
        k += 1
        if name not in taken:
            yield name


def build_tree(M, check=None):
    """Realize a four-point metric as a weighted tree with at most 2n-2 vertices.

    Points are inserted in index order after the base.  A new point p hangs
    off the current tree at distance ``max_x (p|x)_base`` from the root along
    the path to the maximizing x (smallest index on ties), splitting an edge
    with a Steiner vertex when needed.  The result is checked against every
    pairwise distance before it is returned.

    ``check`` forces (True) or skips (False) the up-front four-point scan;
    by default it runs for spaces up to ``CHECK_FIRST_LIMIT`` points.
    """
    ar = M.arith
    n = M.n
    if check is None:
        check = n <= CHECK_FIRST_LIMIT
    if check:
        verdict = four_point_check(M)
        if not verdict.holds:
            raise FourPointViolation(verdict)

    labels = M.points
    root = labels[M.base]
    names = _steiner_names({str(p) for p in labels} | set(labels))
    parent, weight, depth = {}, {}, {root: ar.zero()}
    order = [root]
    steiner = set()

    def relabel(old, new):
        for v, p in parent.items():
            if p == old:
                parent[v] = new
        if old in parent:
            parent[new] = parent.pop(old)
            weight[new] = weight.pop(old)
        depth[new] = depth.pop(old)
        order[order.index(old)] = new
        steiner.discard(old)

    placed = [M.base]
    for p in range(n):
        if p == M.base:
            continue
        best, xstar = ar.zero(), M.base
        for x in sorted(placed):
            g = gromov_product(M, p, x, M.base)
            if ar.gt(g, best):
                best, xstar = g, x
        s = best

        # walk up from x* to the last vertex at depth <= s
        child, v = None, labels[xstar]
        while ar.gt(depth[v], s):
            child, v = v, parent[v]
        if ar.eq(depth[v], s) or child is None:
            anchor = v
        elif ar.eq(depth[child], s):
            anchor = child
        else:
            anchor = next(names)
            steiner.add(anchor)
            parent[anchor], weight[anchor], depth[anchor] = v, s - depth[v], s
            parent[child], weight[child] = anchor, depth[child] - s
            order.insert(order.index(child), anchor)

        hang = M.d[M.base, p] - s
        if ar.lt(hang, 0):
            raise NegativeAttachment(f"point {labels[p]!r} would hang at negative length {hang}")
        if ar.is_zero(hang):
            if anchor not in steiner:
                raise NegativeAttachment(f"point {labels[p]!r} lands on existing point {anchor!r}")
            relabel(anchor, labels[p])
        else:
            parent[labels[p]], weight[labels[p]] = anchor, hang
            depth[labels[p]] = depth[anchor] + hang
            order.append(labels[p])
        placed.append(p)

    edges = [(parent[v], v, weight[v]) for v in order[1:]]
    tree = WeightedTree.from_edges(root, edges, marked=set(labels) | steiner, arith=ar, vertices=order)
    realization = TreeRealization(tree, {p: p for p in labels}, M)

    for i in range(n):
        for j in range(i + 1, n):
            if not ar.eq(path_distance(tree, labels[i], labels[j]), M.d[i, j]):
                verdict = four_point_check(M)
                if not verdict.holds:
                    raise FourPointViolation(verdict)
                raise NegativeAttachment(f"realization misses d({labels[i]!r},{labels[j]!r}) beyond tolerance")
    if n >= 2 and len(tree.order) > 2 * n - 2:
        raise AssertionError(f"realization has {len(tree.order)} vertices for {n} points")
    return realization


def l1_coordinates(R):
    """Edges of the realization with their weights, in vertex order.

    These are the coordinates of the isometric embedding of the free space
    into l1^N, N <= 2n - 3; the cut sets of the same edges give the map.
    """
    return [((p, c), w) for p, c, w in R.tree.edges()]
