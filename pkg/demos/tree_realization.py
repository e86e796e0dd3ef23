"""Rebuilding a weighted tree from its distance matrix."""

import random

from treefree import build_tree, induced_metric, l1_coordinates, to_newick, validate_metric
from treefree.generators import random_tree_metric
from treefree.tree import path_distance

# three points: a star whose arms are the Gromov products
M = validate_metric([[0, 3, 4], [3, 0, 5], [4, 5, 0]], points=["a", "b", "c"])
R = build_tree(M)
print(to_newick(R.tree))

# a larger example; Steiner vertices are named s0, s1, ...
rng = random.Random(7)
M = random_tree_metric(rng, 8)
R = build_tree(M)
print(to_newick(R.tree))
print("vertices:", R.vertex_count, "bound:", 2 * M.n - 2)

ok = all(path_distance(R.tree, R.point_map[x], R.point_map[y]) == M.dist(x, y)
         for x in M.points for y in M.points)
print("all distances reproduced:", ok)

# insertion order changes the drawing, never the distances
order = list(range(M.n))
rng.shuffle(order)
R2 = build_tree(M.permuted(order))
print("same metric after reordering:",
      induced_metric(R2.tree).submetric([induced_metric(R2.tree).index(R2.point_map[p]) for p in M.points])
      .same_as(M))

# one l1 coordinate per edge
print("l1 dimension:", len(l1_coordinates(R)))
