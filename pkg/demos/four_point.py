"""Which finite metrics are tree metrics?"""

import random

from treefree import four_point_check, line_metric, metric_from_points
from treefree.generators import perturbed_metric, random_tree_metric
from treefree.metric import pair_sums

# points on a line always pass
print(four_point_check(line_metric([0, 1, 2, 5])))

# the corners of a Euclidean square do not
square = metric_from_points([(0, 0), (1, 0), (0, 1), (1, 1)], norm="l2")
v = four_point_check(square)
print("square:", v.holds, "witness", v.witness, "sums", [round(float(s), 4) for s in v.sums])

# any metric read off a weighted tree passes, exactly
rng = random.Random(1)
M = random_tree_metric(rng, 30)
print("tree metric on 30 points:", four_point_check(M).holds)

# nudge the distances and it breaks; the witness is the same with 1 or 4 threads
bad = perturbed_metric(rng, M)
v1, v4 = four_point_check(bad, threads=1), four_point_check(bad, threads=4)
print("perturbed:", v1.holds, v1.witness, v1 == v4)
s = pair_sums(bad, v1.witness)
print("  largest pair sum beats the others:", s[0] > max(s[1:]))
