"""Four ways to compute the same norm, and a few closed forms."""

import random
from fractions import Fraction

from treefree import (
    Molecule,
    build_tree,
    cross_validate,
    cut_norm,
    discrete_metric,
    discrete_norm,
    flow_norm,
    line_metric,
    line_norm,
    lp_norm,
    three_point_norm,
    validate_metric,
)
from treefree.generators import random_molecule, random_tree_metric

M = validate_metric([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
mu = Molecule.on(M, {1: 2, 2: Fraction(-1, 2)})
print("three-point formula:", three_point_norm(3, 4, 5, 2, Fraction(-1, 2)))
print("exact LP:           ", lp_norm(M, mu).value)
print("min-cost flow:      ", flow_norm(M, mu).value)
print("tree cuts:          ", cut_norm(build_tree(M), mu).value)

# the LP comes with a Lipschitz witness f
print("witness f:", {k: str(v) for k, v in lp_norm(M, mu).certificate["f"].items()})

# discrete space: half the |sum| plus half the l1 norm
alpha = [1, -2, 3]
D = discrete_metric(4)
print(discrete_norm(alpha), lp_norm(D, Molecule.on(D, {1: 1, 2: -2, 3: 3})).value)

# subsets of the line
pos = [-2, 0, Fraction(1, 3), 5]
L = line_metric(pos)
coef = [1, 0, -1, 2]
print(line_norm(pos, coef), lp_norm(L, Molecule.on(L, dict(enumerate(coef)))).value)

# cross-validation on a random tree metric
rng = random.Random(3)
T = random_tree_metric(rng, 9)
results, agree = cross_validate(T, random_molecule(rng, T))
print({k: str(r.value) for k, r in results.items()}, "agree:", agree)
