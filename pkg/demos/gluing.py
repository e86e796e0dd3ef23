"""Spaces made of well-separated clusters."""

import random

from treefree import Molecule, check_gluing_bounds, decomposed_norm, metric_from_points, validate_glued
from treefree.generators import random_glued_points, random_molecule

M = metric_from_points([(0, 0), (1, 0), (10, 0), (10, 1)], norm="l1", labels=["p", "q", "r", "s"])
G = validate_glued(M, {"p": 0, "q": 0, "r": 1, "s": 1})
print("alpha", G.alpha, "beta", G.beta, "bases", G.base_points)

mu = Molecule.on(M, {"q": 1, "s": -1})
r = check_gluing_bounds(G, mu)
print("decomposed", r.decomposed, "norm", r.norm)
print("ratios", r.phi_ratio, "<=", r.phi_constant, "and", r.psi_ratio, "<=", r.psi_constant)

# a single unit of mass parked on another cluster's base point
print(decomposed_norm(G, Molecule.on(M, {"r": 1})))

rng = random.Random(5)
worst = 0
for _ in range(100):
    M, part = random_glued_points(rng, 3)
    G = validate_glued(M, part)
    r = check_gluing_bounds(G, random_molecule(rng, M))
    if r.phi_ratio is not None:
        worst = max(worst, r.phi_ratio / r.phi_constant)
print("worst observed ratio, as a fraction of its bound:", float(worst))
