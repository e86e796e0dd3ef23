"""Free spaces of metric spaces glued from uniformly separated parts.

If every cross-part distance lies in ``[alpha, beta]``, the free space of the
whole is isomorphic to the l1-sum of the parts' free spaces plus one l1
coordinate per non-distinguished part (its total mass).  The isomorphism
constants are ``2 (alpha + beta + 1) / alpha`` one way and ``max(1, beta)``
the other.
"""

from dataclasses import dataclass

from .errors import BoundViolated, CrossSeparationZero, EmptyPart
from .freenorm import Molecule, lp_norm

__all__ = ["GluedSpace", "GluingReport", "validate_glued", "part_metric", "decomposed_norm",
           "check_gluing_bounds"]


@dataclass(frozen=True, eq=False)
class GluedSpace:
    """A metric with a partition, one base point per part, and the separation bounds.

    ``zero_part`` is the part holding the global base point; its base point
    is the global base.  ``alpha``/``beta`` are None when there is one part.
    """

    metric: object
    partition: dict
    base_points: dict
    zero_part: object
    alpha: object
    beta: object

    @property
    def parts(self):
        seen = []
        for p in self.metric.points:
            g = self.partition[p]
            if g not in seen:
                seen.append(g)
        return seen

    def members(self, part):
        return [p for p in self.metric.points if self.partition[p] == part]


def validate_glued(M, partition, base_points=None):
    """Check the partition and compute the tightest alpha (min) and beta (max)."""
    partition = dict(partition)
    missing = [p for p in M.points if p not in partition]
    if missing:
        raise ValueError(f"partition misses points {missing}")
    extra = [p for p in partition if p not in M.points]
    if extra:
        raise ValueError(f"partition names unknown points {extra}")
    base_points = dict(base_points or {})
    zero = partition[M.base_label]

    members = {}
    for p in M.points:
        members.setdefault(partition[p], []).append(p)
    for g in base_points:
        if g not in members:
            raise EmptyPart(f"part {g!r} has no points")
    if base_points.get(zero, M.base_label) != M.base_label:
        raise ValueError("the base point of the distinguished part must be the global base")
    chosen = {}
    for g, pts in members.items():
        b = M.base_label if g == zero else base_points.get(g, pts[0])
        if partition.get(b) != g:
            raise ValueError(f"base point {b!r} does not belong to part {g!r}")
        chosen[g] = b

    ar = M.arith
    alpha = beta = None
    for i in range(M.n):
        for j in range(i + 1, M.n):
            if partition[M.points[i]] == partition[M.points[j]]:
                continue
            v = M.d[i, j]
            alpha = v if alpha is None or v < alpha else alpha
            beta = v if beta is None or v > beta else beta
    if alpha is not None and not ar.gt(alpha, 0):
        raise CrossSeparationZero("two parts are at distance 0")
    return GluedSpace(M, partition, chosen, zero, alpha, beta)


def part_metric(G, part):
    """The part as a pointed metric space based at its chosen base point."""
    M = G.metric
    idx = [M.index(p) for p in G.members(part)]
    return M.submetric(idx, base=M.index(G.base_points[part]))


def decomposed_norm(G, mu):
    """Norm of the image of ``mu`` in the l1-sum decomposition.

    Each part contributes the free norm of its restriction (the base
    coefficient drops out) and every part except the distinguished one adds
    the absolute value of its total mass.
    """
    M = G.metric
    vec = mu.vector(M)
    ar = M.arith
    total = ar.zero()
    for g in G.parts:
        coeffs = {p: vec[M.index(p)] for p in G.members(g)}
        mass = sum(coeffs.values(), ar.zero())
        Mg = part_metric(G, g)
        total += lp_norm(Mg, Molecule.on(Mg, coeffs)).value
        if g != G.zero_part:
            total += abs(mass)
    return total


@dataclass(frozen=True)
class GluingReport:
    decomposed: object
    norm: object
    phi_constant: object
    psi_constant: object
    phi_ratio: object
    psi_ratio: object
    base_points: dict
    holds: bool


def check_gluing_bounds(G, mu, strict=True):
    """Compare the decomposed norm with the free norm against both constants.

    Checks ``decomposed <= 2 (alpha + beta + 1) / alpha * norm`` and
    ``norm <= max(1, beta) * decomposed``.  With ``strict`` a failure raises
    BoundViolated, since it can only come from a bug.
    """
    M = G.metric
    ar = M.arith
    dec = decomposed_norm(G, mu)
    nrm = lp_norm(M, mu).value
    if G.alpha is None:
        phi_c = psi_c = None
        holds = bool(ar.eq(dec, nrm))
    else:
        phi_c = 2 * (G.alpha + G.beta + 1) / G.alpha
        psi_c = max(ar.coerce(1), G.beta)
        holds = bool(ar.le(dec, phi_c * nrm) and ar.le(nrm, psi_c * dec))
    phi_r = dec / nrm if not ar.is_zero(nrm) else None
    psi_r = nrm / dec if not ar.is_zero(dec) else None
    report = GluingReport(dec, nrm, phi_c, psi_c, phi_r, psi_r, dict(G.base_points), holds)
    if strict and not holds:
        raise BoundViolated(f"gluing bound fails: {report}")
    return report
