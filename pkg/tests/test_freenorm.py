import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import integer_metrics, metric_and_molecule, rationals, tree_metrics
from treefree.embedding import build_tree
from treefree.errors import NotALine, TriangleViolation, UnsortedInput, UnsupportedPoint
from treefree.freenorm import (
    Molecule,
    cross_validate,
    cut_norm,
    discrete_norm,
    flow_norm,
    line_norm,
    line_positions,
    lp_norm,
    norm,
    three_point_norm,
    verify_certificate,
)
from treefree.generators import random_molecule, random_tree_metric
from treefree.metric import discrete_metric, line_metric, metric_from_points, validate_metric
from treefree.scalar import FLOAT
from treefree.tree import induced_metric

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def triangle(d01, d02, d12, arith=None):
    rows = [[0, d01, d02], [d01, 0, d12], [d02, d12, 0]]
    return validate_metric(rows) if arith is None else validate_metric(rows, arith=arith)


class TestMolecule:
    def test_base_coefficient_dropped(self):
        M = line_metric([0, 1, 2])
        assert Molecule.on(M, {0: 5, 1: 2, 2: 0}).coeffs == {1: 2}

    def test_unknown_point(self):
        with pytest.raises(UnsupportedPoint):
            Molecule.on(line_metric([0, 1]), {7: 1})

    def test_arithmetic(self):
        M = line_metric([0, 1, 2])
        a, b = Molecule.delta(M, 1), Molecule.delta(M, 2)
        assert (a - b).coeffs == {1: 1, 2: -1}
        assert (3 * a + b).mass == 4
        assert (a - a).coeffs == {}

    def test_vector(self):
        M = line_metric([-1, 0, 1])
        assert list(Molecule.delta(M, 0, 2).vector(M)) == [1, 0, -1]


class TestLp:
    def test_two_points(self):
        assert lp_norm(line_metric([0, 1]), Molecule.delta(line_metric([0, 1]), 1)).value == 1

    def test_equilateral_sum(self):
        M = discrete_metric(3)
        r = lp_norm(M, Molecule.on(M, {1: 1, 2: 1}))
        assert r.value == 2 == three_point_norm(1, 1, 1, 1, 1)
        assert verify_certificate(M, Molecule.on(M, {1: 1, 2: 1}), r)

    @given(integer_metrics(max_points=6), st.data())
    def test_isometric_embedding(self, M, data):
        x, y = data.draw(st.sampled_from(M.points)), data.draw(st.sampled_from(M.points))
        assert lp_norm(M, Molecule.delta(M, x, y)).value == M.dist(x, y)

    def test_zero(self):
        M = discrete_metric(4)
        r = lp_norm(M, Molecule())
        assert r.value == 0 and verify_certificate(M, Molecule(), r)

    def test_float_mode(self):
        M = metric_from_points(SQUARE, norm="l2")
        mu = Molecule.on(M, {3: 1})
        assert lp_norm(M, mu).value == pytest.approx(2 ** 0.5)


class TestFlow:
    def test_single_delta(self):
        M = line_metric([0, 2, 5])
        r = flow_norm(M, Molecule.delta(M, 1))
        assert r.value == 2
        assert sum(r.certificate["flow"].values()) == 1

    def test_dipole(self):
        M = validate_metric([[0, 3, 4], [3, 0, 5], [4, 5, 0]])
        r = flow_norm(M, Molecule.delta(M, 1, 2))
        assert r.value == 5
        assert verify_certificate(M, Molecule.delta(M, 1, 2), r)

    def test_random_six_point_tree(self):
        rng = random.Random(6)
        M = random_tree_metric(rng, 6)
        mu = Molecule.on(M, {p: rng.randint(-4, 4) for p in M.points})
        assert flow_norm(M, mu).value == lp_norm(M, mu).value

    @given(metric_and_molecule(integer_metrics(max_points=7)))
    def test_primal_dual_agree(self, inst):
        M, mu = inst
        lp, fl = lp_norm(M, mu), flow_norm(M, mu)
        assert lp.value == fl.value
        assert verify_certificate(M, mu, lp) and verify_certificate(M, mu, fl)

    @given(metric_and_molecule(integer_metrics(max_points=6)))
    def test_float_routes_agree(self, inst):
        M, mu = inst
        Mf = validate_metric(M.d.tolist(), base=M.base, points=M.points, arith=FLOAT)
        muf = Molecule.on(Mf, {k: float(v) for k, v in mu.coeffs.items()})
        exact = float(lp_norm(M, mu).value)
        assert lp_norm(Mf, muf).value == pytest.approx(exact, abs=1e-7)
        assert flow_norm(Mf, muf).value == pytest.approx(exact, abs=1e-7)


class TestCut:
    def test_path(self):
        M = line_metric([0, 1, 2])
        assert cut_norm(build_tree(M), Molecule.delta(M, 2)).value == 2

    @given(rationals(-5, 5), rationals(-5, 5))
    def test_three_point_lambda_formula(self, a1, a2):
        d01, d02, d12 = 3, 4, 5
        M = triangle(d01, d02, d12)
        lam0, lam1, lam2 = 1, 2, 3
        expected = lam0 * abs(a1 + a2) + lam1 * abs(a1) + lam2 * abs(a2)
        assert cut_norm(build_tree(M), Molecule.on(M, {1: a1, 2: a2})).value == expected

    @given(metric_and_molecule(tree_metrics(max_points=9)))
    def test_oracles_agree(self, inst):
        M, mu = inst
        results, agree = cross_validate(M, mu)
        assert agree and "tree-cut" in results


class TestClosedForms:
    def test_three_point_examples(self):
        assert three_point_norm(1, 1, 1, 1, 1) == 2
        assert three_point_norm(3, 4, 5, 1, -1) == 5
        assert three_point_norm(1, 2, 1, 0, 1) == 2

    def test_three_point_rejects_non_metric(self):
        with pytest.raises(TriangleViolation):
            three_point_norm(1, 5, 1, 1, 1)

    @pytest.mark.parametrize("alpha, expected", [((1, -1), 1), ((1, 1, 1), 3), ((0, 0, 0, 0), 0)])
    def test_discrete(self, alpha, expected):
        assert discrete_norm(alpha) == expected
        M = discrete_metric(len(alpha) + 1)
        assert lp_norm(M, Molecule.on(M, dict(zip(range(1, len(alpha) + 1), alpha)))).value == expected

    def test_line_examples(self):
        assert line_norm([0, 1, 3], {3: 1}) == 3
        assert line_norm([-1, 0, 1], {-1: 1, 1: 1}) == 2
        M = line_metric([-1, 0, 1])
        assert lp_norm(M, Molecule.on(M, {0: 1, 2: 1})).value == 2

    def test_line_cantor_sample(self):
        pos = [Fraction(0), Fraction(2, 9), Fraction(1, 3), Fraction(2, 3), Fraction(7, 9)]
        coef = [0, 1, -2, Fraction(1, 2), 3]
        M = line_metric(pos)
        assert line_norm(pos, coef) == lp_norm(M, Molecule.on(M, dict(enumerate(coef)))).value

    def test_line_input_checks(self):
        with pytest.raises(UnsortedInput):
            line_norm([0, 2, 1], [0, 1, 1])
        with pytest.raises(ValueError):
            line_norm([1, 2], [1, 1])

    @given(st.lists(rationals(-8, 8, 4), min_size=1, max_size=8, unique=True),
           st.randoms(use_true_random=False))
    def test_line_matches_lp(self, pts, rnd):
        pos = sorted(set(pts) | {Fraction(0)})
        coef = [Fraction(rnd.randint(-5, 5), rnd.randint(1, 3)) for _ in pos]
        M = line_metric(pos)
        assert line_norm(pos, coef) == lp_norm(M, Molecule.on(M, dict(enumerate(coef)))).value

    def test_line_positions(self):
        M = line_metric([-2, 0, 1, 5])
        assert line_positions(M) in ([-2, 0, 1, 5], [2, 0, -1, -5])
        with pytest.raises(NotALine):
            line_positions(validate_metric([[0, 3, 4], [3, 0, 5], [4, 5, 0]]))
        with pytest.raises(NotALine):
            line_positions(metric_from_points(SQUARE, norm="l1"))


class TestAxioms:
    @given(metric_and_molecule(integer_metrics(max_points=6)), rationals(-4, 4, 3))
    def test_homogeneity(self, inst, c):
        M, mu = inst
        for f in (lp_norm, flow_norm):
            assert f(M, c * mu).value == abs(c) * f(M, mu).value

    @given(integer_metrics(max_points=6), st.randoms(use_true_random=False))
    def test_triangle_inequality(self, M, rnd):
        mu, nu = random_molecule(rnd, M), random_molecule(rnd, M)
        for f in (lp_norm, flow_norm):
            assert f(M, mu + nu).value <= f(M, mu).value + f(M, nu).value

    @given(tree_metrics(max_points=7), st.randoms(use_true_random=False))
    def test_tree_cut_axioms(self, M, rnd):
        R = build_tree(M)
        mu, nu = random_molecule(rnd, M), random_molecule(rnd, M)
        assert cut_norm(R, mu + nu).value <= cut_norm(R, mu).value + cut_norm(R, nu).value
        assert cut_norm(R, -2 * mu).value == 2 * cut_norm(R, mu).value

    @given(integer_metrics(min_points=3, max_points=6), st.data())
    def test_base_point_invariance(self, M, data):
        b = data.draw(st.integers(0, M.n - 1))
        Mb = M.rebased(b)
        for x in M.points:
            for y in M.points:
                assert lp_norm(Mb, Molecule.delta(Mb, x, y)).value == lp_norm(M, Molecule.delta(M, x, y)).value

    @given(tree_metrics(min_points=3, max_points=7), st.randoms(use_true_random=False))
    def test_subspace_inside_tree_extension(self, M, rnd):
        # the realization's full vertex set is a tree metric containing M isometrically
        R = build_tree(M)
        big = induced_metric(R.tree)
        mu = random_molecule(rnd, M)
        lifted = Molecule.on(big, {R.point_map[p]: v for p, v in mu.coeffs.items()})
        assert lp_norm(big, lifted).value == lp_norm(M, mu).value


class TestDispatch:
    def test_auto_picks_tree_cut(self):
        M = line_metric([0, 1, 2])
        assert norm(M, Molecule.delta(M, 2)).method == "tree-cut"
        S = metric_from_points(SQUARE, norm="l1")
        assert norm(S, Molecule.delta(S, 3)).method == "lp"

    def test_unknown_method(self):
        M = line_metric([0, 1])
        with pytest.raises(ValueError):
            norm(M, Molecule.delta(M, 1), method="magic")

    def test_cross_validate_includes_line(self):
        M = line_metric([-1, 0, 2, 3])
        results, agree = cross_validate(M, Molecule.on(M, {0: 1, 3: -2}))
        assert agree and set(results) == {"lp", "flow", "tree-cut", "line"}
