import io
import json
import random
import subprocess
import sys

import pytest

from treefree.cli import RunConfig, main
from treefree.generators import perturbed_metric, random_tree_metric
from treefree.metric import metric_to_json

SQUARE_CSV = """a,b,c,d
0,1,1,1.4142135623730951
1,0,1.4142135623730951,1
1,1.4142135623730951,0,1
1.4142135623730951,1,1,0
"""


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text if isinstance(text, str) else json.dumps(text))
        return p

    return write


class TestValidate:
    def test_valid(self, files):
        code, out = run("validate", files("m.csv", "x,y,z\n0,1,1\n1,0,1\n1,1,0\n"))
        assert code == 0 and "valid metric on 3 points" in out

    def test_triangle_violation(self, files):
        code, out = run("validate", files("m.csv", "x,y,z\n0,1,3\n1,0,1\n3,1,0\n"), "--format", "json")
        payload = json.loads(out)
        assert code == 1
        assert payload["error"] == "TriangleViolation" and payload["witness"] == [0, 1, 2]

    def test_merge(self, files):
        code, out = run("validate", files("m.csv", "x,y\n0,0\n0,0\n"), "--merge-duplicates", "--format", "json")
        assert code == 0 and json.loads(out)["merged"] == {"1": 0}

    def test_malformed(self, files):
        code, _ = run("validate", files("m.csv", "x,y\n0,1\n1,0,3\n"))
        assert code == 2


class TestCheck4pt:
    def test_collinear(self, files):
        assert run("check4pt", files("m.csv", "a,b,c,d\n0,1,2,5\n1,0,1,4\n2,1,0,3\n5,4,3,0\n"))[0] == 0

    def test_square(self, files):
        code, out = run("check4pt", files("sq.csv", SQUARE_CSV), "--mode", "float", "--format", "json")
        payload = json.loads(out)
        assert code == 1
        assert payload["schema"] == "treefree/1"
        assert payload["witness"] == ["a", "d", "b", "c"]
        assert payload["sums"][0] == pytest.approx(2 * 2 ** 0.5)

    def test_malformed_csv(self, files):
        assert run("check4pt", files("m.csv", "a,b\n0,oops\n1,0\n"))[0] == 2

    def test_missing_file(self, tmp_path):
        assert run("check4pt", tmp_path / "nope.csv")[0] == 2

    def test_bad_flag(self):
        assert main(["check4pt", "--mode", "fuzzy", "x.csv"], out=io.StringIO()) == 2

    def test_threads_do_not_change_output(self, files):
        rng = random.Random(2)
        M = perturbed_metric(rng, random_tree_metric(rng, 12))
        p = files("m.json", metric_to_json(M))
        one = run("check4pt", p, "--threads", 1)
        four = run("check4pt", p, "--threads", 4)
        assert one == four


class TestEmbed:
    def test_star(self, files):
        code, out = run("embed", files("t.csv", "a,b,c\n0,3,4\n3,0,5\n4,5,0\n"))
        assert code == 0 and out == "((b:2,c:3)s0:1)a;\n"

    def test_path(self, files):
        code, out = run("embed", files("p.csv", "a,b,c\n0,1,2\n1,0,1\n2,1,0\n"), "--tree-format", "json")
        tree = json.loads(out)["tree"]
        assert code == 0 and len(tree["vertices"]) == 3

    def test_dot(self, files):
        code, out = run("embed", files("t.csv", "a,b,c\n0,3,4\n3,0,5\n4,5,0\n"), "--tree-format", "dot")
        assert code == 0 and out.startswith("graph T {")

    def test_refusal(self, files):
        code, out = run("embed", files("sq.csv", SQUARE_CSV), "--mode", "float")
        assert code == 1 and "four-point condition fails on (a, d, b, c)" in out

    def test_byte_deterministic(self, files):
        M = random_tree_metric(random.Random(3), 9)
        p = files("m.json", metric_to_json(M))
        assert run("embed", p) == run("embed", p)


class TestNorm:
    def test_three_point(self, files):
        m = files("t.csv", "a,b,c\n0,1,1\n1,0,1\n1,1,0\n")
        mol = files("mol.json", {"coeffs": {"b": 1, "c": 1}})
        code, out = run("norm", m, mol, "--method", "lp", "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["value"] == "2"
        assert payload["certificate"]["f"]["a"] == "0"

    @pytest.mark.parametrize("method", ["lp", "flow", "tree", "line", "auto"])
    def test_methods_on_line(self, files, method):
        m = files("l.csv", "o,x,y\n0,1,3\n1,0,2\n3,2,0\n")
        mol = files("mol.json", {"coeffs": {"y": "1"}})
        code, out = run("norm", m, mol, "--method", method, "--verify")
        assert code == 0 and out.startswith("norm = 3")
        assert "methods agree" in out

    def test_line_not_applicable(self, files):
        m = files("t.csv", "a,b,c\n0,3,4\n3,0,5\n4,5,0\n")
        mol = files("mol.json", {"coeffs": {"b": 1}})
        assert run("norm", m, mol, "--method", "line")[0] == 1

    def test_unknown_point(self, files):
        m = files("t.csv", "a,b,c\n0,3,4\n3,0,5\n4,5,0\n")
        mol = files("mol.json", {"coeffs": {"zz": 1}})
        assert run("norm", m, mol)[0] == 2

    def test_malformed_molecule(self, files):
        m = files("t.csv", "a,b,c\n0,3,4\n3,0,5\n4,5,0\n")
        assert run("norm", m, files("mol.json", "{oops"))[0] == 2
        assert run("norm", m, files("mol2.json", {"coefs": {}}))[0] == 2


class TestClassify4:
    def test_square(self, files):
        code, out = run("classify4", files("sq.csv", SQUARE_CSV), "--mode", "float", "--format", "json")
        payload = json.loads(out)
        assert code == 1
        verdicts = [lab["symmetric_or_empty"] for lab in payload["labelings"]]
        assert verdicts.count(False) == 2
        assert payload["aggregate"] is False and payload["four_point"] is False

    def test_collinear_table(self, files):
        m = files("l.csv", "p,q,r,s\n0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n")
        code, out = run("classify4", m, "--quad", "p,q,r,s")
        lines = out.splitlines()
        assert code == 0
        assert lines[0].split()[:7] == ["labeling", "a", "b", "c", "d", "e", "f"]
        assert lines[3].split()[:7] == ["p,q,r,s", "1", "1", "2", "2", "-1", "1"]
        assert lines[-1].startswith("aggregate: all faces symmetric")

    @pytest.mark.parametrize("quad", ["p,q,r", "p,q,r,zz", "p,p,q,r"])
    def test_bad_quad(self, files, quad):
        m = files("l.csv", "p,q,r,s\n0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n")
        assert run("classify4", m, "--quad", quad)[0] == 2

    def test_too_few_points(self, files):
        assert run("classify4", files("t.csv", "a,b\n0,1\n1,0\n"))[0] == 2


class TestGlueCheck:
    GLUED = {
        "points": ["p", "q", "r", "s"],
        "base": "p",
        "d": [[0, 1, 10, 11], [1, 0, 9, 10], [10, 9, 0, 1], [11, 10, 1, 0]],
        "partition": {"p": 0, "q": 0, "r": 1, "s": 1},
    }

    def test_report(self, files):
        g = files("g.json", self.GLUED)
        mol = files("mol.json", {"coeffs": {"q": 1, "s": -1}})
        code, out = run("glue-check", g, mol, "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["holds"]
        assert (payload["alpha"], payload["beta"]) == ("9", "11")
        assert payload["decomposed"] == "3" and payload["norm"] == "10"
        assert payload["part_bases"] == {"0": "p", "1": "r"}

    def test_part_bases(self, files):
        g = files("g.json", {**self.GLUED, "part_bases": {"1": "s"}})
        mol = files("mol.json", {"coeffs": {"r": 1}})
        code, out = run("glue-check", g, mol)
        assert code == 0 and "'1': 's'" in out

    def test_zero_molecule(self, files):
        g = files("g.json", self.GLUED)
        code, out = run("glue-check", g, files("mol.json", {"coeffs": {}}), "--format", "json")
        assert code == 0 and json.loads(out)["decomposed"] == "0"

    def test_missing_partition(self, files):
        g = files("g.json", {k: v for k, v in self.GLUED.items() if k != "partition"})
        assert run("glue-check", g, files("mol.json", {"coeffs": {}}))[0] == 2


def test_run_config():
    with pytest.raises(ValueError):
        RunConfig(mode="float", epsilon=0)
    assert RunConfig(mode="exact", epsilon=0).arith.exact


def test_module_entry_point(files):
    p = files("m.csv", "x,y\n0,1\n1,0\n")
    res = subprocess.run([sys.executable, "-m", "treefree", "validate", str(p)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("valid metric")
