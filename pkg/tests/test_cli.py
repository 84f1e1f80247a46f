import io
import json
from importlib import resources

import jsonschema
import pytest

from conftest import CORPUS
from toricorb.cli import run
from toricorb.fileio import FileFormatError, corpus_path, parse_polytope, serialize
from toricorb.lattice import IntMatrix
from toricorb.polytope import PolytopeError

FOOTBALL = '{"dim":1,"facets":[{"normal":[1],"offset":0,"label":2},{"normal":[-1],"offset":-1,"label":3}]}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def schema():
    return json.loads((resources.files("toricorb") / "report.schema.json").read_text())


class TestParse:
    def test_football(self):
        W = parse_polytope(FOOTBALL)
        assert W.labels == (2, 3) and W.vertices == ((0,), (1,))

    def test_normalizes(self):
        W = parse_polytope('{"dim":2,"facets":[{"normal":[2,0],"offset":"1/2"},{"normal":[0,1],"offset":0},'
                           '{"normal":[-1,-1],"offset":-3}]}')
        assert W.facets[0].normal == (1, 0) and str(W.facets[0].offset) == "1/4"
        assert W.labels == (1, 1, 1)

    @pytest.mark.parametrize("text,exc", [
        ("not json", FileFormatError),
        ('{"dim":1}', FileFormatError),
        ('{"dim":1,"facets":[{"normal":[0],"offset":0},{"normal":[-1],"offset":-1}]}', FileFormatError),
        ('{"dim":1,"facets":[{"normal":[1],"offset":0,"label":0},{"normal":[-1],"offset":-1}]}', FileFormatError),
        ('{"dim":1,"facets":[{"normal":[1],"offset":0.5},{"normal":[-1],"offset":-1}]}', FileFormatError),
        ('{"dim":2,"facets":[{"normal":[1,0],"offset":0},{"normal":[0,1],"offset":0}]}', PolytopeError),
        ('{"dim":1,"facets":[{"normal":[1],"offset":1},{"normal":[-1],"offset":0}]}', PolytopeError),
    ])
    def test_rejects(self, text, exc):
        with pytest.raises(exc):
            parse_polytope(text)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_roundtrip(self, name):
        text = serialize(CORPUS[name])
        assert serialize(parse_polytope(text)) == text
        assert corpus_path(name).read_text() == text


class TestCommands:
    def test_groups_football(self):
        code, out, _ = call("groups", corpus_path("football_2_3"))
        assert code == 0
        lines = out.splitlines()
        assert lines[1].split()[-1] == "1"
        assert lines[2].split()[-1] == "Z/2" and lines[3].split()[-1] == "Z/3"

    def test_betti_cp2(self):
        code, out, _ = call("betti", corpus_path("cp2"))
        assert code == 0 and out.splitlines()[0] == "b = [1, 0, 1, 0, 1]"

    def test_betti_xi(self):
        assert call("betti", corpus_path("square"), "--xi", "1,0")[0] == 2
        code, out, _ = call("betti", corpus_path("square"), "--xi", "3,-1", "--format", "json")
        assert code == 0 and json.loads(out) == {"b": [1, 0, 2, 0, 1], "xi": [3, -1]}

    def test_isom(self, tmp_path):
        W = CORPUS["weighted_triangle"]
        moved = tmp_path / "moved.json"
        moved.write_text(serialize(W.transform(IntMatrix.from_rows([[2, 1], [1, 1]]), (5, 7))))
        code, out, _ = call("isom", corpus_path("weighted_triangle"), moved)
        assert code == 0 and out.startswith("isomorphic") and "sigma" in out
        code, out, _ = call("isom", corpus_path("weighted_triangle"), moved, "--format", "json")
        assert json.loads(out)["L"] == [[2, 1], [1, 1]]
        assert call("isom", corpus_path("cp2"), moved)[0] == 1

    def test_isom_gl(self, tmp_path):
        code, _, _ = call("isom", corpus_path("football_2_3"), corpus_path("football_2_3"), "--group", "gl")
        assert code == 0

    def test_validate(self, tmp_path):
        assert call("validate", corpus_path("cube"))[0] == 0
        octa = tmp_path / "octa.json"
        import itertools
        octa.write_text(json.dumps({"dim": 3, "facets": [
            {"normal": list(s), "offset": -1} for s in itertools.product((1, -1), repeat=3)]}))
        code, out, _ = call("validate", octa)
        assert code == 1 and "simple: FAIL" in out
        assert call("faces", octa)[0] == 2

    def test_malformed_and_usage(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert call("groups", bad)[0] == 2
        assert call("frobnicate", bad)[0] == 2
        assert call("groups", bad, "--bogus")[0] == 2
        assert call()[0] == 2
        assert call("groups", tmp_path / "missing.json")[0] == 2

    def test_delzant_and_verify(self):
        code, out, _ = call("delzant", corpus_path("football_4_6"))
        assert code == 0 and "pi0(K) = Z/2" in out
        code, out, _ = call("verify", corpus_path("hirzebruch_1"), "--samples", "200", "--seed", "3",
                            "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["passed"] and rep["samples"] == 200

    def test_faces(self):
        code, out, _ = call("faces", corpus_path("cube"), "--format", "json")
        assert code == 0 and len(json.loads(out)["faces"]) == 27

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_report_schema(self, name, schema):
        code, out, _ = call("report", corpus_path(name), "--format", "json")
        assert code == 0
        rep = json.loads(out)
        jsonschema.validate(rep, schema)

        def no_floats(x):
            if isinstance(x, float):
                return False
            if isinstance(x, dict):
                return all(no_floats(v) for v in x.values())
            if isinstance(x, list):
                return all(no_floats(v) for v in x)
            return True

        assert no_floats(rep)

    def test_report_text(self):
        code, out, _ = call("report", corpus_path("weighted_triangle"))
        assert code == 0 and "smooth (Delzant): no" in out and "betti: b = [1, 0, 1, 0, 1]" in out
