import io
import json

import pytest

from hilbert_embed.cli import run


def call(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def gen(tmp_path):
    def make(*args):
        path = tmp_path / ("m%d.json" % len(list(tmp_path.iterdir())))
        code, _ = call(["gen", *args, "--out", str(path)])
        assert code == 0
        return str(path)

    return make


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_test_embed_p3(gen):
    code, out = call(["test-embed", "--metric", gen("--family", "path", "--n", "3")])
    assert code == 0
    obj = json.loads(out)
    assert obj["embeddable"] is True and obj["witness"] is None
    assert obj["trace_profile"] == [10.0, 4.0, 10.0]


def test_classify_claw(gen):
    code, out = call(["classify", "--metric", gen("--family", "claw")])
    obj = json.loads(out)
    assert code == 0 and obj["class"] == "Claw" and obj["embeddable"] is False


def test_classify_snk_reports_pivot(gen):
    code, out = call(["classify", "--metric", gen("--family", "snk", "--n", "6", "--k", "3")])
    obj = json.loads(out)
    assert obj["pivot"]["k"] in (3, 4) and obj["connectivity"]["is_2_connected"]


def test_verify_theorem(capsys):
    code, out = call(["verify-theorem", "--max-n", "5"])
    assert code == 0 and json.loads(out)["counterexamples"] == []
    assert "n=5" in capsys.readouterr().err


def test_verify_theorem_budget():
    assert call(["verify-theorem", "--max-n", "9"])[0] == 1


def test_round_trip_every_family(gen, tmp_path):
    files = [
        gen("--family", "path", "--n", "4"),
        gen("--family", "cycle", "--n", "5"),
        gen("--family", "complete", "--n", "4"),
        gen("--family", "claw-plus-edge"),
        gen("--family", "neighbourhood", "--config", "c"),
        gen("--family", "pythagorean", "--z", "48"),
        gen("--family", "snk", "--n", "5", "--k", "2"),
        gen("--family", "random", "--n", "5", "--dim", "3", "--seed", "4"),
    ]
    for f in files:
        for cmd in (["validate"], ["critgraph"], ["critgraph", "--dot"], ["test-embed"], ["classify"]):
            code, _ = call([*cmd, "--metric", f])
            assert code == 0, (cmd, f)


def test_embed_and_base(gen):
    f = gen("--family", "path", "--n", "3")
    code, out = call(["embed", "--metric", f, "--base", "1"])
    obj = json.loads(out)
    assert code == 0 and obj["base"] == 1 and obj["rank"] == 1
    assert [abs(r[0]) for r in obj["coords"]] == [1.0, 0.0, 1.0]
    assert call(["embed", "--metric", f, "--base", "3"])[0] == 1


def test_embed_not_embeddable(gen, capsys):
    code, _ = call(["embed", "--metric", gen("--family", "claw")])
    assert code == 1
    assert json.loads(capsys.readouterr().err)["error"] == "NotEmbeddable"


def test_byte_identical_output(gen):
    f = gen("--family", "random", "--n", "6", "--seed", "1")
    assert call(["embed", "--metric", f])[1] == call(["embed", "--metric", f])[1]
    assert call(["test-embed", "--metric", f])[1] == call(["test-embed", "--metric", f])[1]


def test_floats_are_12_significant_digits(gen):
    _, out = call(["test-embed", "--metric", gen("--family", "random", "--n", "4", "--seed", "2")])
    for x in json.loads(out)["trace_profile"]:
        assert float("%.12g" % x) == x


def test_fiedler_and_ortho(tmp_path, gen):
    g = write(tmp_path, "g.json", {"n": 3, "edges": [[0, 1, 1], [1, 2, 1]]})
    x = gen("--family", "path", "--n", "2")
    code, out = call(["fiedler", "--graph", g, "--metric", x])
    obj = json.loads(out)
    assert code == 0
    assert obj["value"] == pytest.approx(4 / 3) and obj["argmin"] == [0, 0, 1]
    assert obj["maps_searched"] == 6 and obj["classic_lambda2"] == pytest.approx(1.0)
    line = write(tmp_path, "line.json", {"labels": [-1, 0, 1], "d": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]})
    code, out = call(["ortho", "--graph", g, "--metric", line, "--f1", "2,1,0", "--f2", "2,0,2"])
    assert code == 0 and json.loads(out)["defect"] == pytest.approx(0.0, abs=1e-12)


def test_domain_error_names_class(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"labels": [0, 1, 2], "d": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]})
    assert call(["validate", "--metric", bad])[0] == 1
    assert json.loads(capsys.readouterr().err)["error"] == "TriangleViolation"


def test_usage_errors(tmp_path, capsys):
    assert call([])[0] == 2
    assert call(["validate"])[0] == 2
    assert call(["validate", "--metric", str(tmp_path / "missing.json")])[0] == 2
    assert "--metric" in capsys.readouterr().err
    assert call(["--tol", "-1", "validate", "--metric", "x"])[0] == 2
    assert call(["gen", "--family", "tree"])[0] == 2
    assert call(["bogus"])[0] == 2


def test_gen_bad_parameters():
    assert call(["gen", "--family", "snk", "--n", "4", "--k", "4"])[0] == 1


def test_tol_flag_both_positions(gen):
    f = gen("--family", "path", "--n", "3")
    assert call(["--tol", "1e-6", "test-embed", "--metric", f])[0] == 0
    assert call(["test-embed", "--tol", "1e-6", "--metric", f])[0] == 0
