import io
import json
import subprocess
import sys

from arrkit import cli
from arrkit.exact import InvariantError, IntPolynomial
from arrkit.graphs import Graph
from arrkit.groups import GroupPresentation
from arrkit.hyper import HyperplaneArrangement
from arrkit.toric import ParamToricFamily


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def ok(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return out


def test_documented_examples():
    assert json.loads(ok("toric", "family", "--shape", "2,2,2", "--weights", "1,1,1", "--poincare"))[
        "coeffs"] == ["1", "5", "7"]
    assert json.loads(ok("graph", "classify", "--shape", "2,2"))["kind"] == "MultipartiteNotQP"
    assert json.loads(ok("group", "abelianize", "--preset", "bb", "--shape", "2,2,2")) == {
        "rank": 5, "torsion": []}


def test_exit_codes(monkeypatch):
    assert call("nonsense")[0] == 2
    assert call("graph", "classify", "--shape", "x,y")[0] == 2
    code, _, err = call("arr", "section", "--shape", "2,2")
    assert code == 1 and "r >= 2" in err
    assert call("toric", "family", "--shape", "2,2", "--weights", "2,4")[0] == 1
    assert call("graph", "info", "--input", "/nonexistent.json")[0] == 1

    def broken(_a):
        raise InvariantError("forced")

    monkeypatch.setattr(cli.hyper, "poincare", broken)
    code, _, err = call("arr", "poincare", "--shape", "2,2,2")
    assert code == 3 and "forced" in err


def test_verify_failure_exits_3(monkeypatch):
    monkeypatch.setattr(cli, "verify_checks", lambda *a: [("fake", False, "forced")])
    code, out, _ = call("verify", "--shape", "2,2,2")
    assert code == 3 and json.loads(out)["all_pass"] is False


def test_verify_is_deterministic():
    a = ok("verify", "--shape", "2,2,3", "--weights", "1,2,3", "--seed", "5")
    b = ok("verify", "--shape", "2,2,3", "--weights", "1,2,3", "--seed", "5")
    assert a == b
    payload = json.loads(a)
    assert payload["all_pass"] and len(payload["checks"]) >= 5


def test_out_flag(tmp_path):
    target = tmp_path / "g.json"
    assert ok("graph", "info", "--cycle", "4", "--out", str(target)) == ""
    assert Graph.from_json(json.loads(target.read_text())).edge_count == 4


def test_round_trips(tmp_path):
    cases = [
        (("graph", "info", "--wheel", "4"), Graph),
        (("arr", "build-bb", "--shape", "2,2,2"), HyperplaneArrangement),
        (("arr", "graphic", "--complete", "3"), HyperplaneArrangement),
        (("toric", "family", "--shape", "2,2,2", "--weights", "1,2,3", "--special", "1,1,1"),
         ParamToricFamily),
        (("group", "bb", "--shape", "2,2,2"), GroupPresentation),
        (("arr", "poincare", "--shape", "2,2,2"), IntPolynomial),
    ]
    for argv, cls in cases:
        text = ok(*argv)
        assert cli.dumps(cls.from_json(json.loads(text)).to_json()) == text, argv

    path = tmp_path / "w.json"
    path.write_text(ok("graph", "info", "--wheel", "4"))
    assert json.loads(ok("graph", "cliques", "--input", str(path)))["c"] == [8, 4, 0]

    path = tmp_path / "a.json"
    path.write_text(ok("arr", "build-bb", "--shape", "2,2,2", "--special", "1,1,1"))
    assert json.loads(ok("arr", "poincare", "--input", str(path)))["coeffs"] == ["1", "5", "6"]

    path = tmp_path / "f.json"
    path.write_text(ok("toric", "family", "--shape", "2,2,2", "--weights", "1,2,3"))
    assert json.loads(ok("toric", "family", "--input", str(path), "--betti"))["betti"] == [1, 5, 10]

    path = tmp_path / "p.json"
    path.write_text(ok("group", "artin-kernel", "--shape", "2,2,2", "--weights", "2,2,1"))
    assert json.loads(ok("group", "abelianize", "--input", str(path)))["rank"] == 6


def test_other_outputs():
    assert ok("graph", "info", "--path", "3", "--dot").startswith("graph G {")
    assert ok("arr", "charpoly", "--shape", "2,2,2", "--dot").startswith("digraph L {")
    poset = json.loads(ok("arr", "charpoly", "--shape", "2,2,2", "--poset"))
    # cone poset: bottom, 6 planes, 3 triple and 6 double lines, the origin
    assert len(poset["nodes"]) == 1 + 6 + 9 + 1 and poset["ambient_dim"] == 3
    section = json.loads(ok("arr", "section", "--shape", "2,2,2"))
    assert section == {"lines": 6, "multiple_points": [3, 3, 3], "double_points": 6}
    fin = json.loads(ok("flag", "finiteness", "--shape", "2,2,2", "--rmax", "3", "--primes", "2"))
    assert [d["FP"] for d in fin["degrees"]] == ["holds", "holds", "fails"]
    assert json.loads(ok("flag", "betti", "--shape", "2,3", "--mod", "3"))["betti"] == [1, 2]
    assert json.loads(ok("toric", "bifurcation", "--shape", "3,3,3,3", "--roots"))["m_prime"] == 2
    cmp = json.loads(ok("toric", "compare", "--complete", "3"))
    assert cmp["epsilon"] == 1
    gap = ok("group", "rs-window", "--complete", "2", "--simplify", "--gap")
    assert gap.startswith("F := FreeGroup(")
    betti = json.loads(ok("group", "betti", "--shape", "2,2,2"))
    assert betti["betti"] == [1, 5, 7] and betti["P_N"]["coeffs"] == ["1", "5", "7"]
    assert json.loads(ok("graph", "chordal", "--wheel", "5")) == {"chordal": False, "nonhypersolvable": True}


def test_console_script_module_entry():
    done = subprocess.run(
        [sys.executable, "-m", "arrkit.cli", "graph", "classify", "--path", "4"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0 and json.loads(done.stdout)["kind"] == "Tree"
