import json

import pytest

from edgestab.cli import main

TRIANGLE = "3 3\n1 2\n2 3\n1 3\n"


@pytest.fixture
def c3(tmp_path):
    path = tmp_path / "c3.edges"
    path.write_text(TRIANGLE)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants(capsys, c3):
    code, out, err = run_cli(capsys, "invariants", "--graph", c3)
    assert code == 0
    d = json.loads(out)
    assert (d["n0"], d["n1"], d["phi0"], d["phi1"]) == (2, 2, 2, 2)
    assert err.startswith("# config: ")
    assert json.loads(err[len("# config: "):])["command"] == "invariants"


def test_closure_lists_square_generators(capsys, c3):
    code, out, _ = run_cli(capsys, "closure", "--graph", c3, "--power", "2")
    assert code == 0
    d = json.loads(out)
    assert "x1^2*x2*x3" in d["monomials"] and d["mode"] == "closure"


def test_closure_vs_ordinary(capsys, tmp_path):
    path = tmp_path / "tt.edges"
    path.write_text("6 6\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n")
    _, out, _ = run_cli(capsys, "closure", "--graph", str(path), "--power", "3")
    _, ordinary, _ = run_cli(capsys, "closure", "--graph", str(path), "--power", "3",
                             "--ordinary")
    assert len(json.loads(out)["generators"]) == 57
    assert len(json.loads(ordinary)["generators"]) == 56


def test_ass_and_depth(capsys, c3):
    code, out, _ = run_cli(capsys, "ass", "--graph", c3, "--power", "2")
    assert code == 0 and json.loads(out) == [[1, 2], [1, 3], [2, 3], [1, 2, 3]]
    code, out, _ = run_cli(capsys, "depth", "--graph", c3, "--power", "2")
    d = json.loads(out)
    assert d["depth"] == 0 and d["betti"] == {"0": 6, "1": 6, "2": 1}


def test_ideal_text_input(capsys, tmp_path):
    path = tmp_path / "sq.ideal"
    path.write_text("2\nx1^2\nx2^2\n")
    _, out, _ = run_cli(capsys, "closure", "--ideal", str(path), "--quiet")
    assert json.loads(out)["generators"] == [[2, 0], [1, 1], [0, 2]]


@pytest.mark.parametrize("command, extra", [
    ("invariants", []),
    ("closure", ["--power", "2"]),
    ("ass", ["--power", "2"]),
    ("depth", ["--power", "2"]),
    ("stability", []),
])
def test_json_round_trips(capsys, tmp_path, c3, command, extra):
    first = tmp_path / "first.json"
    assert main([command, "--graph", c3, "--out", str(first), "--quiet", *extra]) == 0
    code, out, _ = run_cli(capsys, command, "--in", str(first), "--quiet")
    assert code == 0
    assert json.loads(out) == json.loads(first.read_text())


def test_closure_output_is_an_ideal_input(capsys, tmp_path, c3):
    first = tmp_path / "sq.json"
    main(["closure", "--graph", c3, "--power", "2", "--out", str(first), "--quiet"])
    code, out, _ = run_cli(capsys, "ass", "--ideal", str(first), "--ordinary", "--quiet")
    assert code == 0 and len(json.loads(out)) == 4


def test_corpus_round_trip(capsys, tmp_path):
    first = tmp_path / "corpus.json"
    assert main(["corpus", "--exhaustive", "4", "--format", "json", "--out", str(first),
                 "--quiet"]) == 0
    code, out, _ = run_cli(capsys, "corpus", "--in", str(first), "--format", "json", "--quiet")
    assert json.loads(out)["graphs"] == json.loads(first.read_text())["graphs"]
    assert json.loads(out)["count"] == 9


def test_stability_csv(capsys, c3):
    code, out, _ = run_cli(capsys, "stability", "--graph", c3, "--csv", "--quiet")
    header, row = out.strip().splitlines()
    assert header.startswith("graph6,") and row.startswith("Bw,3,0,3,2,2,2,2,2,2")


def test_verify_and_report_reader(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, text, _ = run_cli(capsys, "verify", "--exhaustive", "4", "--out", str(out),
                            "--pair-bipartite", "2", "--pair-nonbipartite", "3",
                            "--pair-power", "2")
    assert code == 0 and "all checks passed" in text
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["ok"]
    code, _, _ = run_cli(capsys, "verify", "--in", str(out), "--quiet")
    assert code == 0


def test_verify_reports_violations_with_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": 1, "ok": False, "corpus": {"mode": "file"},
                               "graphs": 1, "pairs": 0, "summary": {"astab_bound": {"passed": 0, "failed": 1}},
                               "counterexamples": [{}], "findings": []}))
    code, _, _ = run_cli(capsys, "verify", "--in", str(bad), "--quiet")
    assert code == 2


def test_random_corpus(capsys):
    code, _, err = run_cli(capsys, "corpus", "--random-pseudoforest", "3",
                           "--max-vertices", "6")
    assert code == 64 and "--seed" in err
    code, first, _ = run_cli(capsys, "corpus", "--random-pseudoforest", "3",
                             "--max-vertices", "6", "--seed", "5", "--quiet")
    _, second, _ = run_cli(capsys, "corpus", "--random-pseudoforest", "3",
                           "--max-vertices", "6", "--seed", "5", "--quiet")
    assert code == 0 and first == second


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["closure", "--power", "0"],
    ["closure", "--power", "2"],
    ["verify", "--exhaustive", "8"],
    ["verify", "--exhaustive", "7"],
    ["verify", "--exhaustive", "3", "--checks", "t9"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 64


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("3 3\n1 2\n")
    code, _, err = run_cli(capsys, "invariants", "--graph", str(bad))
    assert code == 65 and "parse error" in err
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run_cli(capsys, "stability", "--in", str(junk))[0] == 65


def test_missing_file_is_operational(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "invariants", "--graph", str(tmp_path / "nope"))
    assert code == 1


def test_no_floats_anywhere(capsys, c3):
    for argv in (["invariants", "--graph", c3], ["depth", "--graph", c3, "--power", "2"],
                 ["stability", "--graph", c3]):
        _, out, _ = run_cli(capsys, *argv, "--quiet")
        json.loads(out, parse_float=lambda s: pytest.fail(f"float {s} in output"))
