import json

import pytest

from coverreg.cli import corpus_paths, load_hypergraph, main
from coverreg.hypergraph import ValidationError, cycle


def write(tmp_path, name, payload) -> str:
    p = tmp_path / name
    p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(p)


def c4_file(tmp_path) -> str:
    return write(tmp_path, "c4.json", cycle(4).to_json_dict())


def test_corpus_is_shipped():
    names = {p.rsplit("/", 1)[-1] for p in corpus_paths()}
    assert names == {
        "single_edge.json",
        "path3.json",
        "path4.json",
        "cycle4.json",
        "cycle5.json",
        "cycle6.json",
        "k22.json",
        "k23.json",
        "interval3.json",
        "triangle.json",
    }


def test_load_hypergraph_strict(tmp_path):
    name, h = load_hypergraph(c4_file(tmp_path))
    assert name == "c4" and h == cycle(4)
    bad = write(tmp_path, "bad.json", '{"n": 2, "edges": [[1, 2],]}')
    with pytest.raises(ValidationError, match="line"):
        load_hypergraph(bad)
    bad2 = write(tmp_path, "bad2.json", {"n": 2, "edges": [[0, 1]]})
    with pytest.raises(ValidationError, match="edges"):
        load_hypergraph(bad2)


def test_check_tu_exit_codes(tmp_path, capsys):
    assert main(["check-tu", c4_file(tmp_path)]) == 0
    assert "totally unimodular: true" in capsys.readouterr().out
    c3 = write(tmp_path, "c3.json", cycle(3).to_json_dict())
    assert main(["check-tu", c3]) == 1
    out = capsys.readouterr().out
    assert "totally unimodular: false" in out and "det 2" in out


def test_cover_ideal_listing(tmp_path, capsys):
    assert main(["cover-ideal", c4_file(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "x2*x4" in out and "x1*x3" in out


def test_reg_table_values(tmp_path, capsys):
    assert main(["reg-table", c4_file(tmp_path), "--s-max", "6", "--method", "both"]) == 0
    out = capsys.readouterr().out
    for s, reg in enumerate((3, 5, 7, 9, 11, 13), start=1):
        assert f"reg J^{s} = {reg}" in out
    assert "2*s + 1" in out


def test_ai_table_emission(tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main(
        ["ai-table", c4_file(tmp_path), "--s-max", "3", "--method", "both",
         "--out", str(out_dir)]
    )
    assert code == 0
    csv_text = (out_dir / "ai_table.csv").read_text()
    assert csv_text.splitlines()[0] == "hypergraph,p,s,value,method,field"
    assert "c4,2,3,4,both,q" in csv_text
    assert "c4,0,1,-inf,both,q" in csv_text
    payload = json.loads((out_dir / "ai_table.json").read_text())
    assert payload[0]["hypergraph"] == "c4"


def test_delta_table(tmp_path, capsys):
    code = main(["delta-table", c4_file(tmp_path), "--t-max", "6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "delta(P_6) = 10" in out
    assert "d = 2, e = 2" in out


def test_usage_errors(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["check-tu", missing]) == 2
    assert main(["verify"]) == 2  # no inputs
    err = capsys.readouterr().err
    assert "input error" in err


def test_edgeless_and_bad_pattern_inputs(tmp_path, capsys):
    empty = write(tmp_path, "empty.json", {"n": 3, "edges": []})
    assert main(["verify", empty]) == 2
    assert main(["check-tu", empty]) == 0  # vacuously TU, still a valid query
    c4 = c4_file(tmp_path)
    assert main(["delta-table", c4, "--lower", "9"]) == 2
    assert main(["delta-table", c4, "--localize", "7"]) == 2
    err = capsys.readouterr().err
    assert "no edges" in err and "lower edge index" in err


def test_non_tu_input_to_power_commands(tmp_path, capsys):
    c3 = write(tmp_path, "c3.json", cycle(3).to_json_dict())
    assert main(["reg-table", c3, "--s-max", "3"]) == 2
    assert "unimodular" in capsys.readouterr().err


def test_budget_refusal(tmp_path, capsys):
    code = main(
        ["ai-table", c4_file(tmp_path), "--s-max", "2", "--method", "oracle",
         "--scan-budget", "3"]
    )
    assert code == 2
    assert "refused" in capsys.readouterr().err


def test_field_flag(tmp_path, capsys):
    assert main(["reg-table", c4_file(tmp_path), "--s-max", "3", "--field", "fp:3"]) == 0
    with pytest.raises(SystemExit):
        main(["reg-table", c4_file(tmp_path), "--field", "fp:4"])


def test_verify_corpus_and_determinism(tmp_path, capsys):
    run1 = tmp_path / "r1"
    run2 = tmp_path / "r2"
    assert main(["verify", "--corpus", "--out", str(run1)]) == 0
    assert main(["verify", "--corpus", "--out", str(run2)]) == 0
    for name in ("verify_report.json", "verify_tables.csv"):
        assert (run1 / name).read_bytes() == (run2 / name).read_bytes()
    report = json.loads((run1 / "verify_report.json").read_text())
    assert report["passed"] is True
    by_name = {r["hypergraph"]: r for r in report["reports"]}
    assert by_name["triangle"]["totally_unimodular"] is False
    assert by_name["triangle"]["theorems"] == {"skipped": "not totally unimodular"}
    assert by_name["triangle"]["symbolic_vs_ordinary"][1]["equal"] is False
    assert by_name["cycle4"]["method_equivalence"]["mismatches"] == []


def test_verify_failure_exit(tmp_path, capsys):
    # a non-simple input is simplified on ingest and must still verify
    h = {"n": 3, "edges": [[1, 2], [1, 2, 3]]}
    f = write(tmp_path, "nested.json", h)
    assert main(["verify", f]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
