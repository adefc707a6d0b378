import json
from pathlib import Path

import pytest

from hodgehyper.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_on_sparse_triangle(capsys):
    code, out, _ = run(capsys, "betti", "--input", DATA / "triangle_h0.hg", "--backend", "both")
    rep = json.loads(out)
    assert code == 0
    assert [(r["betti_embedded"], r["betti_complex"]) for r in rep["degrees"]] == [(3, 1), (0, 0), (0, 0)]
    assert rep["checks"] == [{"name": "backend_agreement", "pass": True}]


def test_betti_with_evaluation_weight(capsys):
    code, out, _ = run(capsys, "betti", "--input", DATA / "triangle_h2.hg",
                       "--weight", DATA / "triangle_eval.json", "--degrees", "0")
    assert code == 0
    assert json.loads(out)["degrees"][0]["betti_embedded"] == 1


def test_hodge_csv_row(capsys):
    code, out, _ = run(capsys, "hodge", "--input", DATA / "three_triangles_with_closure.hg",
                       "--degrees", "1", "--output", "csv")
    assert code == 0
    assert out.splitlines() == ["n,betti_embedded,betti_complex,dim_common,dim_ker_s,dim_coker_s",
                                "1,1,2,1,0,1"]


def test_hodge_text_and_bases(capsys):
    code, out, _ = run(capsys, "hodge", "--input", DATA / "three_triangles_with_closure.hg",
                       "--degrees", "1", "--output", "text")
    assert code == 0 and "PASS  two_summand_embedded" in out
    code, out, _ = run(capsys, "hodge", "--input", DATA / "triangle_h3.hg", "--degrees", "0", "--bases")
    row = json.loads(out)["degrees"][0]
    assert row["harmonic_bases"]["ambient"] == [{"v0": "1", "v1": "1", "v2": "1"}]


def test_hodge_on_simplicial_complex_has_no_defects(capsys):
    code, out, _ = run(capsys, "hodge", "--input", DATA / "triangle_h3.hg", "--backend", "both")
    rep = json.loads(out)
    assert code == 0
    assert all(r["dim_ker_s_star"] == r["dim_coker_s_star"] == 0 for r in rep["degrees"])


def test_hodge_golden_key_order(capsys):
    _, out, _ = run(capsys, "hodge", "--input", DATA / "hollow_triangle.hg", "--degrees", "1")
    row = json.loads(out)["degrees"][0]
    assert list(row) == ["n", "betti_embedded", "betti_complex", "dim_common", "dim_ker_s_star",
                         "dim_coker_s_star", "summand_dims_ambient", "summand_dims_sup", "checks"]
    again = run(capsys, "hodge", "--input", DATA / "hollow_triangle.hg", "--degrees", "1")[1]
    assert again == out


def test_spectra_zero_weight(capsys):
    code, out, _ = run(capsys, "spectra", "--input", DATA / "triangle_h3.hg", "--weight", DATA / "zero.json")
    rep = json.loads(out)
    assert code == 0
    for row in rep["degrees"]:
        for carrier in row["spectra"].values():
            assert all(v == 0.0 for v, _ in carrier["full"])


def test_spectra_edge(capsys, tmp_path):
    f = tmp_path / "edge.hg"
    f.write_text("a\nb\na b\n")
    code, out, _ = run(capsys, "spectra", "--input", f, "--degrees", "0")
    assert code == 0
    assert json.loads(out)["degrees"][0]["spectra"]["ambient"]["full"] == [[0.0, 1], [2.0, 1]]


def test_validate_weight(capsys):
    code, out, _ = run(capsys, "validate-weight", "--input", DATA / "hollow_triangle.hg",
                       "--weight", DATA / "imbalanced_table.json")
    assert code == 0 and json.loads(out) == {"valid": True}
    code, out, _ = run(capsys, "validate-weight", "--input", DATA / "triangle_h3.hg")
    assert code == 0


def test_invalid_weight_exits_2_with_triple(capsys, tmp_path):
    w = tmp_path / "bad.json"
    values = {f"{s}|{f}": "1" for s, fs in {"v0,v1": ["v0", "v1"], "v0,v2": ["v0", "v2"],
                                           "v1,v2": ["v1", "v2"],
                                           "v0,v1,v2": ["v1,v2", "v0,v2", "v0,v1"]}.items() for f in fs}
    values["v0,v1,v2|v1,v2"] = "3"
    w.write_text(json.dumps({"kind": "table", "values": values}))
    code, _, err = run(capsys, "betti", "--input", DATA / "triangle_h3.hg", "--weight", w)
    assert code == 2 and "sigma={v0,v1,v2}" in err
    code, out, _ = run(capsys, "validate-weight", "--input", DATA / "triangle_h3.hg", "--weight", w)
    assert code == 1 and json.loads(out)["sigma"] == "v0,v1,v2"


def test_missing_pair_is_named(capsys, tmp_path):
    w = tmp_path / "short.json"
    w.write_text(json.dumps({"kind": "table", "values": {}}))
    code, _, err = run(capsys, "betti", "--input", DATA / "hollow_triangle.hg", "--weight", w)
    assert code == 2 and "v0,v1" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "betti", "--input", tmp_path / "missing.hg")[0] == 2
    assert run(capsys, "betti", "--input", DATA / "triangle_h0.hg", "--degrees", "7")[0] == 2
    with pytest.raises(SystemExit):
        main(["betti"])


def test_from_digraph(capsys, tmp_path):
    code, out, _ = run(capsys, "from-digraph", "--input", DATA / "chain5.dg")
    assert code == 0 and len(out.splitlines()) == 21
    f = tmp_path / "abc.dg"
    f.write_text("a -> b\nb -> c\n")
    target = tmp_path / "abc.hg"
    assert run(capsys, "from-digraph", "--input", f, "--out", target)[0] == 0
    assert len(target.read_text().splitlines()) == 6
    f.write_text("a\n")
    assert run(capsys, "from-digraph", "--input", f)[1] == "a\n"


def test_from_digraph_rejects_cycles(capsys):
    code, _, err = run(capsys, "from-digraph", "--input", DATA / "two_cycle.dg")
    assert code == 1
    assert "cycle: a b a" in err


def test_hypergraph_round_trip_through_cli(capsys, tmp_path):
    f = tmp_path / "g.dg"
    f.write_text("x -> y\ny -> z\nx -> z\n")
    first = run(capsys, "from-digraph", "--input", f)[1]
    h = tmp_path / "g.hg"
    h.write_text(first)
    from hodgehyper.hypergraph import format_hypergraph, read_hypergraph
    assert format_hypergraph(read_hypergraph(h)) == first


def test_suite_reports_parameters(capsys):
    code, out, _ = run(capsys, "suite", "--count", "3", "--vertices", "4", "--max-dim", "2",
                       "--p", "0.4", "--seed", "5", "--suite", "diagram")
    rep = json.loads(out)
    assert rep["parameters"] == {"count": 3, "vertices": 4, "max_dim": 2, "p": 0.4, "seed": 5, "suite": "diagram"}
    assert code == (0 if not rep["failures"] else 1)


def test_tolerance_env_is_honoured(capsys, monkeypatch):
    monkeypatch.setenv("HODGEHYPER_TOL", "1e-9,1e-7")
    code, _, _ = run(capsys, "spectra", "--input", DATA / "hollow_triangle.hg")
    assert code == 0
