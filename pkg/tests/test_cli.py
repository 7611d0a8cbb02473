import json
import subprocess
import sys

import pytest

from fcy.cli import main
from fcy.constructions import cobweb_builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_tsv(text):
    header, row = text.rstrip("\n").split("\n")
    out = {}
    for k, cell in zip(header.split("\t"), row.split("\t")):
        if cell == "":
            out[k] = None
        elif cell in ("true", "false"):
            out[k] = cell == "true"
        else:
            try:
                out[k] = json.loads(cell)
            except json.JSONDecodeError:
                out[k] = cell
    return out


# -- analyze ------------------------------------------------------------------------------

def test_analyze_cobweb(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "cobweb", "--d", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["cy"] == [14, 12] and rep["k"] == 5 and rep["N"] == 7


def test_analyze_typeA(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "typeA", "--d-param", "2", "--s", "3", "--d", "2")
    assert code == 0 and json.loads(out)["cy"] == [4, 5]


def test_analyze_a1(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "dynkin:A:1", "--d", "1", "--char", "sgn")
    assert code == 0 and json.loads(out)["cy"] == [0, 1]


def test_analyze_not_frobenius_exits_zero(capsys, tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps({"vertices": ["1", "2"],
                             "arrows": [{"id": "a", "from": "1", "to": "2", "degree": [0]}],
                             "grading_rank": 1, "relations": []}))
    code, out, _ = run(capsys, "analyze", "--quiver", str(p))
    rep = json.loads(out)
    assert code == 0 and rep["frobenius"] is False and rep["verdict"] == "not-frobenius"
    assert "bijection" in rep["reason"]


def test_analyze_infinite_exits_two(capsys, tmp_path):
    # doubled 3-cycle (affine type): infinite-dimensional preprojective algebra
    q = tmp_path / "tri.json"
    q.write_text(json.dumps({"vertices": ["1", "2", "3"], "arrows": [
        {"id": "a", "from": "1", "to": "2", "degree": [0]},
        {"id": "b", "from": "2", "to": "3", "degree": [0]},
        {"id": "c", "from": "1", "to": "3", "degree": [0]}], "grading_rank": 1, "relations": []}))
    pre = tmp_path / "pre.json"
    assert main(["preprojective", "--quiver", str(q), "--out", str(pre)]) == 0
    code, out, err = run(capsys, "analyze", "--quiver", str(pre), "--maxlen", "12")
    assert code == 2 and out == ""
    assert "DimensionBoundExceeded" in err


def test_no_order_found_exits_two(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "dynkin:A:3", "--char", "sgn", "--kmax", "1")
    assert code == 2 and json.loads(out)["verdict"] == "no-order-found"


@pytest.mark.parametrize("argv", [
    ["analyze", "--family", "nosuch"],
    ["analyze", "--quiver", "/nonexistent.json"],
    ["analyze", "--family", "dynkin:A:3", "--char", "0"],
    ["analyze", "--family", "dynkin:A:3", "--field", "fp:9"],
    ["analyze", "--family", "typeA", "--d-param", "2"],
    ["analyze"],
    ["preprojective", "--dynkin", "D:3"],
    ["roundtrip", "--family", "eg:twistorno", "--window", "2:1"],
])
def test_malformed_input_exits_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--kmax", "many"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_json_diagnostic_has_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": ["1"],\n "arrows": [}')
    code, _, err = run(capsys, "analyze", "--quiver", str(p))
    assert code == 1 and "line 2" in err


def test_field_diagnostic_names_path(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"vertices": ["1"], "arrows": [{"id": "t", "from": "1", "to": "1", "degree": ["x"]}],
                             "grading_rank": 1, "relations": []}))
    code, _, err = run(capsys, "analyze", "--quiver", str(p))
    assert code == 1 and "arrows[0]" in err


# -- formats and determinism -------------------------------------------------------------------

@pytest.mark.parametrize("family", ["dynkin:A:3", "cobweb", "typeA:d=2:s=3"])
def test_tsv_json_parity(capsys, family):
    _, js, _ = run(capsys, "analyze", "--family", family)
    _, tsv, _ = run(capsys, "analyze", "--family", family, "--format", "tsv")
    assert parse_tsv(tsv) == json.loads(js)


def test_byte_identical_runs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["analyze", "--family", "dynkin:D:5", "--seed", "3", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_subprocess_determinism():
    cmd = [sys.executable, "-m", "fcy", "analyze", "--family", "dynkin:A:4", "--window=-3:3"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and b'"category_checks"' in outs[0]


def test_rationals_serialized_as_strings(capsys):
    _, out, _ = run(capsys, "preprojective", "--dynkin", "A:2")
    data = json.loads(out)
    coeffs = [t["coeff"] for r in data["relations"] for t in r]
    assert sorted(coeffs) == ["-1/1", "1/1"]


# -- other commands ---------------------------------------------------------------------------------

def test_preprojective_path_length(capsys):
    _, out, _ = run(capsys, "preprojective", "--dynkin", "A:3", "--path-length")
    assert all(a["degree"] == [1] for a in json.loads(out)["arrows"])


def test_jacobi_cobweb(capsys):
    code, out, _ = run(capsys, "jacobi", "--family", "cobweb")
    data = json.loads(out)
    assert code == 0 and len(data["arrows"]) == 25 and len(data["relations"]) == 25
    code, out, _ = run(capsys, "jacobi", "--family", "cobweb", "--cut-subalgebra")
    assert len(json.loads(out)["arrows"]) == 15


def test_jacobi_from_files(capsys, tmp_path):
    q, w, cut = cobweb_builtin()
    qp, wp, cp = tmp_path / "q.json", tmp_path / "w.json", tmp_path / "c.json"
    _, out, _ = run(capsys, "jacobi", "--family", "cobweb")
    data = json.loads(out)
    data["relations"] = []
    data.pop("potential", None)
    data.pop("cut", None)
    qp.write_text(json.dumps(data))
    wp.write_text(json.dumps(w.to_json()))
    cp.write_text(json.dumps({"cut": sorted(cut)}))
    code, out, _ = run(capsys, "analyze", "--quiver", str(qp), "--potential", str(wp), "--cut", str(cp), "--d", "2")
    assert code == 0 and json.loads(out)["cy"] == [14, 12]


def test_typeA_command(capsys):
    code, out, _ = run(capsys, "typeA", "--d-param", "2", "--s", "2")
    assert code == 0 and len(json.loads(out)["arrows"]) == 3


def test_dynkin_table(capsys):
    code, out, _ = run(capsys, "dynkin-table", "--types", "A3,D4,E6")
    rows = json.loads(out)
    assert code == 0
    assert [(r["type"], r["k"], r["N"], r["m"]) for r in rows] == [("A_3", 2, 2, 4), ("D_4", 1, 2, 3), ("E_6", 2, 10, 12)]
    assert rows[2]["h"] == 12 and rows[2]["expected"] == [10, 12]
    assert all(r["match"] for r in rows)


def test_dynkin_table_tsv(capsys):
    _, out, _ = run(capsys, "dynkin-table", "--types", "A2,D4", "--format", "tsv")
    lines = out.strip().split("\n")
    assert lines[0].split("\t")[:3] == ["type", "n", "h"]
    assert len(lines) == 3 and lines[2].endswith("true")


def test_roundtrip_command(capsys):
    for fam in ("eg:twistorno", "dynkin:A:3"):
        code, out, _ = run(capsys, "roundtrip", "--family", fam, "--window=-3:3")
        checks = json.loads(out)["category_checks"]
        assert code == 0 and checks["roundtrip"]["pass"] and checks["serre"]["pass"]


def test_roundtrip_window_too_small(capsys):
    code, _, err = run(capsys, "roundtrip", "--family", "dynkin:A:3", "--window", "0:0")
    assert code == 2 and "WindowTooSmall" in err and "degree 1" in err


def test_out_flag(capsys, tmp_path):
    p = tmp_path / "r.tsv"
    code, out, _ = run(capsys, "analyze", "--family", "dynkin:A:2", "--format", "tsv", "--out", str(p))
    assert code == 0 and out == "" and p.read_text().startswith("family\t")


def test_log_env(monkeypatch, capsys):
    monkeypatch.setenv("FCY_LOG", "debug")
    assert main(["analyze", "--family", "dynkin:A:2"]) == 0


def test_prime_field_flag(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "dynkin:D:4", "--char", "sgn", "--field", "fp:32003")
    rep = json.loads(out)
    assert code == 0 and rep["field"] == "fp:32003" and rep["cy"] == [2, 3]
