import json
import math

import jsonschema
import pytest
import scipy.special as sp

from tiger_codes.cli import load_schema, locate, main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_analyze_report_matches_schema(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "pair-cat")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, load_schema("analysis_report.schema.json"))
    assert rep["x_distance"]["d_X"] == 2
    assert rep["z_distance"]["d_Z"] == pytest.approx(4.0, abs=1e-9)


def test_analyze_definition_file(tmp_path, capsys):
    path = write(tmp_path, "fm.json", json.dumps(
        {"G": [[1, 1, 0, 0], [0, 0, 1, 1], [0, 2, 0, 2]], "H": [[1, -1, -1, 1]], "alpha": 0.8}))
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    rep = json.loads(out)
    assert rep["logical"]["orders"] == [2]


def test_bad_json_reports_location(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"G": [[1, 1]],\n "H": [[1, -1]')
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert f"{path}:2:" in err


def test_css_violation_names_rows(tmp_path, capsys):
    path = write(tmp_path, "bad.json", json.dumps({"G": [[1, 0]], "H": [[1, 1]]}))
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert "G[0].H[0] = 1" in err


def test_oversized_integer_is_located(tmp_path, capsys):
    text = '{\n  "G": [[1, 1]],\n  "H": [[1, 99999999999999999999]]\n}'
    path = write(tmp_path, "big.json", text)
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert f"{path}:3:13" in err and "2^53" in err and "$.H[0][1]" in err


def test_unknown_key_rejected(tmp_path, capsys):
    path = write(tmp_path, "extra.json", json.dumps({"G": [], "H": [], "colour": 1}))
    assert run(capsys, "analyze", path)[0] == 2


def test_code_source_is_required(capsys):
    assert run(capsys, "distance")[0] == 2
    assert run(capsys, "distance", "--catalog", "no-such-code")[0] == 2
    assert run(capsys, "distance", "--catalog", "pair-cat", "--r", "3")[0] == 2


def test_inadmissible_delta_exit_code(tmp_path, capsys):
    path = write(tmp_path, "empty.json", json.dumps({"G": [[2, -2]], "H": [[1, 1]], "delta": [-1]}))
    code, _, err = run(capsys, "codewords", path)
    assert code == 3 and "error:" in err
    assert run(capsys, "codewords", "--catalog", "two-mode-binomial", "--delta", "-1")[0] == 2


def test_search_bound_exit_code(capsys):
    code, out, _ = run(capsys, "distance", "--catalog", "calabi-yau", "--bound", "5")
    assert code == 4
    assert json.loads(out)["status"] == "exceeds_bound"


def test_distance_output(capsys):
    code, out, _ = run(capsys, "distance", "--catalog", "calabi-yau")
    doc = json.loads(out)
    assert code == 0 and doc["d_X"] == 6 and doc["witness"] == [3, -1, -1, -1]
    assert doc["expected"]["d_X"] == 6


def test_dephasing_tsv(capsys):
    code, out, _ = run(capsys, "dephasing", "--catalog", "two-component-cat",
                       "--alpha-sq", "1:4:4", "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert float(lines[0].split()[-1]) == pytest.approx(-4.0, abs=1e-8)
    assert lines[2] == "alpha_sq\tlog_abs_sq"
    assert len(lines) == 3 + 4


def test_gkz_value(capsys):
    code, out, _ = run(capsys, "gkz", "--catalog", "pair-cat", "--delta", "2", "--alpha", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["sum"][0] == pytest.approx(sp.iv(2, 2.0), rel=1e-14)
    assert doc["closed_form"]["value"][0] == pytest.approx(sp.iv(2, 2.0), rel=1e-14)


def test_gkz_integral_and_complex_y(capsys):
    code, out, _ = run(capsys, "gkz", "--catalog", "pair-cat", "--y", "1+0.5i", "0.3",
                       "--integral")
    doc = json.loads(out)
    assert code == 0
    assert doc["integral"][0] == pytest.approx(doc["sum"][0], abs=1e-12)
    assert doc["integral"][1] == pytest.approx(doc["sum"][1], abs=1e-12)


def test_codewords_jsonl(tmp_path, capsys):
    target = tmp_path / "cw.jsonl"
    code, _, _ = run(capsys, "codewords", "--catalog", "two-mode-binomial", "--delta", "2",
                     "-o", str(target))
    assert code == 0
    rows = [json.loads(x) for x in target.read_text().splitlines()]
    headers = [r for r in rows if "dim" in r]
    assert len(headers) == 2
    amps = [r for r in rows if "n" in r]
    assert sum(r["re"] ** 2 + r["im"] ** 2 for r in amps) == pytest.approx(2.0, abs=1e-14)


def test_catalog_list_definitions_reingest(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog-list", "--definitions-dir", str(tmp_path))
    assert code == 0
    families = [item["family"] for item in json.loads(out)]
    for fam in families:
        c, _, err = run(capsys, "distance", str(tmp_path / f"{fam}.json"), "--bound", "6")
        assert c in (0, 4), (fam, err)


def test_thread_cap(capsys, monkeypatch):
    assert run(capsys, "--threads", "1", "distance", "--catalog", "pair-cat")[0] == 0
    monkeypatch.setenv("TIGER_THREADS", "zero")
    assert run(capsys, "distance", "--catalog", "pair-cat")[0] == 2


def test_locate_and_grid_helpers():
    text = '{"a": [1,\n  {"b": 7}]}'
    assert locate(text, ["a", 1, "b"]) == (2, 9)
    assert locate(text, ["missing"]) is None
    assert parse_grid("4:12:9").tolist() == [float(v) for v in range(4, 13)]
    assert parse_grid("1,2.5").tolist() == [1.0, 2.5]
    assert math.isclose(parse_grid("0:1:3")[1], 0.5)
