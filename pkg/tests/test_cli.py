"""Command line behaviour: golden outputs, schema errors, exit codes, CSV."""

from __future__ import annotations

import csv
import io
import json

import pytest

from latpoly import SchemaError, as_poly, sym
from latpoly.cli import main, parse_weights, weights_to_json

DMR_JSON = json.dumps({
    "b": 0, "lambda": 1, "L": 2,
    "down_decorations": {"1": "kappa-1", "2": {"sym": "omega", "shift": -1}},
})


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_dmr_golden(capsys):
    code, out, _ = run_cli(["compute", "--model", "dmr",
                            "--param", "r=2", "--param", "L=2"], capsys)
    assert code == 0
    assert out.strip() == "kappa^2 + kappa*omega"


def test_compute_json_format(capsys):
    code, out, _ = run_cli(["compute", "--model", "dmr", "--param", "r=1",
                            "--param", "L=3", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "kappa" and doc["engine"] == "closed-form"


def test_compute_latex_format(capsys):
    code, out, _ = run_cli(["compute", "--model", "dmr", "--param", "r=2",
                            "--param", "L=2", "--format", "latex"], capsys)
    assert code == 0
    assert out.strip() == "\\kappa^{2} + \\kappa \\omega"


def test_compute_weights_file(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(DMR_JSON)
    code, out, _ = run_cli(["compute", "--weights", str(path), "--t", "4",
                            "--engines", "brute"], capsys)
    assert code == 0
    assert out.strip() == "kappa^2 + kappa*omega"


def test_crosscheck_model_agrees(capsys):
    code, out, _ = run_cli(["crosscheck", "--model", "rogers", "--param", "n=3",
                            "--param", "L=3"], capsys)
    assert code == 0
    assert "all agree" in out


def test_crosscheck_symbolic_grid(capsys):
    code, out, _ = run_cli(["crosscheck", "--t", "3", "--L", "2"], capsys)
    assert code == 0
    assert "all agree" in out


def test_crosscheck_weights_json_report(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(DMR_JSON)
    code, out, _ = run_cli(["crosscheck", "--weights", str(path), "--t", "3",
                            "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["agree"] is True
    assert len(doc["queries"]) == 4 * 9  # t <= 3, all 9 height pairs
    first = doc["queries"][0]
    assert set(first["engines"]) == {"brute", "tmatrix", "viennot-ct", "rho-ct"}
    assert all(m >= 0 for m in first["micros"].values())


def test_crosscheck_detects_disagreement(monkeypatch, capsys):
    import latpoly.cli as cli_mod
    monkeypatch.setattr(cli_mod, "transfer_matrix", lambda q, w: as_poly(999))
    code, out, err = run_cli(["crosscheck", "--t", "2", "--L", "1"], capsys)
    assert code == 1
    assert "MISMATCH" in out or "DISAGREEMENT" in out
    assert "999" in err


def test_invalid_model_params_exit_2(capsys):
    code, _, err = run_cli(["compute", "--model", "dmr", "--param", "r=2",
                            "--param", "L=1"], capsys)
    assert code == 2
    assert "at least 2" in err


def test_gf_plain_and_json(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_text(DMR_JSON)
    code, out, _ = run_cli(["gf", "--weights", str(path), "--order", "4"], capsys)
    assert code == 0
    assert out.strip() == "1 + kappa*x^2 + (kappa^2 + kappa*omega)*x^4 + O(x^5)"
    code, out, _ = run_cli(["gf", "--weights", str(path), "--order", "4",
                            "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["coefficients"]["4"] == "kappa^2 + kappa*omega"


def test_bench_csv(capsys):
    code, out, _ = run_cli(["bench", "--sweep", "t:1:4", "--L", "2",
                            "--engines", "rho-ct,tmatrix"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 * 2
    assert {r["engine"] for r in rows} == {"rho-ct", "tmatrix"}
    assert all(int(r["micros"]) > 0 for r in rows)
    assert all(int(r["terms"]) >= 0 for r in rows)


def test_bench_model_sweep(capsys):
    code, out, _ = run_cli(["bench", "--sweep", "n:1:4", "--model", "rogers",
                            "--engines", "closed-form"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4


def test_parse_weights_round_trip():
    w = parse_weights(DMR_JSON)
    assert w.strip_height == 2
    assert w.effective_lambda(1) == sym("kappa")
    assert w.effective_lambda(2) == sym("omega")
    doc = weights_to_json(w)
    again = parse_weights(json.dumps(doc))
    assert again == w
    assert weights_to_json(again) == doc


def test_parse_weights_schema_errors():
    with pytest.raises(SchemaError) as exc:
        parse_weights(json.dumps({"b": 0, "L": 2}))
    assert exc.value.pointer == "/lambda"
    with pytest.raises(SchemaError) as exc:
        parse_weights(json.dumps({"b": 0.5, "lambda": 1, "L": 2}))
    assert exc.value.pointer == "/b"
    with pytest.raises(SchemaError) as exc:
        parse_weights(json.dumps(
            {"b": 0, "lambda": 1, "L": 2, "down_decorations": {"1": 1.5}}))
    assert exc.value.pointer == "/down_decorations/1"
    with pytest.raises(SchemaError) as exc:
        parse_weights(json.dumps(
            {"b": 0, "lambda": 1, "L": 2, "down_decorations": {"x": "kappa"}}))
    assert "height" in str(exc.value)
    with pytest.raises(SchemaError):
        parse_weights(json.dumps({"b": 0, "lambda": 1, "L": 2, "zzz": 1}))
    with pytest.raises(SchemaError):
        parse_weights("not json")


def test_parse_weights_rational_background():
    w = parse_weights(json.dumps({"b": "1/2", "lambda": "3/2", "L": 1,
                                  "down_decorations": {"1": "1/2"}}))
    assert w.background_b == as_poly(1) .as_fraction() / 2
    assert w.effective_lambda(1) == as_poly(2).as_fraction()


def test_missing_inputs_exit_2(capsys):
    code, _, err = run_cli(["compute", "--t", "2"], capsys)
    assert code == 2 and "need" in err
    code, _, err = run_cli(["bench", "--sweep", "q:1:2", "--L", "1"], capsys)
    assert code == 2
