import json
from fractions import Fraction
from pathlib import Path

import pytest

from ellgenus.algebra import qseries_from_json
from ellgenus.cli import ConfigError, main, parse_config

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc, indent=2))
    return str(p)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def hyper(method, degree=2, **extra):
    return {"model": "hypersurface", "dims": [4], "degree": degree, "method": method,
            "backend": "exact", "orders": {"T": 2}, **extra}


def test_closed_form_matches_residue(capsys):
    code, out, _ = run_cli(capsys, "compare", str(CONFIGS / "k3_closed_form.json"), str(CONFIGS / "k3_residue.json"))
    assert code == 0
    assert json.loads(out)["status"] == "PASS"


def test_residue_vs_division_sum_on_quadric(tmp_path, capsys):
    a = write(tmp_path, "a.json", hyper("residue"))
    b = write(tmp_path, "b.json", hyper("division_sum"))
    code, out, _ = run_cli(capsys, "compare", a, b)
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_mismatch_reports_first_difference(tmp_path, capsys):
    a = write(tmp_path, "a.json", hyper("residue", 4))
    b = write(tmp_path, "b.json", {"model": "complete_intersection", "dims": [4], "matrix": [[2]],
                                   "method": "residue", "orders": {"T": 2}})
    code, out, _ = run_cli(capsys, "compare", a, b)
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "FAIL"
    assert "first_difference" in rep


def test_worked_example_structure(capsys):
    code, out, _ = run_cli(capsys, "run", "--config", str(CONFIGS / "ci_division_sum.json"), "--order", "1")
    assert code == 0
    doc = json.loads(out)
    st = doc["structure"]
    assert st["snf"]["D"] == [1, 1, 12]
    assert st["cosets"] == 144 and st["condition"] is True
    assert doc["result"]["skipped"]


def test_exact_output_round_trips(capsys):
    code, out, _ = run_cli(capsys, "run", str(CONFIGS / "k3_residue.json"))
    assert code == 0
    series = qseries_from_json(json.loads(out)["result"]["series"])
    assert [series[k] for k in range(4)] == [Fraction(v) for v in (-4, -96, -96, -384)]


def test_runs_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "run", str(CONFIGS / "quintic_lg.json"), "--order", "1")
    _, second, _ = run_cli(capsys, "run", str(CONFIGS / "quintic_lg.json"), "--order", "1")
    assert first == second and first


def test_text_output(capsys):
    code, out, _ = run_cli(capsys, "run", str(CONFIGS / "k3_residue.json"), "--output", "text")
    assert code == 0 and "-96" in out


def test_malformed_matrix_is_line_anchored(capsys):
    code, _, err = run_cli(capsys, "run", str(CONFIGS / "bad_matrix.json"))
    assert code == 2
    assert "bad_matrix.json:4:" in err


def test_numeric_requires_tau(tmp_path, capsys):
    p = write(tmp_path, "n.json", hyper("residue", backend="numeric"))
    assert run_cli(capsys, "run", p)[0] == 2
    assert run_cli(capsys, "run", p, "--tau", "0,1")[0] == 0


def test_condition_violated(tmp_path, capsys):
    p = write(tmp_path, "c.json", hyper("division_sum", 3))
    assert run_cli(capsys, "run", p)[0] == 3


def test_degenerate_lg_term(tmp_path, capsys):
    doc = {"model": "lg_orbifold", "charges": ["1/3"] * 9,
           "generator": ["1/3"] * 4 + ["-1/6"] * 3 + ["1/12"] * 2, "order": 12,
           "method": "lg", "backend": "numeric", "tau": [0, 1], "z": [0, 0.5]}
    assert run_cli(capsys, "run", write(tmp_path, "d.json", doc))[0] == 4


def test_parse_errors():
    with pytest.raises(ConfigError, match="unknown"):
        parse_config(json.dumps({**hyper("residue"), "colour": 1}))
    with pytest.raises(ConfigError):
        parse_config("{", "x.json")
    with pytest.raises(ConfigError):
        parse_config(json.dumps({**hyper("residue"), "tau": [0, 1]}))
    with pytest.raises(ConfigError):
        parse_config(json.dumps(hyper("lg")))


def test_missing_config(capsys):
    assert run_cli(capsys, "run")[0] == 2
    assert run_cli(capsys, "run", "/nonexistent.json")[0] == 2
