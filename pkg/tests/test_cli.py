from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from superband import verify as V
from superband.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- eval ---------------------------------------------------------------------------------------


def test_eval_examples(capsys):
    assert run(capsys, "eval", "ber([[1,θ1],[θ2,1]])")[:2] == (EXIT_OK, "1 - g1.g2\n")
    assert run(capsys, "eval", "--unicode", "ber([[1,θ1],[θ2,1]])")[1] == "1 - θ1.θ2\n"
    assert run(capsys, "eval", "str([[2,0],[0,1]])")[1] == "1\n"


def test_eval_domain_error(capsys):
    code, out, err = run(capsys, "eval", "ber([[1,θ1],[θ2,θ1.θ2]])")
    assert code == EXIT_USAGE and out == ""
    assert err == "error: non-invertible body\n"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--format", "json", "pow([[0,g1],[g2,1]], 3)")
    data = json.loads(out)
    assert data["shape"] == [1, 1]
    assert data["entries"][1][1] == [{"mask": [], "coeff": "1"}, {"mask": [1, 2], "coeff": "-2"}]


def test_eval_parse_error(capsys):
    code, _, err = run(capsys, "eval", "g1 +")
    assert code == EXIT_USAGE and err.startswith("error:")


# -- ann ----------------------------------------------------------------------------------------


def test_ann_examples(capsys):
    code, out, _ = run(capsys, "ann", "--alpha", "g1", "--n", "3")
    assert code == EXIT_OK
    assert "basis: {g1.g2, g1.g3}" in out and "dimension: 2" in out
    code, out, _ = run(capsys, "ann", "--alpha", "θ1", "--n", "1")
    assert "basis: {}" in out and "dimension: 0" in out
    code, _, err = run(capsys, "ann", "--alpha", "0", "--n", "2")
    assert code == EXIT_USAGE and "alpha is zero" in err


def test_ann_json(capsys):
    _, out, _ = run(capsys, "ann", "--alpha", "g1", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert data["dimension"] == 2 and data["even_dimension"] == 4
    assert data["basis"][0] == [{"mask": [1, 2], "coeff": "1"}]


# -- cayley ---------------------------------------------------------------------------------------


def test_cayley_symbolic_wreath(capsys):
    code, out, _ = run(capsys, "cayley", "--symbolic", "wreath")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 10
    assert rows[0][1:] == ["e", "p[t]", "p[u]", "q[t]", "q[u]", "r[t;u]", "r[u;t]", "r[t;w]", "r[v;w]"]
    assert rows[9] == ["r[v;w]", "p[v]", "p[v]", "p[v]", "r[v;t]", "r[v;u]", "r[v;u]", "r[v;t]", "r[v;w]", "r[v;w]"]


def test_cayley_null_is_all_zero(capsys):
    _, out, _ = run(capsys, "cayley", "null", "--grid", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert {cell for row in rows[1:] for cell in row[1:]} == {"z"}


def test_cayley_band_grid(capsys, tmp_path):
    target = tmp_path / "band.json"
    code, out, _ = run(capsys, "cayley", "band", "2", "--grid", "2x2", "--format", "json", "--out", str(target))
    assert code == EXIT_OK and out == ""
    data = json.loads(target.read_text(encoding="utf-8"))
    assert len(data["labels"]) == 16 and data["closed"] is True


def test_cayley_usage_errors(capsys):
    assert run(capsys, "cayley", "null", "--symbolic")[0] == EXIT_USAGE
    assert run(capsys, "cayley", "band", "2", "--grid", "2y2")[0] == EXIT_USAGE
    assert run(capsys, "cayley", "band", "0")[0] == EXIT_USAGE


# -- eggbox ----------------------------------------------------------------------------------------


def test_eggbox_dot(capsys):
    code, out, _ = run(capsys, "eggbox", "(1|1)", "--axes", "R,L", "--format", "dot")
    assert code == EXIT_OK and out.startswith("graph eggbox {")
    assert out.count("rank=same") == 3


def test_eggbox_three_dimensional(capsys):
    code, out, _ = run(capsys, "eggbox", "(2|2)", "--axes", "R1,R2,L1")
    data = json.loads(out)
    assert code == EXIT_OK and data["axes"] == ["R1", "R2", "L1"]
    assert data["classes_per_axis"] == [2, 2, 2]
    assert sum(len(v) for v in data["cells"].values()) == 16


def test_eggbox_mixed_axes(capsys):
    code, out, _ = run(capsys, "eggbox", "(2|2)", "--axes", "H(1|2),D(12|1)")
    assert code == EXIT_OK
    assert json.loads(out)["axes"] == ["H(1|2)", "D(12|1)"]


@pytest.mark.parametrize(
    "argv",
    [
        ["eggbox", "(1|1)", "--axes", "R,R"],
        ["eggbox", "(1|1)", "--axes", "R3"],
        ["eggbox", "(2|2)", "--axes", "H(13|1)"],
        ["eggbox", "(2|3)"],
        ["eggbox", "(2|2)", "--axes", "R1,R2,L1", "--format", "dot"],
        ["eggbox", "(1|1)", "--axes", "X"],
    ],
)
def test_eggbox_rejects(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


# -- verify ----------------------------------------------------------------------------------------


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith("0 failed, 0 skipped")


def test_verify_single_generator(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1")
    assert code == EXIT_OK
    assert "warning:" in out and "2 skipped" in out


def test_verify_bad_alpha(capsys):
    code, _, err = run(capsys, "verify", "--alpha", "θ0+")
    assert code == EXIT_USAGE and err.startswith("error:")


def test_verify_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n_generators = 3\nalpha = g2\nseed = 4\n", encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--claim", "grassmann.annihilator", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["config"]["n_generators"] == 3 and data["config"]["alpha"] == "g2"
    assert [r["claim"] for r in data["results"]] == ["grassmann.annihilator"]
    cfg.write_text("n_generators = zero\n", encoding="utf-8")
    assert run(capsys, "verify", "--config", str(cfg))[0] == EXIT_USAGE
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.cfg"))[0] == EXIT_USAGE


def test_verify_unknown_claim(capsys):
    code, _, err = run(capsys, "verify", "--claim", "no.such.claim")
    assert code == EXIT_USAGE and "no claim matches" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(V, "CLAIMS", [("demo.always_fails", lambda ctx: V.CheckResult("demo.always_fails", V.FAIL, "", "x"))])
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_FAIL
    assert out.splitlines()[1].startswith("FAIL  demo.always_fails")
    assert "counterexample: x" in out


def test_tiers_are_exclusive(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--quick", "--full"])
    assert info.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superband", "eval", "θ2*θ1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "-g1.g2\n"
