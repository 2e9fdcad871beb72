import json
import subprocess
import sys

import pytest

from helstrom_gpt.cli import main

SQUARE = {"kind": "square", "states": [[0.2, 0.5], [0.7, 0.5]], "priors": [0.5, 0.5]}
CLASSICAL = {"kind": "classical", "states": [[0.7, 0.3], [0.2, 0.8]], "priors": [0.4, 0.6]}
QUBIT = {"kind": "quantum-qubit", "states": [[1, 0, 0], [0, 1, 0]], "priors": [0.5, 0.5]}
PURE4 = {"kind": "square", "states": [[0, 0], [0, 1], [1, 0], [1, 1]],
         "priors": [0.25, 0.25, 0.25, 0.25]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="model.json"):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_discriminate_square(capsys, write):
    code, out, _ = run(capsys, "discriminate", write(SQUARE))
    doc = json.loads(out)
    assert code == 0
    assert doc["helstrom_bound"] == pytest.approx(0.75, abs=1e-9)
    assert doc["cross_checks"]["square_closed_form"] == pytest.approx(0.75)
    assert doc["model"] == SQUARE
    assert doc["wall_time"] >= 0
    assert len(doc["observable"]) == 2


def test_discriminate_classical(capsys, write):
    code, out, _ = run(capsys, "discriminate", write(CLASSICAL))
    doc = json.loads(out)
    assert code == 0
    assert doc["helstrom_bound"] == pytest.approx(0.76, abs=1e-9)
    assert doc["cross_checks"]["map_oracle"] == pytest.approx(0.76, abs=1e-15)


def test_discriminate_qubit(capsys, write):
    code, out, _ = run(capsys, "discriminate", write(QUBIT))
    doc = json.loads(out)
    assert code == 0
    assert doc["helstrom_bound"] == pytest.approx(0.5 * (1 + 2 ** 0.5 / 2), abs=1e-12)
    assert doc["certificate"]["certified"]
    assert len(doc["observable"]["povm"]) == 2


def test_discriminate_bad_priors(capsys, write):
    code, _, err = run(capsys, "discriminate", write(dict(SQUARE, priors=[0.5, 0.4])))
    assert code == 2
    assert "priors" in err


def test_quantum_three_states_rejected(capsys, write):
    doc = {"kind": "quantum-qubit", "states": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
           "priors": [0.3, 0.3, 0.4]}
    code, _, err = run(capsys, "discriminate", write(doc))
    assert code == 2 and "polytope embedding" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "discriminate", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_family_geometric_uncertified(capsys, write):
    code, out, _ = run(capsys, "family", write(SQUARE), "--construct", "geometric", "--certify")
    doc = json.loads(out)
    assert code == 0
    assert doc["family"]["ratio"] == pytest.approx(7 / 9, abs=1e-12)
    assert doc["certificate"]["certified"] is False
    assert "helstrom_bound" not in doc


def test_family_parallel_certified(capsys, write):
    code, out, _ = run(capsys, "family", write(SQUARE), "--construct", "parallel", "--certify")
    doc = json.loads(out)
    assert code == 0
    assert doc["family"]["ratio"] == pytest.approx(0.75, abs=1e-12)
    assert doc["certificate"]["certified"] is True
    assert doc["helstrom_bound"] == pytest.approx(0.75)


def test_family_weaken_to_one_keeps_reference(capsys, write):
    path = write(SQUARE)
    _, out, _ = run(capsys, "family", path, "--construct", "geometric")
    base = json.loads(out)["family"]
    code, out, _ = run(capsys, "family", path, "--construct", "geometric", "--weaken", "1.0")
    fam = json.loads(out)["family"]
    assert code == 0
    assert fam["ratio"] == 1.0
    assert fam["reference"] == pytest.approx(base["reference"], abs=1e-12)
    assert fam["tilde_p"] == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("argv,fragment", [
    (["--reference", "0.2,0.5"], "coincides"),
    (["--reference", "1.5,0.5"], "outside"),
    (["--reference", "a,b"], "reference"),
    (["--weaken", "0.5"], "target ratio"),
])
def test_family_input_errors(capsys, write, argv, fragment):
    code, _, err = run(capsys, "family", write(SQUARE), *argv)
    assert code == 2 and fragment in err


@pytest.mark.parametrize("model,construct", [
    (SQUARE, "geometric"), (SQUARE, "parallel"), (CLASSICAL, "parallel"),
    (CLASSICAL, "trivial"), (PURE4, "parallel"), (PURE4, "geometric"),
])
def test_result_document_recertifies(capsys, write, model, construct):
    _, out, _ = run(capsys, "family", write(model), "--construct", construct, "--certify")
    first = json.loads(out)
    code, out, _ = run(capsys, "family", write(first, "result.json"))
    second = json.loads(out)
    assert code == 0
    assert second["certificate"]["certified"] == first["certificate"]["certified"]
    assert second["family"] == first["family"]


def test_parallel_unsupported(capsys, write):
    doc = {"kind": "square", "states": [[0.1, 0.1], [0.9, 0.2], [0.5, 0.9]],
           "priors": [0.3, 0.3, 0.4]}
    code, _, err = run(capsys, "family", write(doc), "--construct", "parallel")
    assert code == 2 and "parallel" in err


def test_family_three_states_lp_certificate(capsys, write):
    doc = {"kind": "square", "states": [[0.1, 0.1], [0.9, 0.2], [0.5, 0.9]],
           "priors": [0.3, 0.3, 0.4]}
    code, out, _ = run(capsys, "family", write(doc), "--certify")
    cert = json.loads(out)["certificate"]
    assert code == 0 and cert["method"] == "observable"
    assert cert["success"] <= json.loads(out)["family"]["ratio"] + 1e-9


def test_repro_single_case(capsys):
    code, out, _ = run(capsys, "repro", "--case", "square-pure")
    assert code == 0
    assert "3/3 rows pass" in out


def test_repro_failure_exit(capsys):
    code, out, _ = run(capsys, "--tolerance", "-1", "repro", "--case", "square-pure")
    assert code == 1 and "FAIL" in out


def test_plot_case_and_unwritable(capsys, tmp_path):
    out_path = tmp_path / "sq.svg"
    assert main(["plot", "--case", "square-binary", "--out", str(out_path)]) == 0
    assert out_path.read_text().startswith("<?xml")
    code = main(["plot", "--case", "square-binary", "--out", str(tmp_path / "no" / "x.svg")])
    assert code == 3
    assert "cannot write" in capsys.readouterr().err


def test_plot_model_errors(capsys, write):
    doc = {"kind": "classical", "states": [[0.7, 0.2, 0.1, 0.0], [0.2, 0.3, 0.4, 0.1]],
           "priors": [0.5, 0.5]}
    assert main(["plot", write(doc)]) == 2
    assert "3-dimensional" in capsys.readouterr().err
    assert main(["plot"]) == 2


def test_console_entry_point(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(CLASSICAL))
    proc = subprocess.run([sys.executable, "-m", "helstrom_gpt.cli", "discriminate", str(p)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["helstrom_bound"] == pytest.approx(0.76)
