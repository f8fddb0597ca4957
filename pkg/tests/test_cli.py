import json
import subprocess
import sys

import pytest

from cambrian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_cambrian(capsys):
    code, out, _ = run(capsys, "enumerate", "--kind", "camb", "--n", "4")
    assert code == 0
    assert "C_4 = 14 per signature; total 224" in out


def test_enumerate_empty(capsys):
    assert "C_0 = 1 per signature; total 1" in run(capsys, "enumerate", "--n", "0")[1]


@pytest.mark.parametrize("kind, sig, expected", [
    ("baxter", "++-+", "20"),
    ("tuple", "-+--,+---", "18"),
])
def test_enumerate_other_kinds(capsys, kind, sig, expected):
    code, out, _ = run(capsys, "enumerate", "--kind", kind, f"--sig={sig}")
    assert code == 0 and expected in out


def test_schroder_by_nodes(capsys):
    out = run(capsys, "enumerate", "--kind", "schroder", "--n", "4", "--by-nodes")[1]
    assert "1 9 21 14" in out


def test_psymbol_json_schema(capsys):
    code, out, _ = run(capsys, "psymbol", "--format", "json", "1+ 2-")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "cambrian/camb-tree/v1"
    assert data["tree"]["signature"] == "+-"


def test_psymbol_text(capsys):
    assert run(capsys, "psymbol", "2- 7+ 5- 1- 3+ 4- 6+")[1].strip() == "--+--++[1>3 2>1 3>4 4>6 5>4 7>5]"


def test_product_has_three_terms(capsys):
    out = run(capsys, "product", "--kind", "camb", "--basis", "P", "1- 2+", "2+ 1- 3+")[1]
    assert out.count("P[") == 3


def test_baxter_count_matrix(capsys):
    code, out, _ = run(capsys, "baxter-count", "--sig", "++-+", "--matrix")
    assert code == 0 and "20" in out


def test_export_dot(capsys, tmp_path):
    target = tmp_path / "lattice.dot"
    code, _, _ = run(capsys, "export", "--kind", "baxter", "--sig=-+--", "-o", str(target))
    text = target.read_text()
    assert code == 0 and text.startswith("digraph")
    assert text.count("label=") == 20


def test_lattice_json(capsys):
    data = json.loads(run(capsys, "lattice", "--sig=-+--", "--format", "json")[1])
    assert data["schema"] == "cambrian/lattice/v1"
    assert len(data["vertices"]) == 14 and len(data["covers"]) == 21 and data["is_lattice"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "psymbol", "2- 7x")
    assert code == 2
    assert "parse error" in err and "column 3" in err


def test_size_cap_rejected(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "12")
    assert code == 2 and err.startswith("error:")


def test_verify_goldens(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "goldens")
    assert code == 0 and "[PASS" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cambrian", "enumerate", "--n", "2"],
                          capture_output=True, text=True, check=True)
    assert "C_2 = 2" in proc.stdout
