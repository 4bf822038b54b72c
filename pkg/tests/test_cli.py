from __future__ import annotations

import json

import pytest

from qlrc.cli import canonical_json, main
from qlrc.code import LinearCode
from qlrc.gf import field_create
from qlrc.linalg import Matrix

GF2 = field_create(2)
G642 = [[1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 1], [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 1]]
G532 = [[1, 0, 1, 0, 0], [0, 1, 1, 0, 1], [0, 0, 0, 1, 1]]


def _code_file(tmp_path, rows, name):
    path = tmp_path / name
    path.write_text(canonical_json(LinearCode.from_generator(Matrix(GF2, rows)).to_json()))
    return str(path)


@pytest.fixture(scope="module")
def golden_instance(tmp_path_factory):
    out = tmp_path_factory.mktemp("inst") / "f1.json"
    assert main(["construct", "--family", "1", "--q", "11", "--u", "2", "--v", "2", "--t", "2", "--out", str(out)]) == 0
    return out


def test_construct_writes_the_instance(golden_instance, capsys):
    obj = json.loads(golden_instance.read_text())
    assert [obj["quantum"][x] for x in "nkdq"] == [20, 8, 5, 11]
    assert obj["classical"]["k"] == 14


def test_construct_to_stdout(capsys):
    assert main(["construct", "--family", "2", "--q", "9", "--s", "2", "--v", "8", "--t", "1"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert [obj["quantum"][x] for x in "nkdq"] == [24, 14, 4, 9]


def test_construct_rejects_invalid_params(capsys):
    assert main(["construct", "--family", "1", "--q", "5", "--u", "2", "--v", "2", "--t", "1"]) == 2
    captured = capsys.readouterr()
    assert "u+v exceeds ⌊(q−1)/2⌋−1" in captured.err
    assert captured.out == ""


def test_construct_missing_flag(capsys):
    assert main(["construct", "--family", "2", "--q", "9", "--v", "8", "--t", "1"]) == 2
    assert "--s is required" in capsys.readouterr().err


def test_verify_example_code_is_not_dual_containing(tmp_path, capsys):
    path = _code_file(tmp_path, G642, "c642.json")
    assert main(["verify", path, "--r", "3", "--delta", "2"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().splitlines()[-1] == "optimal LRC: yes; quantum: not dual-containing"
    assert "d = 2, Singleton-like bound = 2" in out


def test_verify_golden_instance(golden_instance, capsys):
    assert main(["verify", str(golden_instance), "--form", "hermitian"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().splitlines()[-1] == "optimal LRC: yes; quantum: optimal"
    assert "[[20,8,5]]_11" in out and "identity 22 vs 22" in out


def test_verify_needs_both_locality_flags(tmp_path, capsys):
    path = _code_file(tmp_path, G642, "c642.json")
    assert main(["verify", path, "--r", "3"]) == 2
    assert "--delta" in capsys.readouterr().err


def test_truncated_json_exits_two(tmp_path, capsys):
    good = _code_file(tmp_path, G642, "ok.json")
    path = tmp_path / "bad.json"
    path.write_text(open(good).read()[:40])
    assert main(["verify", str(path), "--r", "3", "--delta", "2"]) == 2
    err = capsys.readouterr().err
    assert "MalformedInput" in err


def test_decompose_case_one_and_two(tmp_path, capsys):
    c642 = _code_file(tmp_path, G642, "c642.json")
    assert main(["decompose", c642, "--r", "3", "--delta", "2", "--json"]) == 0
    D = json.loads(capsys.readouterr().out)
    assert D["case"] == "I" and D["groups"] == [[0, 1, 2]] and D["terminal"] == [3] and D["residual"] == [4, 5]
    c532 = _code_file(tmp_path, G532, "c532.json")
    out = tmp_path / "d.json"
    assert main(["decompose", c532, "--r", "2", "--delta", "2", "--out", str(out)]) == 0
    assert "Case II" in capsys.readouterr().out
    assert json.loads(out.read_text())["case"] == "II"


def test_decompose_non_optimal_exits_two(tmp_path, capsys):
    c532 = _code_file(tmp_path, G532, "c532.json")
    assert main(["decompose", c532, "--r", "3", "--delta", "2"]) == 2
    assert "NotOptimal" in capsys.readouterr().err


def test_budget_exhaustion_exits_three(golden_instance, capsys):
    # without the stored distance the verifier has to search, and 10 subsets is not enough
    obj = json.loads(golden_instance.read_text())
    obj["classical"].pop("d", None)
    stripped = golden_instance.parent / "no_d.json"
    stripped.write_text(canonical_json(obj))
    assert main(["verify", str(stripped), "--max-codewords", "10", "--max-subsets", "10"]) == 3
    assert "BudgetExceeded" in capsys.readouterr().err


def test_quantize_even_weight_code(tmp_path, capsys):
    path = _code_file(tmp_path, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], "even.json")
    assert main(["quantize", path, "--r", "3", "--delta", "2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert [obj["quantum"][x] for x in "nkdq"] == [4, 2, 2, 2] and obj["verdict"]["optimal"]


def test_emit_json_is_idempotent(golden_instance, capsys):
    assert main(["emit", str(golden_instance)]) == 0
    assert capsys.readouterr().out == golden_instance.read_text()


def test_emit_text_and_latex_round_trip(golden_instance, capsys):
    code = LinearCode.from_json(json.loads(golden_instance.read_text())["classical"])
    H = code.H
    assert main(["emit", str(golden_instance), "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert len(text.splitlines()) == H.rows == 6
    assert Matrix.from_text(H.spec, text) == H
    assert main(["emit", str(golden_instance), "--format", "latex-matrix", "--matrix", "G"]) == 0
    G = code.G
    assert Matrix.from_latex(G.spec, capsys.readouterr().out) == G


def test_unknown_format_exits_two(golden_instance, capsys):
    assert main(["emit", str(golden_instance), "--format", "yaml"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_report_files(tmp_path, capsys):
    outdir = tmp_path / "report"
    args = ["construct", "--family", "1", "--q", "7", "--u", "1", "--v", "1", "--t", "1", "--report", str(outdir)]
    assert main(args) == 0
    capsys.readouterr()
    assert (outdir / "summary.tsv").read_text().splitlines()[1].split("\t")[:5] == ["family1_7_1_1_1", "49", "6", "4", "3"]
    assert (outdir / "parity_support.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
