import csv
import json

import pytest

from vermahom.braiding import BraidWord, braid_matrix
from vermahom.cli import main, parse_assignment
from vermahom.homology import HVector
from vermahom.ring import VariableSet, parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_basis(capsys):
    assert run(capsys, "basis", "--n", "2", "--r", "1") == (0, "(0,1)\n(1,0)\ncount=2\n", "")
    assert run(capsys, "basis", "--n", "1", "--r", "0")[1] == "(0)\ncount=1\n"
    code, out, _ = run(capsys, "basis", "--n", "3", "--r", "2")
    assert code == 0 and out.splitlines()[-1] == "count=6"


def test_usage_errors(capsys):
    assert run(capsys, "basis", "--n", "0", "--r", "1")[0] == 2
    assert run(capsys, "basis", "--n", "2", "--r", "-1")[0] == 2
    assert run(capsys, "matrix", "--word", "s5", "--n", "3", "--r", "1")[0] == 2
    assert run(capsys, "check", "nonsense")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_matrix_braid_relation_byte_identical(capsys):
    outs = []
    for word in ("s1 s2 s1", "s2 s1 s2"):
        code, out, _ = run(capsys, "matrix", "--word", word, "--n", "3", "--r", "2", "--basis", "A")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    obj = json.loads(outs[0])
    assert obj["colors_target"] == ["s3", "s2", "s1"]


def test_matrix_csv_matches_api(capsys, tmp_path):
    target = tmp_path / "m.csv"
    code, out, _ = run(capsys, "matrix", "--word", "s1 s2^-1", "--n", "3", "--r", "1", "--basis", "A",
                       "--colors", "unicolor", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    lines = list(csv.reader(target.read_text().splitlines()))
    assert lines[0] == ["", "(0,0,1)", "(0,1,0)", "(1,0,0)"]
    m = braid_matrix(BraidWord.parse("s1 s2^-1", 3), 1, "A", ("s",) * 3, VariableSet.unicolor())
    uni = VariableSet.unicolor()
    assert len(lines) == 1 + len(m.rows)
    for cells, row in zip(lines[1:], m.rows):
        assert [parse_poly(c, uni) for c in cells[1:]] == list(row)


def test_matrix_fork_csv_has_denominator(capsys):
    code, out, _ = run(capsys, "matrix", "--word", "s1", "--n", "2", "--r", "2", "--basis", "Fork", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "denominator,tt + 1"


def test_matrix_subst_and_eval(capsys):
    code, out, _ = run(capsys, "matrix", "--word", "s1", "--n", "2", "--r", "1", "--colors", "unicolor",
                       "--subst", "s=q", "--eval", "q=zeta(6,1)")
    assert code == 0
    obj = json.loads(out)
    assert "values" in obj and "rows" not in obj
    assert len(obj["values"]) == 2
    assert parse_assignment("q=zeta(7,2),tt=1/3")["tt"] == pytest.approx(1 / 3)
    assert run(capsys, "matrix", "--word", "s1", "--n", "2", "--r", "1", "--eval", "q=abc")[0] == 2


def test_endomorphism_flag(capsys):
    code, _, err = run(capsys, "matrix", "--word", "s1", "--n", "2", "--r", "1", "--endomorphism")
    assert code == 1 and "not pure" in err
    assert run(capsys, "matrix", "--word", "s1 s1", "--n", "2", "--r", "1", "--endomorphism")[0] == 0
    assert run(capsys, "matrix", "--word", "s1", "--n", "2", "--r", "1", "--endomorphism",
               "--colors", "unicolor")[0] == 0


@pytest.mark.parametrize("argv", [
    ("check", "hopf", "--n", "2", "--rmax", "3"),
    ("check", "basis-change", "--n", "3", "--r", "2"),
    ("check", "relations", "--n", "4", "--rmax", "2"),
    ("check", "bridge", "--n", "5"),
])
def test_check_suites_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    last = out.splitlines()[-1]
    done, total = last.split(": ")[1].split()[0].split("/")
    assert done == total


def _write_vector(tmp_path, v):
    path = tmp_path / "v.json"
    path.write_text(v.to_json())
    return path


def test_change_basis(capsys, tmp_path):
    vs = VariableSet.colored(2)
    path = _write_vector(tmp_path, HVector.basis_vector((2, 0), vs, "Fork"))
    code, out, _ = run(capsys, "change-basis", str(path), "--to", "U")
    assert code == 0
    back = HVector.from_json(out)
    assert back.basis == "U" and back.terms == {(2, 0): parse_poly("1 + tt", vs)}
    assert run(capsys, "change-basis", str(path), "--from", "A", "--to", "U")[0] == 2
    assert run(capsys, "change-basis", str(tmp_path / "missing.json"), "--to", "U")[0] == 2


def test_change_basis_not_invertible(capsys, tmp_path):
    vs = VariableSet.colored(2)
    path = _write_vector(tmp_path, HVector.basis_vector((2, 0), vs, "U"))
    code, _, err = run(capsys, "change-basis", str(path), "--to", "Fork")
    assert code == 1 and "(2)_tt!" in err


def test_deterministic_output(capsys):
    argv = ("matrix", "--word", "s1^-1 s2 s1", "--n", "3", "--r", "2", "--basis", "Loop", "--colors", "unicolor")
    assert run(capsys, *argv) == run(capsys, *argv)
