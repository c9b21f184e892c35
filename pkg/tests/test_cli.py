import json

import pytest

from doublelie.aybe import tensor_from_rb
from doublelie.cli import main
from doublelie.double_bracket import bracket_from_rb
from doublelie.formats import (FormatError, bracket_from_json, bracket_to_json, dumps, ncpoly_from_json,
                               ncpoly_to_json, operator_from_json, operator_to_json, tensor_from_json,
                               tensor_to_json)
from doublelie.free_ncpoly import NCPoly
from doublelie.matrix_rb import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# -- formats ------------------------------------------------------------------

def test_operator_format_roundtrip():
    R = catalog("ex3", 3)
    obj = operator_to_json(R)
    assert obj["entries"][0]["from"] == [1, 1]
    assert operator_from_json(json.loads(dumps(obj))) == R


def test_bracket_and_tensor_roundtrip():
    R = catalog("ex4", 3)
    B = bracket_from_rb(R)
    B2, lam = bracket_from_json(bracket_to_json(B, 1))
    assert B2 == B and lam == 1
    r = tensor_from_rb(R)
    assert tensor_from_json(tensor_to_json(r, 3)) == (r, 3)


def test_ncpoly_format():
    p = NCPoly({(0, 2): "1/2", (): -1})
    obj = ncpoly_to_json(p)
    assert obj == {"terms": [["-1", []], ["1/2", [1, 3]]]}
    assert ncpoly_from_json(obj) == p


@pytest.mark.parametrize("obj, field", [
    ({"entries": []}, "'n'"),
    ({"n": 2, "entries": [{"from": [1, 3], "to": []}]}, "entries[0].from"),
    ({"n": 2, "entries": [{"from": [1, 1], "to": [["x", 1, 1]]}]}, "entries[0].to[0]"),
    ({"n": 2, "entries": [{"from": [1, 1], "to": []}, {"from": [1, 1], "to": []}]}, "entries[1].from"),
])
def test_operator_format_errors(obj, field):
    with pytest.raises(FormatError, match=field.replace("[", r"\[").replace("]", r"\]")):
        operator_from_json(obj)


# -- commands -----------------------------------------------------------------

def test_rb_check_pass_and_fail(capsys):
    code, rep = report(capsys, "rb", "check", "--catalog", "ex1", "--n", "3", "--lambda", "1")
    assert code == 0 and rep["passed"] and rep["witness_count"] == 0
    code, rep = report(capsys, "rb", "check", "--catalog", "ex3", "--n", "3", "--lambda", "1")
    assert code == 1 and not rep["passed"] and rep["witnesses"]


def test_skew_check_and_split(capsys):
    code, rep = report(capsys, "rb", "skew-check", "--catalog", "ex2", "--n", "4")
    assert code == 0 and rep["lambda"] == "1"
    code, rep = report(capsys, "rb", "split", "--catalog", "ex1", "--n", "2")
    assert code == 0 and rep["I2prime"] == [[["0", "1"], ["0", "0"]]]


def test_free_check_mdp(capsys):
    code, rep = report(capsys, "free", "check-mdp", "--catalog", "ex3", "--lambda", "-1", "--max-deg", "3")
    assert code == 0 and rep["passed"]


def test_free_extend(capsys):
    code, rep = report(capsys, "free", "extend", "--catalog", "ex3", "--left", "1", "--right", "2,3")
    assert code == 0 and rep["value"] == [["-1", [1], [2, 3]]]


def test_jobs_do_not_change_output(capsys):
    args = ["free", "check-mdp", "--catalog", "ex1", "--n", "2", "--lambda", "1", "--max-deg", "3"]
    _, one, _ = run(capsys, *args)
    _, two, _ = run(capsys, *args, "--jobs", "2")
    assert one == two


def test_conversion_roundtrip(capsys, tmp_path):
    src = tmp_path / "r.json"
    src.write_text(dumps(operator_to_json(catalog("ex4", 3))))
    br, rb = tmp_path / "b.json", tmp_path / "r2.json"
    assert main(["rb", "to-bracket", "--in", str(src), "--lambda", "1", "--out", str(br)]) == 0
    assert main(["bracket", "to-rb", "--in", str(br), "--out", str(rb)]) == 0
    assert rb.read_text() == src.read_text()
    t, r3 = tmp_path / "t.json", tmp_path / "r3.json"
    assert main(["rb", "to-aybe", "--in", str(src), "--out", str(t)]) == 0
    assert main(["aybe", "to-rb", "--in", str(t), "--out", str(r3)]) == 0
    assert r3.read_text() == src.read_text()
    code, rep = report(capsys, "bracket", "check", "--in", str(br))
    assert code == 0
    code, rep = report(capsys, "aybe", "check", "--in", str(t), "--lambda", "-1")
    assert code == 0


def test_bracket_ideal(capsys):
    code, rep = report(capsys, "bracket", "ideal", "--catalog", "ex4", "--n", "3")
    assert code == 0 and rep["span"] == [["1", "0", "0"]]
    code, rep = report(capsys, "bracket", "ideal", "--catalog", "ex4", "--n", "3", "--span", "2")
    assert code == 1


def test_poly_commands(capsys):
    code, rep = report(capsys, "poly", "bracket", "--family", "M1", "--i", "1", "--j", "3")
    assert rep["value"] == [["1", 1, 3], ["1", 2, 2]]
    assert report(capsys, "poly", "check", "--family", "L2", "--truncate", "6")[0] == 0
    assert report(capsys, "poly", "check", "--family", "M1", "--truncate", "4", "--lambda", "0")[0] == 1
    assert report(capsys, "poly", "ideal", "--family", "M1")[0] == 0
    code, rep = report(capsys, "poly", "ideal", "--family", "M1", "--gens", "0")
    assert code == 1 and rep["witnesses"][0]["exponents"] == [0, 2]
    assert report(capsys, "poly", "iso", "--family", "M2")[0] == 0


def test_double_commands(capsys):
    assert report(capsys, "double", "assoc", "--catalog", "ex1", "--n", "2")[0] == 0
    code, rep = report(capsys, "double", "qform", "--catalog", "ex1", "--n", "2")
    assert code == 1 and rep["theta_criterion"] is False


def test_catalog_list(capsys):
    code, rep = report(capsys, "catalog", "list")
    assert code == 0 and [e["name"] for e in rep["entries"]][:4] == ["ex1", "ex2", "ex3", "ex4"]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "rb", "check", "--n", "3")[0] == 2
    assert run(capsys, "rb", "frobnicate")[0] == 2
    assert run(capsys, "rb", "check", "--catalog", "ex1", "--n", "2", "--lambda", "1/0")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "entries": [{"from": [1, 3], "to": []}]}')
    code, _, err = run(capsys, "rb", "check", "--in", str(bad), "--lambda", "1")
    assert code == 2 and "entries[0].from" in err
    bad.write_text("{not json")
    assert run(capsys, "rb", "check", "--in", str(bad), "--lambda", "1")[0] == 2


def test_output_is_deterministic(capsys):
    args = ["rb", "check", "--catalog", "ex3", "--n", "3", "--lambda", "1"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]
    _, rep = report(capsys, *args, "--timing")
    assert "timing_s" in rep
