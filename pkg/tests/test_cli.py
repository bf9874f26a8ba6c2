import json
import subprocess
import sys

import pytest

from corack.corack import CorackAlgebra, corack_check, ol_corack, stock_hopf
from corack.leibniz import LeibnizAlgebra, omni_lie
from golden_cases import CASES, GOLDEN, run
from oracles import commutator_constants


def golden(name):
    return (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name,argv,src", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv, src):
    code, out = run(argv, golden(src) if src else None)
    assert code == 0
    assert out == golden(name)


# -- gen ---------------------------------------------------------------------------------


def test_gen_matches_library_json():
    code, out = run(["gen", "ol", "--n", "1"])
    assert code == 0
    assert json.loads(out) == ol_corack(1).to_json()
    assert json.loads(out)["nabla"]["t1"] == "s11@1*t1@2"


def test_gen_trivial():
    obj = json.loads(run(["gen", "trivial", "--gens", "x,y", "--relations", "x^2"])[1])
    assert obj["nabla"] == {"x": "x@2", "y": "y@2"}
    assert obj["relations"] == ["x^2"]


def test_gen_heisenberg_f2():
    obj = json.loads(golden("gen_conj_heis_f2"))
    assert obj["field"] == {"type": "Fp", "p": 2}
    C = CorackAlgebra.from_json(obj, check=True)
    assert corack_check(C).ok


def test_gen_group_from_file(tmp_path):
    H = stock_hopf("gm")
    obj = H.pres.to_json()
    obj["delta"] = {"s": "s@1*s@2"}
    obj["antipode"] = {"s": "1/s"}
    path = tmp_path / "gm.json"
    path.write_text(json.dumps(obj))
    code, out = run(["gen", "conj", "--group", str(path)])
    assert code == 0
    assert json.loads(out)["nabla"] == {"s": "s@2"}


def test_gen_bad_hopf_file_is_input_error(tmp_path):
    obj = stock_hopf("gm").pres.to_json()
    obj["delta"] = {"s": "s@1 + s@2"}
    obj["antipode"] = {"s": "1/s"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    assert run(["gen", "conj", "--group", str(path)])[0] == 2


def test_gen_slow_gate():
    assert run(["gen", "ol", "--n", "3"])[0] == 2
    assert run(["gen", "conj", "--group", "gl", "--n", "3"])[0] == 2


def test_out_flag(tmp_path):
    path = tmp_path / "ol1.json"
    code, out = run(["gen", "ol", "--n", "1", "--out", str(path)])
    assert code == 0 and out == ""
    assert path.read_text() == golden("gen_ol1")


# -- check --------------------------------------------------------------------------------


def test_check_reports():
    rep = json.loads(golden("check_ol1"))
    assert rep["ok"] and rep["predicates"]["quandle"] is False
    rep = json.loads(golden("check_trivial_xy"))
    assert rep["ok"] and rep["predicates"]["involutory"] is True


def test_check_corrupted_exits_one():
    obj = json.loads(golden("gen_ol1"))
    obj["nabla"]["t1"] = "t1@1*t1@2"
    code, out = run(["check"], json.dumps(obj))
    assert code == 1
    rep = json.loads(out)
    assert rep["axioms"]["C4"]["status"] == "fail"
    assert rep["axioms"]["C4"]["failures"][0]["generator"] == "t1"


@pytest.mark.parametrize("text", ["{", "[]", '{"generators": ["x"]}', '{"field": {"type": "Q"}, "generators": ["x"], '
                                  '"relations": [], "denominator": null, "counit": {"x": "0"}}'])
def test_check_malformed_exits_two(text):
    assert run(["check"], text)[0] == 2


def test_bad_field_exits_two():
    assert run(["gen", "ol", "--n", "1", "--field", "F4"])[0] == 2
    assert run(["check", "--field", "R"], golden("gen_ol1"))[0] == 2


# -- leibniz and classify -----------------------------------------------------------------


def test_leibniz_outputs():
    L = LeibnizAlgebra.from_json(json.loads(golden("leibniz_ol2")))
    assert L.same_constants(omni_lie(2))
    L = LeibnizAlgebra.from_json(json.loads(golden("leibniz_gl2")))
    assert L.constants == commutator_constants(2)
    L = LeibnizAlgebra.from_json(json.loads(golden("leibniz_trivial_x")))
    assert L.dim == 1 and L.constants == {}


def test_classify_outputs():
    r = json.loads(golden("classify_ol2"))
    assert (r["leibniz"], r["lie"], r["abelian"], r["left_center_dim"]) == (True, False, False, 2)
    r = json.loads(golden("classify_gl2"))
    assert r["lie"] and r["left_center_dim"] == 1
    zero = json.dumps(LeibnizAlgebra.zero(3).to_json())
    code, out = run(["classify"], zero)
    assert code == 0
    r = json.loads(out)
    assert r["abelian"] and r["left_center_dim"] == 3


def test_classify_malformed_exits_two():
    assert run(["classify"], '{"dim": 2, "constants": [{"i": 5, "j": 0, "k": 0, "c": "1"}]}')[0] == 2


@pytest.mark.parametrize("args", [["trivial", "--gens", "x,y"], ["trivial", "--gens", "x", "--relations", "x^2"],
                                  ["conj", "--group", "gm"], ["conj", "--group", "ga"],
                                  ["conj", "--group", "heis"], ["conj", "--group", "heis", "--field", "F2"],
                                  ["conj", "--group", "gl", "--n", "1"], ["conj", "--group", "gl", "--n", "2"],
                                  ["conj", "--group", "sl", "--n", "2"], ["ol", "--n", "0"], ["ol", "--n", "1"],
                                  ["ol", "--n", "2"], ["finite-dual", "--conj-of", "s3"],
                                  ["finite-dual", "--conj-of", "c2", "--field", "F3"]])
def test_gen_check_leibniz_round_trip(args):
    code, gen = run(["gen", *args])
    assert code == 0
    assert run(["check"], gen)[0] == 0
    code, lb = run(["leibniz", "--cross-check-ad"], gen)
    assert code == 0
    assert run(["classify"], lb)[0] == 0


# -- finite ---------------------------------------------------------------------------


def test_finite_center_and_enumerate():
    assert json.loads(golden("finite_center_s3")) == [0]
    obj = json.loads(golden("finite_enumerate_2"))
    assert obj["count"] == 1
    assert obj["racks"][0]["op"] == [[0, 1], [0, 1]]


def test_finite_check_and_dualize(tmp_path):
    rack = {"size": 3, "unit": 0, "op": [[0, 1, 2]] * 3}
    path = tmp_path / "rack.json"
    path.write_text(json.dumps(rack))
    code, out = run(["finite", "check", "--in", str(path)])
    assert code == 0 and json.loads(out)["quandle"]
    code, out = run(["finite", "dualize", "--in", str(path), "--field", "Q"])
    assert code == 0
    C = CorackAlgebra.from_json(json.loads(out), check=True)
    assert corack_check(C).ok


def test_finite_failures():
    bad = json.dumps({"size": 2, "op": [[0, 1], [1, 1]]})
    code, out = run(["finite", "check"], bad)
    assert code == 1 and not json.loads(out)["ok"]
    assert run(["finite", "check"], json.dumps({"size": 2, "op": [[0, 5], [0, 1]]}))[0] == 2
    assert run(["finite", "enumerate"])[0] == 2
    assert run(["finite", "enumerate", "--n", "6"])[0] == 2


def test_finite_ideals():
    obj = json.loads(golden("finite_ideals_s3"))
    assert len(obj["orbits"]) == 3
    assert all(s["class"] == "left-ideal" for s in obj["subsets"])
    code, out = run(["finite", "ideals", "--conj-of", "s3", "--subset", "0,1"])
    assert code == 0 and json.loads(out)["class"] == "subrack"


def test_finite_group_input(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"mul": [[(a + b) % 3 for b in range(3)] for a in range(3)]}))
    code, out = run(["finite", "center", "--group-in", str(path)])
    assert code == 0 and json.loads(out) == [0, 1, 2]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "corack", "finite", "center", "--conj-of", "d4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout) == [0, 2]
