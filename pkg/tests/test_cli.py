import json
from pathlib import Path

import pytest

from peirce_lab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# -- ring commands -----------------------------------------------------------------


def test_ring_verify_catalog(capsys):
    code, out = run_cli(capsys, "ring", "verify", "--catalog", "m2z2")
    assert code == 0
    assert "PASS" in out


def test_ring_verify_json(capsys):
    code, out = run_cli(capsys, "ring", "verify", "--catalog", "eg1", "5", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["ring"]["moduli"] == [5, 5, 5]


def test_ring_verify_bad_file_exits_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {"name": "bad", "moduli": [2, 2],
             "mul": [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]}
        )
    )
    code, out = run_cli(capsys, "ring", "verify", "--ring-file", str(path))
    assert code == 1
    assert "FAIL" in out


def test_ring_file_loads_elsewhere(tmp_path, capsys, eg2):
    path = tmp_path / "eg2.json"
    path.write_text(json.dumps(eg2.to_dict()))
    code, out = run_cli(capsys, "ring", "idempotents", "--ring-file", str(path))
    assert code == 0
    assert "(3,0)" in out.replace(" ", "") or "3,0" in out


def test_ring_idempotents_zn6(capsys):
    code, out = run_cli(capsys, "ring", "idempotents", "--catalog", "zn", "6", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert [i["element"] for i in rep["idempotents"]] == [[0], [1], [3], [4]]
    assert [i["nontrivial"] for i in rep["idempotents"]] == [False, False, True, True]


def test_ring_peirce(capsys):
    code, out = run_cli(
        capsys, "ring", "peirce", "--catalog", "eg2", "--idempotent", "3,0",
        "--format", "json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["sizes"] == {"11": 4, "12": 1, "21": 1, "22": 9}


def test_ring_center(capsys):
    code, out = run_cli(capsys, "ring", "center", "--catalog", "m2z2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["center"] == [[0, 0, 0, 0], [1, 0, 0, 1]]


# -- map commands ------------------------------------------------------------------


def test_map_classify_lambda(capsys):
    code, out = run_cli(
        capsys, "map", "classify", "--catalog", "eg3", "5", "--map", "lambda",
        "--format", "json",
    )
    assert code == 0
    rep = json.loads(out)
    cls = rep["classification"]
    assert cls["reverse_derivation"]["pass"] is True
    assert cls["derivation"]["pass"] is False


def test_map_classify_inline_expression(capsys):
    code, out = run_cli(
        capsys, "map", "classify", "--catalog", "eg1", "5",
        "--map-expr", "vars m,n,p : (m, n*p, -p)", "--format", "json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"]["reverse_derivation"]["pass"] is True
    assert rep["classification"]["additive"]["pass"] is False


def test_map_structure_exit_codes(capsys):
    code, out = run_cli(
        capsys, "map", "structure", "--catalog", "eg2", "--map", "eg2_map",
        "--idempotent", "3,0",
    )
    assert code == 0
    assert "PASS" in out


def test_map_file_source(tmp_path, capsys):
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"type": "catalog", "name": "eg2_map"}))
    code, out = run_cli(
        capsys, "map", "classify", "--catalog", "eg2", "--map-file", str(path),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["classification"]["additive"]["pass"] is True


# -- conditions --------------------------------------------------------------------


def test_conditions_check_fail_exits_1(capsys):
    code, out = run_cli(
        capsys, "conditions", "check", "--catalog", "eg2", "--idempotent", "3,0",
        "--set", "thm1",
    )
    assert code == 1
    assert "FAIL" in out


def test_conditions_check_ei_pass_exits_0(capsys):
    code, out = run_cli(
        capsys, "conditions", "check", "--catalog", "m2z2",
        "--idempotent", "1,0,0,0", "--set", "ei", "--format", "json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["overall"] is True
    assert rep["mode"] == "all"


def test_conditions_strict_mode(capsys):
    code, out = run_cli(
        capsys, "conditions", "check", "--catalog", "m2z2",
        "--idempotent", "1,0,0,0", "--set", "ei", "--strict", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["mode"] == "strict"


# -- search -------------------------------------------------------------------------


def test_search_maps_json(capsys):
    code, out = run_cli(
        capsys, "search", "maps", "--catalog", "zn", "4", "--format", "json"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 4
    assert rep["complete"] is True
    assert "wall" not in json.dumps(rep["stats"])
    assert rep["maps"][0]["type"] == "table"


def test_search_nonadditive_found_exits_1(capsys):
    code, out = run_cli(capsys, "search", "nonadditive", "--catalog", "eg1", "2")
    assert code == 1


def test_search_nonadditive_none_exits_0(capsys):
    code, out = run_cli(capsys, "search", "nonadditive", "--catalog", "zn", "2")
    assert code == 0
    assert "no non-additive" in out


def test_search_theorem(capsys):
    code, out = run_cli(
        capsys, "search", "theorem", "--catalog", "m2z2", "--idempotent", "1,0,0,0",
        "--format", "json",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["verdicts"]["ei_conditions_hold"] is True


def test_search_guard_exits_3(capsys):
    code, out = run_cli(capsys, "search", "maps", "--catalog", "eg2")
    assert code == 3


# -- usage and guard errors -----------------------------------------------------------


def test_usage_error_exits_2(capsys):
    assert main(["ring", "bogus"]) == 2
    assert main(["nope"]) == 2
    assert main([]) == 2


def test_unknown_catalog_exits_2(capsys):
    assert main(["ring", "center", "--catalog", "nope"]) == 2


def test_missing_file_exits_2(capsys, tmp_path):
    assert main(["ring", "center", "--ring-file", str(tmp_path / "nope.json")]) == 2


def test_guard_env_override(capsys, monkeypatch):
    monkeypatch.setenv("PEIRCE_LAB_MAX_RING_SIZE", "10")
    code, _ = run_cli(capsys, "ring", "center", "--catalog", "eg2")
    assert code == 3
    monkeypatch.delenv("PEIRCE_LAB_MAX_RING_SIZE")
    code, _ = run_cli(capsys, "ring", "center", "--catalog", "eg2")
    assert code == 0


def test_max_ring_flag_overrides_guard(capsys):
    code, _ = run_cli(
        capsys, "ring", "center", "--catalog", "eg2", "--max-ring", "10"
    )
    assert code == 3


# -- demos ---------------------------------------------------------------------------


def test_demo_eg2_text_content(capsys):
    code, out = run_cli(capsys, "demo", "eg2")
    assert code == 0
    assert "idempotent (3,0)" in out
    assert "thm1(i): FAIL" in out
    assert "witness" in out
    assert "additive reverse derivable" in out
    assert "hypotheses not necessary" in out


def test_demo_eg1_text(capsys):
    code, out = run_cli(capsys, "demo", "eg1")
    assert code == 0
    assert "reverse derivable: yes" in out
    assert "additive: no" in out


def test_demo_eg3_text(capsys):
    code, out = run_cli(capsys, "demo", "eg3")
    assert code == 0
    assert "reverse derivation: yes, derivation: no, additive: yes" in out
    assert "reverse derivation: no, derivation: yes, additive: yes" in out


@pytest.mark.parametrize("which", ["eg1", "eg2", "eg3", "all"])
def test_demo_golden_files(capsys, which):
    code, out = run_cli(capsys, "demo", which, "--format", "json")
    assert code == 0
    expected = (GOLDEN / f"demo_{which}.json").read_text(encoding="utf-8")
    assert out == expected


def test_demo_modulus_flag(capsys):
    code, out = run_cli(capsys, "demo", "eg1", "--modulus", "7", "--format", "json")
    assert code == 0
    assert json.loads(out)["ring"]["moduli"] == [7, 7, 7]
    assert main(["demo", "eg1", "--modulus", "1"]) == 2


# -- text and json agree -----------------------------------------------------------------


def test_text_and_json_verdicts_agree(capsys):
    cases = [
        (["conditions", "check", "--catalog", "eg2", "--idempotent", "3,0", "--set", "thm1"],
         lambda rep: not rep["overall"], "FAIL"),
        (["conditions", "check", "--catalog", "m2z2", "--idempotent", "1,0,0,0", "--set", "ei"],
         lambda rep: rep["overall"], "PASS"),
        (["ring", "verify", "--catalog", "eg2"], lambda rep: rep["ok"], "PASS"),
    ]
    for argv, json_pred, text_token in cases:
        code_t, text = run_cli(capsys, *argv)
        code_j, raw = run_cli(capsys, *argv, "--format", "json")
        assert code_t == code_j
        rep = json.loads(raw)
        assert json_pred(rep)
        assert text_token in text
