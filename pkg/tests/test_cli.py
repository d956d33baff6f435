"""End-to-end command line checks: exit codes, payload shapes, formats."""

import json
import math
import os

import pytest

from gitwin.cli import load_problem, main
from gitwin.errors import InputError
from gitwin.serialize import payload_digest

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

PV = {"k": 1, "n": 3, "weights": [[1], [1], [1]], "linearization": [1]}
CONIFOLD = {
    "k": 1,
    "n": 4,
    "weights": [[1], [1], [-1], [-1]],
    "linearization": [1],
    "wall_crossing": {"wall_point": [0], "direction": [1]},
}
DOUBLED = {
    "k": 2,
    "n": 4,
    "weights": [[1, 0], [1, 0], [0, 1], [0, 1]],
    "linearization": [1, 1],
}


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# -- problem file validation ------------------------------------------------


def test_load_problem_minimal():
    loaded = load_problem(PV)
    assert loaded.problem.rank == 1
    assert loaded.problem.dim == 3
    assert loaded.window is None
    assert loaded.wall_point is None


def test_load_problem_defaults_and_scalars():
    data = dict(PV, window=2, wall_crossing={"wall_point": 0, "direction": 1})
    loaded = load_problem(data)
    assert loaded.window == (2,)
    assert loaded.wall_point == (0,)
    assert loaded.direction == (1,)


def test_load_problem_names_the_bad_row():
    data = dict(PV, weights=[[1], [1, 2], [1]])
    with pytest.raises(InputError, match=r"weights\[1\]: expected 1 entries, got 2"):
        load_problem(data)


def test_load_problem_rejects_bad_inner_product():
    data = dict(PV, k=None)
    del data["k"]
    data["inner_product"] = [[0]]
    with pytest.raises(InputError, match="not positive definite"):
        load_problem(data)


def test_load_problem_cross_checks_shape_declarations():
    with pytest.raises(InputError, match="problem.k: declared rank 2"):
        load_problem(dict(PV, k=2))
    with pytest.raises(InputError, match="problem.n: declared dimension 5"):
        load_problem(dict(PV, n=5))


def test_load_problem_rejects_unknown_fields():
    with pytest.raises(InputError, match=r"unknown fields \['frobnicate'\]"):
        load_problem(dict(PV, frobnicate=1))
    with pytest.raises(InputError, match=r"wall_crossing: unknown fields \['speed'\]"):
        load_problem(dict(PV, wall_crossing={"speed": 9}))


def test_load_problem_rejects_non_integers():
    with pytest.raises(InputError, match="expected an integer, got 1.0"):
        load_problem(dict(PV, weights=[[1.0], [1], [1]]))
    with pytest.raises(InputError, match="expected an integer, got True"):
        load_problem(dict(PV, linearization=[True]))
    with pytest.raises(InputError, match="problem.linearization: missing"):
        load_problem({"weights": [[1]]})


# -- exit codes ---------------------------------------------------------------


def test_usage_errors_exit_64(capsys):
    assert main([]) == 64
    assert main(["no-such-command"]) == 64
    assert main(["lift", "problem.json"]) == 64  # --complex is required
    capsys.readouterr()


def test_missing_file_exits_2(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["stratify", missing]) == 2
    assert "problem file" in capsys.readouterr().err


def test_invalid_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["stratify", str(path)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_off_wall_crossing_exits_2(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["wallcross", path, "--direction", "1"]) == 2
    assert "not on a wall" in capsys.readouterr().err


def test_quantize_preconditions_exit_2(tmp_path, capsys):
    conifold = write_json(tmp_path, "conifold.json", CONIFOLD)
    assert main(["quantize", conifold]) == 2
    assert "strictly destabilized" in capsys.readouterr().err
    doubled = write_json(tmp_path, "doubled.json", DOUBLED)
    assert main(["quantize", doubled]) == 2
    assert "one-parameter actions" in capsys.readouterr().err


# -- stratify ----------------------------------------------------------------


def test_stratify_report(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["stratify", path]) == 0
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["command"] == "stratify"
    assert report["input_digest"] == payload_digest(PV)
    strata = report["result"]["strata"]
    assert len(strata) == 1
    assert strata[0]["destabilizer"] == [-1]
    assert strata[0]["eta"] == 3
    assert report["result"]["semistable"]["count"] == 7


def test_stratify_empty_stratification(tmp_path, capsys):
    path = write_json(tmp_path, "all-ss.json", dict(PV, linearization=[0]))
    assert main(["stratify", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"] == {"strata": [], "semistable": "all"}


def test_stratify_output_is_byte_stable(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["stratify", path]) == 0
    first = capsys.readouterr().out
    assert main(["stratify", path]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.endswith("\n")


# -- fan ----------------------------------------------------------------------


def test_fan_report(tmp_path, capsys):
    path = write_json(tmp_path, "conifold.json", CONIFOLD)
    assert main(["fan", path]) == 0
    report = json.loads(capsys.readouterr().out)
    result = report["result"]
    assert len(result["chambers"]) == 2
    assert len(result["walls"]) == 1
    assert result["walls"][0]["normal"] == [1]
    assert result["walls"][0]["adjacent_chambers"] == [0, 1]


# -- wallcross -----------------------------------------------------------------


def test_wallcross_uses_file_block(tmp_path, capsys):
    path = write_json(tmp_path, "conifold.json", CONIFOLD)
    assert main(["wallcross", path]) == 0
    report = json.loads(capsys.readouterr().out)
    result = report["result"]
    assert result["verdict"] == "equivalence"
    assert result["balanced"] is True
    assert result["calabi_yau"] is True
    assert result["plus_character"] == [1]
    assert result["minus_character"] == [-1]
    assert result["matches"] == [
        {
            "plus_index": 0,
            "minus_index": 0,
            "eta_plus": 2,
            "eta_minus": 2,
            "omega_weight": 0,
            "members_mirror": False,
        }
    ]


def test_wallcross_flags_override_file(tmp_path, capsys):
    bare = {k: v for k, v in CONIFOLD.items() if k != "wall_crossing"}
    path = write_json(tmp_path, "bare.json", bare)
    assert main(["wallcross", path, "--wall", "0", "--direction", "1"]) == 0
    flagged = json.loads(capsys.readouterr().out)
    full = write_json(tmp_path, "full.json", CONIFOLD)
    assert main(["wallcross", full]) == 0
    from_file = json.loads(capsys.readouterr().out)
    assert flagged["result"] == from_file["result"]


def test_wallcross_without_direction_exits_2(tmp_path, capsys):
    bare = {k: v for k, v in CONIFOLD.items() if k != "wall_crossing"}
    path = write_json(tmp_path, "bare.json", bare)
    assert main(["wallcross", path, "--wall", "0"]) == 2
    assert "needs a crossing direction" in capsys.readouterr().err


# -- windows -------------------------------------------------------------------


def test_windows_default_window(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["windows", path]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["window"] == [0]
    assert result["characters"] == [[-2], [-1], [0]]
    assert result["complete"] is True and result["finite"] is True


def test_windows_flag_overrides_file(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", dict(PV, window=[1]))
    assert main(["windows", path]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["characters"] == [
        [-3],
        [-2],
        [-1],
    ]
    assert main(["windows", path, "--window", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["characters"] == [
        [-4],
        [-3],
        [-2],
    ]


def test_windows_length_mismatch_exits_2(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["windows", path, "--window", "0,1"]) == 2
    assert "2 entries for 1 strata" in capsys.readouterr().err


# -- lift -----------------------------------------------------------------------


def lift_complex_payload(weights, terms):
    return {"ring": {"n": len(weights), "weights": weights}, "terms": terms}


def test_lift_cli(tmp_path, capsys):
    problem = write_json(tmp_path, "pv.json", PV)
    complex_file = write_json(
        tmp_path, "twist.json", lift_complex_payload([1, 1, 1], {"0": [-1]})
    )
    assert main(["lift", problem, "--complex", complex_file]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["window_ok"] is True
    assert result["iterations"] == 1
    assert result["input_profile"] == {"0": [-1]}
    assert result["output_profile"] == {
        "-2": [2],
        "-1": [1, 1, 1],
        "0": [0, 0, 0],
    }
    assert result["steps"] == [
        {"side": "raise_low", "weight": -1, "block_total_rank": 8}
    ]


def test_lift_ring_mismatch_exits_2(tmp_path, capsys):
    problem = write_json(tmp_path, "pv.json", PV)
    complex_file = write_json(
        tmp_path, "wrong.json", lift_complex_payload([1, 1], {"0": [0]})
    )
    assert main(["lift", problem, "--complex", complex_file]) == 2
    assert "do not match" in capsys.readouterr().err


def test_lift_window_flag(tmp_path, capsys):
    problem = write_json(tmp_path, "pv.json", PV)
    complex_file = write_json(
        tmp_path, "in-window.json", lift_complex_payload([1, 1, 1], {"0": [2]})
    )
    assert main(["lift", problem, "--complex", complex_file]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["iterations"] == 0
    assert (
        main(["lift", problem, "--complex", complex_file, "--window", "3"])
        == 0
    )
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["iterations"] == 1
    assert result["window_ok"] is True


# -- quantize --------------------------------------------------------------------


def test_quantize_cli(tmp_path, capsys):
    path = write_json(tmp_path, "pv.json", PV)
    assert main(["quantize", path, "--box", "4"]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["all_agree"] is True
    assert len(result["table"]) == 5
    row = result["table"][3]
    assert row["equivariant"] == row["quotient"] == math.comb(3 + 2, 2)


# -- text format ------------------------------------------------------------------


def test_text_format(tmp_path, capsys):
    pv = write_json(tmp_path, "pv.json", PV)
    conifold = write_json(tmp_path, "conifold.json", CONIFOLD)
    assert main(["stratify", pv, "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("strata: 1\n")
    assert "semistable: 7 supports" in text
    assert main(["wallcross", conifold, "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "verdict: equivalence" in text
    assert "balanced: yes" in text


# -- golden report -----------------------------------------------------------------


def test_conifold_wallcross_matches_golden(capsys):
    problem = os.path.join(GOLDEN, "conifold.json")
    expected = os.path.join(GOLDEN, "conifold_wallcross.json")
    assert main(["wallcross", problem]) == 0
    out = capsys.readouterr().out
    with open(expected, "r", encoding="utf-8") as handle:
        assert out == handle.read()
