from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ricciposet.cli import (
    EXIT_DOMAIN,
    EXIT_IO,
    EXIT_NOT_RANKED,
    EXIT_OK,
    EXIT_PARSE,
    main,
    run_ensemble,
)
from ricciposet.complexes import PolyMap, cube, maps_isomorphic
from ricciposet.errors import ParameterOutOfRange


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rat(obj):
    return obj["num"], obj["den"]


def test_rank_cube(capsys):
    code, out, _ = run(capsys, "rank", "--fixture", "cube")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["f_vector"] == [8, 12, 6]
    assert data["rank"] == 2


def test_curvature_counterexample(capsys):
    code, out, _ = run(capsys, "curvature", "--fixture", "fig-counterexample", "--kinds", "r1,ric")
    data = json.loads(out)
    assert code == EXIT_OK
    assert rat(data["values"]["r1"]["e1"]) == (5, 2)
    assert rat(data["values"]["ric"]["e1"]) == (2, 1)
    assert data["verdicts"]["sufficiently_covered"] is False


def test_curvature_csv(capsys):
    code, out, _ = run(capsys, "curvature", "--fixture", "cube", "--kinds", "r0", "--emit", "csv")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "kind,element,rank,value"
    assert len(lines) == 9
    assert all(line.endswith(",0,-7/2") for line in lines[1:])


def test_curvature_window(capsys):
    code, out, _ = run(capsys, "curvature", "--fixture", "fig-infinite:4", "--kinds", "r0,r1,r2,stone-general")
    data = json.loads(out)
    d = data["designated"]
    assert code == EXIT_OK
    assert rat(data["values"]["r0"][d["v"]]) == (3, 2)
    assert rat(data["values"]["r1"][d["e"]]) == (4, 1)
    assert rat(data["values"]["r2"][d["x"]]) == (9, 1)
    assert rat(data["values"]["stone-general"][d["v"]]) == (3, 1)
    assert data["aggregates"] == {}


def test_unknown_kind(capsys):
    code, _, err = run(capsys, "curvature", "--fixture", "cube", "--kinds", "r9")
    assert code == EXIT_DOMAIN and "r9" in err


@pytest.mark.parametrize(
    "fixture, theorem, expected",
    [
        ("cube", "gb", EXIT_OK),
        ("torus:4x4", "gb", EXIT_OK),
        ("klein-dual", "gb-stone", EXIT_OK),
        ("klein-dual", "negativity", EXIT_OK),
        ("fig-counterexample", "gb", EXIT_OK),
        ("fig-counterexample", "identities", EXIT_OK),
        ("fig-counterexample", "positive-average", EXIT_OK),
        ("fig-counterexample", "gb-ric", EXIT_DOMAIN),
        ("fig-counterexample", "gb-stone", EXIT_DOMAIN),
    ],
)
def test_verify_exit_codes(capsys, fixture, theorem, expected):
    code, _, _ = run(capsys, "verify", "--fixture", fixture, "--theorem", theorem)
    assert code == expected


def test_gb_ric_witnesses(capsys):
    _, out, _ = run(capsys, "verify", "--fixture", "fig-counterexample", "--theorem", "gb-ric")
    data = json.loads(out)
    assert data["error"] == "NotAlmostPolyhedral"
    assert {w["condition"] for w in data["witnesses"]} == {1, 4}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--fixture", "fig-cw-nonap")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["almost_polyhedral"]["verdict"] is False
    assert data["almost_polyhedral"]["witnesses"][0]["condition"] == 2


def test_classify_map(capsys):
    _, out, _ = run(capsys, "classify", "--fixture", "klein-dual")
    data = json.loads(out)
    assert data["orientable"]["verdict"] is True
    assert data["euler_characteristic"] == -4
    assert data["polyhedral_map"]["verdict"] is True


def test_input_files(tmp_path, capsys):
    good = tmp_path / "p.json"
    good.write_text(json.dumps({"elements": ["v", "e"], "covers": [["v", "e"]]}))
    assert run(capsys, "rank", "--input", str(good))[0] == EXIT_OK

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "rank", "--input", str(bad))[0] == EXIT_PARSE

    wrong_schema = tmp_path / "schema.json"
    wrong_schema.write_text(json.dumps({"covers": []}))
    assert run(capsys, "rank", "--input", str(wrong_schema))[0] == EXIT_PARSE

    unranked = tmp_path / "unranked.json"
    unranked.write_text(json.dumps({
        "elements": ["v", "e1", "sigma", "w"],
        "covers": [["v", "e1"], ["e1", "sigma"], ["w", "sigma"]],
    }))
    code, out, _ = run(capsys, "rank", "--input", str(unranked))
    assert code == EXIT_NOT_RANKED
    assert json.loads(out)["witness"] == "sigma"
    code, _, err = run(capsys, "curvature", "--input", str(unranked))
    assert code == EXIT_NOT_RANKED and "sigma" in err

    transitive = tmp_path / "t.json"
    transitive.write_text(json.dumps({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"], ["a", "c"]]}))
    assert run(capsys, "rank", "--input", str(transitive))[0] == EXIT_DOMAIN

    assert run(capsys, "rank", "--input", str(tmp_path / "missing.json"))[0] == EXIT_IO


def test_map_and_simplicial_input(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps(cube().to_json()))
    code, out, _ = run(capsys, "verify", "--input", str(m), "--format", "map", "--theorem", "gb-stone")
    assert code == EXIT_OK and json.loads(out)["holds"] is True

    bad_map = tmp_path / "tri.json"
    bad_map.write_text(json.dumps({"faces": [["a", "b", "c"]]}))
    assert run(capsys, "rank", "--input", str(bad_map), "--format", "map")[0] == EXIT_DOMAIN

    k = tmp_path / "k.json"
    k.write_text(json.dumps({"simplices": [["a", "b", "c"]]}))
    code, out, _ = run(capsys, "rank", "--input", str(k), "--format", "simplicial")
    assert code == EXIT_OK and json.loads(out)["f_vector"] == [3, 3, 1]


def test_unknown_fixture(capsys):
    code, _, err = run(capsys, "rank", "--fixture", "dodecahedron")
    assert code == EXIT_DOMAIN and "unknown fixture" in err


def test_bad_fixture_parameters(capsys):
    assert run(capsys, "rank", "--fixture", "torus:2x9")[0] == EXIT_DOMAIN
    assert run(capsys, "rank", "--fixture", "fig-infinite:1")[0] == EXIT_DOMAIN


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["curvature", "--fixture", "klein-dual", "--kinds", "r0,r1,r2,ric", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_dual_twice(tmp_path, capsys):
    once = tmp_path / "once.json"
    twice = tmp_path / "twice.json"
    assert main(["dual", "--fixture", "cube", "--output", str(once)]) == EXIT_OK
    assert main(["dual", "--input", str(once), "--format", "map", "--output", str(twice)]) == EXIT_OK
    back = json.loads(twice.read_text())
    assert maps_isomorphic(PolyMap(tuple(tuple(f) for f in back["faces"])), cube())


def test_dual_needs_map(capsys):
    assert run(capsys, "dual", "--fixture", "fig-counterexample")[0] == EXIT_DOMAIN


@pytest.mark.parametrize("theorem", ["gb", "identities", "positive-average", "lemma-r1-ric"])
def test_ensemble(capsys, theorem):
    code, out, _ = run(capsys, "ensemble", "--theorem", theorem, "--n", "40", "--seed", "3")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["counterexamples"] == 0
    assert data["instances"] == 40


def test_ensemble_reproducible():
    assert run_ensemble("positive-average", 100, 5) == run_ensemble("positive-average", 100, 5)


def test_ensemble_bad_n(capsys):
    with pytest.raises(ParameterOutOfRange):
        run_ensemble("gb", 0, 1)
    assert run(capsys, "ensemble", "--theorem", "gb", "--n", "0")[0] == EXIT_DOMAIN


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ricciposet", "rank", "--fixture", "tetrahedron"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["f_vector"] == [4, 6, 4]
