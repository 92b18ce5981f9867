"""End-to-end command tests: exit codes, reports, files, golden tables.

Everything runs in-process through main(argv) so the exit contract is
asserted directly: 0 verdict-true, 1 verdict-false, 2 usage or bad input.
"""

from __future__ import annotations

import json

import pytest

from solvgeom.cli import main

J4 = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *args):
    code, out, err = run(capsys, *args, "--json")
    return code, (json.loads(out) if out else None), err


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture()
def flat4(tmp_path):
    """Abelian R^4 with the standard metric and block J: Kähler, θ = 0."""
    return write(tmp_path, "flat4.json", {"dim": 4, "brackets": [], "J": J4})


# ---------------------------------------------------------------------------
# verify


def test_verify_vaisman_true_and_report_shape(capsys, tmp_path):
    out_file = str(tmp_path / "osc.json")
    code, report, _ = run_json(capsys, "construct", "oscillator", "-a", "1", "-o", out_file)
    assert code == 0
    code, report, _ = run_json(
        capsys, "verify", "--structure", "vaisman", out_file, "--seed", "7"
    )
    assert code == 0
    assert list(report) == [
        "command",
        "input",
        "seed",
        "samples",
        "tolerance",
        "results",
        "provenance",
    ]
    assert report["seed"] == 7
    assert report["provenance"] == "derived"
    assert len(report["input"]["sha256"]) == 64
    results = report["results"]
    assert results["verdict"] is True
    assert results["lee_form"] == ["1", "0", "0", "0"]
    assert results["certificate"]["lee-dual-skew"] == {"pass": True}


def test_verify_kahler_is_lck_but_not_vaisman(capsys, flat4):
    code, report, _ = run_json(capsys, "verify", "--structure", "vaisman", flat4)
    assert code == 1
    results = report["results"]
    assert results["is_kahler"] is True
    assert results["certificate"]["lee-form-nonzero"]["pass"] is False
    code, _, _ = run_json(capsys, "verify", "--structure", "lck", flat4)
    assert code == 0


def test_verify_emits_certificate_on_failure(capsys, tmp_path):
    bad = write(
        tmp_path,
        "bad.json",
        {"dim": 3, "brackets": [[0, 1, ["0", "0", "1"]], [0, 2, ["1", "0", "0"]]]},
    )
    code, report, _ = run_json(capsys, "verify", "--structure", "lie", bad)
    assert code == 1
    check = report["results"]["certificate"]["lie-bracket-axioms"]
    assert check["pass"] is False and "Jacobi" in check["witness"]


def test_verify_metric_not_positive_definite(capsys, tmp_path):
    path = write(
        tmp_path,
        "m.json",
        {"dim": 2, "brackets": [], "metric": [["1", "2"], ["2", "1"]]},
    )
    code, report, _ = run_json(capsys, "verify", "--structure", "metric", path)
    assert code == 1
    assert "minor" in report["results"]["certificate"]["metric-positive-definite"]["witness"]


def test_verify_structures_on_cokahler_chain(capsys, tmp_path):
    osc = str(tmp_path / "osc.json")
    cok = str(tmp_path / "cok.json")
    assert run(capsys, "construct", "oscillator", "-a", "1,2", "-o", osc)[0] == 0
    assert run(capsys, "construct", "cokahler", "--from", osc, "-o", cok)[0] == 0
    code, report, _ = run_json(capsys, "verify", "--structure", "cokahler", cok)
    assert code == 0 and report["results"]["is_normal"] is True
    # the coKähler slice pairs dη = 0, so it cannot be Sasakian
    assert run(capsys, "verify", "--structure", "sasakian", cok)[0] == 1


def test_verify_lsa_completeness(capsys, tmp_path, flat4):
    lsa = str(tmp_path / "lsa.json")
    assert run(capsys, "construct", "lsa", "--from", flat4, "-o", lsa)[0] == 0
    code, report, _ = run_json(capsys, "verify", "--structure", "lsa", lsa)
    assert code == 0
    results = report["results"]
    assert results["certificate"]["complete-sampled"]["pass"] is True
    assert results["nilpotent_certificate"] is True
    assert results["universal_determinant"] is True


def test_verify_exit_2_paths(capsys, tmp_path, flat4):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "verify", "--structure", "lie", str(broken))[0] == 2
    assert run(capsys, "verify", "--structure", "lie", str(tmp_path / "no.json"))[0] == 2
    unknown = write(tmp_path, "unknown.json", {"dim": 2, "bracketz": []})
    assert run(capsys, "verify", "--structure", "lie", unknown)[0] == 2
    # vaisman needs J in the file
    nojay = write(tmp_path, "nojay.json", {"dim": 2, "brackets": []})
    assert run(capsys, "verify", "--structure", "vaisman", nojay)[0] == 2
    # sasakian needs odd dimension
    evendim = write(
        tmp_path,
        "even.json",
        {
            "dim": 2,
            "brackets": [],
            "phi": [["0", "0"], ["0", "0"]],
            "xi": ["1", "0"],
            "eta": ["1", "0"],
        },
    )
    assert run(capsys, "verify", "--structure", "sasakian", evendim)[0] == 2
    assert run(capsys, "verify", "--structure", "lie", flat4, "--tolerance", "-1")[0] == 2
    assert run(capsys, "verify", "--structure", "nonsense", flat4)[0] == 2


# ---------------------------------------------------------------------------
# construct / reduce round trips


def test_reduce_then_reconstruct_is_identity(capsys, tmp_path):
    osc = str(tmp_path / "osc.json")
    core = str(tmp_path / "core.json")
    back = str(tmp_path / "back.json")
    assert run(capsys, "construct", "oscillator", "-a", "1,3", "-o", osc)[0] == 0
    code, report, _ = run_json(capsys, "reduce", osc, "-o", core)
    assert code == 0
    assert report["results"]["core_dim"] == 4
    assert report["results"]["metric_scale"] == "1"
    assert run(capsys, "construct", "vaisman", "--from", core, "-o", back)[0] == 0
    assert json.load(open(osc)) == json.load(open(back))


def test_reduce_refuses_non_vaisman(capsys, flat4):
    code, report, _ = run_json(capsys, "reduce", flat4)
    assert code == 1
    assert report["results"]["verdict"] is False


def test_construct_from_degenerate_package(capsys, tmp_path):
    pkg = write(
        tmp_path,
        "kpkg.json",
        {
            "dim": 2,
            "brackets": [],
            "J": [["0", "-1"], ["1", "0"]],
            "derivation": [["0", "0"], ["0", "0"]],
        },
    )
    out = str(tmp_path / "out.json")
    assert run(capsys, "construct", "vaisman", "--from", pkg, "-o", out)[0] == 0
    produced = json.load(open(out))
    assert produced["dim"] == 4
    # central pair plus one plane: [e1, e2] = B is the only bracket
    assert produced["brackets"] == [[2, 3, ["0", "1", "0", "0"]]]
    assert run(capsys, "verify", "--structure", "vaisman", out)[0] == 0


def test_construct_double_ext_emits_algebra_only(capsys, tmp_path):
    pkg = write(
        tmp_path,
        "kpkg.json",
        {
            "dim": 2,
            "brackets": [],
            "J": [["0", "-1"], ["1", "0"]],
            "derivation": [["0", "-1"], ["1", "0"]],
        },
    )
    out = str(tmp_path / "dble.json")
    assert run(capsys, "construct", "double-ext", "--from", pkg, "-o", out)[0] == 0
    produced = json.load(open(out))
    assert sorted(produced) == ["basis", "brackets", "dim"]
    assert run(capsys, "verify", "--structure", "lie", out)[0] == 0


def test_construct_central_ext_of_flat_four_space(capsys, tmp_path, flat4):
    out = str(tmp_path / "h5.json")
    assert run(capsys, "construct", "central-ext", "--from", flat4, "-o", out)[0] == 0
    produced = json.load(open(out))
    assert produced["dim"] == 5
    assert run(capsys, "verify", "--structure", "lie", out)[0] == 0


def test_construct_family_then_classify(capsys, tmp_path):
    fam = str(tmp_path / "fam.json")
    code, report, _ = run_json(
        capsys, "construct", "family", "--name", "oscillator-h5", "-r", "2/3", "-o", fam
    )
    assert code == 0
    assert report["results"]["family"] == "oscillator-h5(r=2/3)"
    code, report, _ = run_json(capsys, "classify", "--dim", "6", fam)
    assert code == 0
    results = report["results"]
    assert results["family"] == "oscillator-h5(r=2/3)"
    assert results["invariant"]["transverse_speeds"] == ["2", "3"]


def test_classify_outside_catalogue(capsys, tmp_path):
    path = write(tmp_path, "ab.json", {"dim": 6, "brackets": []})
    code, report, _ = run_json(capsys, "classify", path)
    assert code == 1
    assert report["results"]["outside_catalogue"] is True
    assert report["results"]["invariant"]["nilradical_dim"] == 6
    assert run(capsys, "classify", "--dim", "4", path)[0] == 2


def test_construct_parameter_violations_exit_2(capsys, tmp_path, flat4):
    out = str(tmp_path / "x.json")
    assert run(capsys, "construct", "oscillator", "-a", "0,0", "-o", out)[0] == 2
    assert run(capsys, "construct", "vaisman", "-o", out)[0] == 2
    assert run(capsys, "construct", "family", "--name", "product-h3", "-r", "1/2", "-o", out)[0] == 2
    # a flat file is not a Kähler-flat package: the derivation key is missing
    assert run(capsys, "construct", "vaisman", "--from", flat4, "-o", out)[0] == 2


# ---------------------------------------------------------------------------
# lattice


def test_lattice_h1_oscillator(capsys):
    code, report, _ = run_json(
        capsys, "lattice", "h1", "--family", "oscillator", "-a", "1,1", "-k", "1", "--turn", "2"
    )
    assert code == 0
    results = report["results"]
    assert results["rank"] == 1
    assert results["torsion"] == [2, 2, 2, 2, 2]
    assert results["group"] == "Z + Z_2 + Z_2 + Z_2 + Z_2 + Z_2"


def test_lattice_h1_tower_derives_shape(capsys, tmp_path):
    code, report, _ = run_json(
        capsys,
        "lattice", "h1", "--family", "tower",
        "-a", "1", "--alpha", "1,1", "-k", "1", "--turn-j", "4", "--turn-i", "2",
    )
    assert code == 0
    assert report["results"]["group"] == "Z^3 + Z_2 + Z_2 + Z_2 + Z_2 + Z_2"
    # explicitly inconsistent -l/-m must be refused, not silently fixed
    code, _, err = run(
        capsys,
        "lattice", "h1", "--family", "tower",
        "-l", "0", "-m", "1", "-a", "1", "--alpha", "1,1",
        "-k", "1", "--turn-j", "4", "--turn-i", "2",
    )
    assert code == 2 and "outer speed per plane pair" in err


def test_lattice_h1_from_presentation_file(capsys, tmp_path):
    pres = str(tmp_path / "tower.json")
    args = ["-a", "1", "--alpha", "1,1", "-k", "2", "--turn-j", "4", "--turn-i", "2"]
    assert run(capsys, "construct", "tower", *args, "-o", pres)[0] == 0
    code, report, _ = run_json(capsys, "lattice", "h1", "--from", pres)
    assert code == 0
    direct = run_json(capsys, "lattice", "h1", "--family", "tower", *args)[1]
    assert report["results"]["group"] == direct["results"]["group"]


HALF_TABLE = (
    "H1 of the six-dimensional two-plane quotients — half turn, k = 1\n"
    "\n"
    "product residue class  first homology                   b1\n"
    "---------------------  -------------------------------  --\n"
    "ab ≡ 1 (mod 2)         Z + Z_2 + Z_2 + Z_2 + Z_2 + Z_2  1\n"
    "ab ≡ 0 (mod 2)         Z^3 + Z_2 + Z_2 + Z_2            3\n"
)

QUARTER_TABLE = (
    "H1 of the six-dimensional two-plane quotients — quarter turn, k = 1\n"
    "\n"
    "product residue class  first homology             b1\n"
    "---------------------  -------------------------  --\n"
    "ab ≡ ±1 (mod 4)        Z + Z_2 + Z_2 + Z_2        1\n"
    "ab ≡ 2 (mod 4)         Z + Z_2 + Z_2 + Z_2 + Z_2  1\n"
    "ab ≡ 0 (mod 4)         Z^3 + Z_2 + Z_2            3\n"
)


@pytest.mark.parametrize(
    "turn, golden", [("half", HALF_TABLE), ("quarter", QUARTER_TABLE)], ids=("half", "quarter")
)
def test_lattice_table_golden(capsys, turn, golden):
    code, out, _ = run(capsys, "lattice", "table", "--turn", turn, "-k", "1")
    assert code == 0
    assert out == golden
    again = run(capsys, "lattice", "table", "--turn", turn, "-k", "1")[1]
    assert again == out


def test_lattice_table_json_is_marked_published(capsys):
    code, report, _ = run_json(capsys, "lattice", "table", "--turn", "quarter", "-k", "3")
    assert code == 0
    assert report["provenance"] == "published table"
    rows = report["results"]["rows"]
    assert [row["torsion"] for row in rows] == [[2, 2, 6], [2, 2, 2, 6], [2, 6]]


# ---------------------------------------------------------------------------
# output modes


def test_json_flag_is_compact(capsys, flat4):
    _, out, _ = run(capsys, "verify", "--structure", "lie", flat4, "--json")
    assert out.count("\n") == 1
    _, pretty, _ = run(capsys, "verify", "--structure", "lie", flat4)
    assert pretty.count("\n") > 5
    # identical payloads up to the echoed flag
    assert json.loads(out)["results"] == json.loads(pretty)["results"]


def test_json_and_pretty_are_exclusive(capsys, flat4):
    assert run(capsys, "verify", "--structure", "lie", flat4, "--json", "--pretty")[0] == 2
