import json

from jacobiforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--what", "A", "--N", "2", "--G", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "q^0: w^2 - 2 + w^-2"
    assert lines[1].startswith("q^1:")


def test_expand_json_schema(capsys):
    code, out, _ = run(capsys, "expand", "--what", "E4", "--N", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["0"] == [{"w": 0, "coeff": "1"}]
    assert data["1"] == [{"w": 0, "coeff": "240"}]


def test_expand_element_and_window_note(capsys):
    code, out, _ = run(capsys, "expand", "--what", "element", "--element", "E4*A", "--N", "1")
    assert code == 0
    code, out, _ = run(capsys, "expand", "--what", "J1", "--N", "1", "--G", "4")
    assert code == 0
    assert "window" in out


def test_bracket_subcommand(capsys):
    code, out, _ = run(
        capsys, "bracket", "--family", "orc", "--params", "0", "--n", "1", "--f", "E4", "--g", "E6"
    )
    assert code == 0
    assert out.strip() == "-2*E4^3 + 2*E6^2"
    code, out, _ = run(
        capsys, "bracket", "--family", "rc", "--n", "1", "--f", "E4", "--g", "E6", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert {"e4": 3, "e6": 0, "a": 0, "b": 0, "coeff": "-2"} in data["terms"]


def test_bracket_usage_errors(capsys):
    code, _, err = run(capsys, "bracket", "--family", "orc", "--params", "1,2", "--n", "1", "--f", "E4", "--g", "E6")
    assert code == 2
    code, _, err = run(capsys, "bracket", "--family", "orc", "--params", "1", "--n", "1", "--f", "E4+", "--g", "E6")
    assert code == 2


def test_deriv_subcommand(capsys):
    code, out, _ = run(capsys, "deriv", "--name", "oberdieck", "--input", "A")
    assert code == 0
    assert out.strip() == "-1/6*B"
    code, out, _ = run(
        capsys, "deriv", "--name", "serre_ab", "--param", "0,0", "--input", "E4", "--power", "2"
    )
    assert code == 0
    assert out.strip() == "1/6*E4^2"
    code, out, _ = run(capsys, "deriv", "--name", "partial_u", "--param", "1/12", "--input", "B")
    assert code == 0


def test_deriv_allow_f2(capsys):
    code, out, _ = run(capsys, "deriv", "--name", "sharp", "--input", "F2", "--allow-f2")
    assert code == 0
    assert out.strip() == "-1/12*E4"
    code, _, _ = run(capsys, "deriv", "--name", "sharp", "--input", "F2")
    assert code == 2


def test_verify_associativity(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--suite", "associativity", "--family", "accol", "--params", "1,1,0", "--nmax", "3",
    )
    assert code == 0
    assert "PASS" in out


def test_verify_associativity_with_caps_uses_monomial_basis(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--suite", "associativity", "--family", "orc", "--params", "1",
        "--nmax", "2", "--weight-cap", "4", "--index-cap", "1", "--json",
    )
    assert code == 0
    reports = json.loads(out)
    assert reports[0]["params"]["basis_size"] > 4


def test_verify_poisson_json(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "poisson", "--family", "orc", "--params", "1", "--json"
    )
    assert code == 0
    reports = json.loads(out)
    assert reports[0]["status"] == "pass"
    assert set(reports[0]) == {"claim", "status", "witness", "params"}


def test_verify_stability_failure_exit_code(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--suite", "stability", "--family", "crochet", "--params", "1,1", "--nmax", "1", "--json",
    )
    assert code == 1
    reports = json.loads(out)
    assert reports[0]["status"] == "fail"
    assert reports[0]["witness"] is not None


def test_verify_bidegree_deterministic(capsys):
    args = ["verify", "--suite", "bidegree", "--family", "Crochet", "--params", "1/12,0",
            "--nmax", "2", "--pairs", "5", "--seed", "11", "--json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_vinset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "vinset", "--u", "0,1/12", "--json")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 3
    assert all(r["status"] == "pass" for r in reports)


def test_classify_subcommand(capsys):
    code, out, _ = run(capsys, "classify", "--params", "4,6,2,-2,0,0,0,0,0,0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["admissible"] is True
    assert [f["name"] for f in data["families"]] == ["C1"]
    code, out, _ = run(capsys, "classify", "--params", "4,6,2,-2,0,0,1,0,0,0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["admissible"] is False
    assert data["families"] == []


def test_classify_usage_error(capsys):
    code, _, err = run(capsys, "classify", "--params", "1,2,3")
    assert code == 2


def test_iso_subcommand(capsys):
    code, out, _ = run(capsys, "iso", "--from", "2,3,5", "--to", "1,6,5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["isomorphic"] is True
    assert data["scaling"] == ["2", "1"]
    assert data["normal_form_from"] == ["1", "6", "5"]
    code, out, _ = run(capsys, "iso", "--from", "2,3,5", "--to", "1,5,5", "--json")
    data = json.loads(out)
    assert data["isomorphic"] is False


def test_scan_subcommand(capsys):
    code, out, _ = run(
        capsys,
        "scan-conjecture", "--u", "0,1/12", "--nmax", "1", "--weight-cap", "4", "--index-cap", "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("[PASS]")
    assert any("in_Jtilde=true" in line for line in lines)


def test_scan_json_deterministic(capsys):
    args = ["scan-conjecture", "--u", "0", "--nmax", "1", "--weight-cap", "4", "--index-cap", "1", "--json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["status"] == "pass"


def test_unknown_arguments_exit_2(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "expand", "--what", "XX")[0] == 2


def test_negative_rationals_via_equals_form(capsys):
    # a separate "-1/6,..." token parses as a flag; the = form avoids that
    code, out, _ = run(capsys, "deriv", "--name", "serre_ab", "--param=-1/6,-1/3", "--input", "A")
    assert code == 0
    assert out.strip() == "-1/6*B"
    code, out, _ = run(capsys, "iso", "--from=-1,2,3", "--to=1,-2,3", "--json")
    assert code == 0
    assert json.loads(out)["isomorphic"] is True
