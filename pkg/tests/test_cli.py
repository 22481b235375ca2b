import json

import jsonschema
import pytest

from conftest import FIXTURES
from hhglue.cli import REPORT_SCHEMA, main


def run(capsys, *argv):
    code = main([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["exit_code"] == code
    return code, doc


def fx(name):
    return str(FIXTURES / f"{name}.hq")


def test_validate(capsys):
    code, doc = run(capsys, "validate", fx("double_fork"))
    assert code == 0 and doc["results"]["dimension"] == 10
    code, doc = run(capsys, "validate", fx("infinite"))
    assert code == 2 and doc["results"]["witness"]
    code, doc = run(capsys, "validate", fx("malformed"))
    assert code == 1 and "line" in doc["error"]


def test_basis(capsys):
    code, doc = run(capsys, "basis", fx("double_fork"))
    assert doc["results"]["by_length"]["2"] == ["alpha2.beta"]
    code, doc = run(capsys, "basis", fx("double_fork"), "--right-to-left")
    assert doc["results"]["by_length"]["2"] == ["beta alpha2"]


def test_hh_degrees(capsys):
    code, doc = run(capsys, "hh", fx("two_loops"), "--all-upto", "3")
    assert code == 0 and doc["results"]["dims"] == {"0": 3, "1": 4, "2": 6, "3": 12}
    code, doc = run(capsys, "hh", fx("double_fork"), "--degree", "2")
    assert code == 2 and doc["error"].startswith("usage")
    code, doc = run(capsys, "hh", fx("double_fork"), "--degree", "2", "--oracle")
    assert code == 0


def test_hh_lie_in_char_two(capsys):
    code, doc = run(capsys, "hh", fx("loop_char2"), "--degree", "1", "--lie")
    lie = doc["results"]["HH1"]["lie"]
    assert code == 0 and len(lie["p_powers"]) == 3
    assert lie["grading"] == {"-1": 1, "0": 1, "1": 1}


def test_hh_field_override(capsys):
    code, doc = run(capsys, "hh", fx("loop_char2"), "--degree", "1", "--field", "Q")
    assert doc["results"]["HH1"]["dim"] == 2


def test_glue_and_split(capsys, tmp_path):
    out = tmp_path / "b.hq"
    code, doc = run(capsys, "glue", fx("a5_path"), "--at", "e1,e5", "--out", str(out))
    assert code == 0 and doc["results"]["hh1"] == {"A": 0, "B": 1}
    back = tmp_path / "a.hq"
    code, doc = run(capsys, "split", str(out), "--vertex", "f1", "--side1", "b,c",
                    "--side2", "d,a", "--names", "e1,e5", "--out", str(back))
    assert code == 0
    code, doc = run(capsys, "glue", str(back), "--at", "e1,e5")
    assert doc["results"]["presentation"] == out.read_text().strip().splitlines()


def test_glue_errors(capsys):
    code, doc = run(capsys, "glue", fx("double_fork"), "--at", "e1,e1")
    assert code == 2


def test_verify_suites(capsys):
    code, doc = run(capsys, "verify", fx("a5_path"), "--at", "e1,e5", "--suite", "all")
    assert code == 0
    code, doc = run(capsys, "verify", fx("kronecker2"), "--at", "e1,e2", "--suite", "all,highdeg")
    assert code == 0
    code, doc = run(capsys, "verify", fx("loop_char2"), "--at", "e1,e3", "--suite", "ker1")
    assert code == 0 and doc["warnings"]
    code, doc = run(capsys, "verify", fx("double_fork"), "--at", "e1,e4", "--suite", "ideal")
    assert code == 0


def test_verify_random(capsys):
    code, doc = run(capsys, "verify", "--random", "2", "--seed", "1", "--suite", "hh1")
    assert code == 0


def test_other_commands(capsys):
    code, doc = run(capsys, "sf-profile", fx("running_example"))
    assert code == 0 and all(b["match"] for b in doc["results"]["blocks"])
    code, doc = run(capsys, "pi1-rank", fx("double_fork"))
    assert doc["results"]["betti"] == 2 == doc["results"]["rank_from_im_delta0"]
    code, doc = run(capsys, "oracle", fx("double_fork"), "--degree", "1", "--derivations")
    assert doc["results"]["dims"] == {"1": 4} and doc["results"]["derivations"]["dim"] == 4


def test_budget_exit_code(capsys):
    code, doc = run(capsys, "oracle", fx("loops_and_cycle"), "--degree", "3", "--budget", "100")
    assert code == 4


def test_determinism(capsys):
    argv = ["hh", fx("loops_and_cycle"), "--degree", "1", "--lie", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_timings_opt_in(capsys):
    code, doc = run(capsys, "validate", fx("double_fork"))
    assert "timings" not in doc
    code, doc = run(capsys, "validate", fx("double_fork"), "--timings")
    assert "total" in doc["timings"]


def test_human_output(capsys):
    assert main(["hh", fx("double_fork"), "--degree", "1"]) == 0
    out = capsys.readouterr().out
    assert "HH1" in out and "{" not in out


def test_missing_file(capsys):
    code, doc = run(capsys, "validate", "/nonexistent.hq")
    assert code == 1


def test_argparse_rejects_bad_degree():
    with pytest.raises(SystemExit):
        main(["verify", fx("double_fork"), "--at", "e1,e4", "--suite", "highdeg", "--max-degree", "1"])
