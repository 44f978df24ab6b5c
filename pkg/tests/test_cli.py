"""
Tests the cli package.
"""
import json
import shutil

import pytest

from mfcas import conf
from mfcas.adecat.store import data_dir
from mfcas.adjunction import qdim
from mfcas.cli import (
    Check,
    RunReport,
    build_parser,
    cmd_compute,
    main,
    run_check,
    run_checks,
    suite_checks,
)
from mfcas.cli.report import FAIL, PASS, SKIP
from mfcas.cli.suites import SUITES, check_fusion, check_quantum_identity
from mfcas.exceptions import NotInvertible, ParseError
from mfcas.mfcore import permutation_mf, write_mf
from mfcas.mfcore.io import dumps


def _passing():
    return {"passed": True, "value": 1}


def _failing():
    return {"passed": False, "messages": ["wrong value"]}


def _raising():
    raise NotInvertible("zero has no inverse")


#
# running checks
#
def test_run_check_statuses():
    assert run_check(Check("a", _passing)).status == PASS

    result = run_check(Check("b", _failing))
    assert result.status == FAIL
    assert result.payload["messages"] == ["wrong value"]

    result = run_check(Check("c", _raising))
    assert result.status == FAIL
    assert result.payload["error"] == "NotInvertible: zero has no inverse"


def test_run_check_of_suite_function():
    result = run_check(Check("tl/quantum-identity", check_quantum_identity))
    assert result.status == PASS
    assert result.payload["value"] == "0"


def test_run_checks_keeps_order_and_skips_long_checks():
    checks = [
        Check("z", _passing),
        Check("y", _failing),
        Check("x", _passing, long=True),
    ]
    results = run_checks(checks, n_jobs=1, long=False)
    assert [r.name for r in results] == ["z", "y", "x"]
    assert [r.status for r in results] == [PASS, FAIL, SKIP]

    results = run_checks(checks, n_jobs=1, long=True)
    assert results[2].status == PASS


def test_run_checks_rejects_duplicate_names():
    with pytest.raises(ValueError):
        run_checks([Check("a", _passing), Check("a", _failing)])


def test_run_checks_rejects_invalid_jobs():
    with pytest.raises(ValueError):
        run_checks([Check("a", _passing)], n_jobs=0)


def test_run_checks_in_worker_processes():
    checks = [
        Check("generic", check_quantum_identity),
        Check("d3", check_quantum_identity, (3,)),
        Check("d5", check_quantum_identity, (5,)),
    ]
    sequential = run_checks(checks, n_jobs=1)
    parallel = run_checks(checks, n_jobs=2)
    assert [r.to_dict() for r in parallel] == [r.to_dict() for r in sequential]
    assert all(r.status == PASS for r in parallel)


def test_run_report():
    report = RunReport("demo", run_checks([Check("a", _passing), Check("b", _failing)]))
    assert report.exit_code == 1
    assert report.summary() == {"passed": 1, "failed": 1, "skipped": 0}
    text = report.to_text()
    assert "FAIL  b" in text
    assert "wrong value" in text
    assert text.endswith("demo: 1 passed, 1 failed, 0 skipped\n")

    data = json.loads(report.to_json())
    assert [c["name"] for c in data["checks"]] == ["a", "b"]
    assert "elapsed" not in data["checks"][0]
    assert "elapsed" in json.loads(report.to_json(timings=True))["checks"][0]

    assert RunReport("empty").exit_code == 0


#
# suites
#
@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_check_names_are_unique(suite):
    names = [c.name for c in suite_checks(suite)]
    assert len(names) == len(set(names))
    assert all(n.startswith(f"{suite}/") for n in names)


def test_all_suites():
    names = [c.name for c in suite_checks("all")]
    assert len(names) == sum(len(SUITES[s](0)) for s in SUITES)


def test_unknown_suite():
    with pytest.raises(ValueError):
        suite_checks("ghosts")


def test_bh_suite_is_reproducible():
    first = [c.args for c in suite_checks("bh", 1) if c.name.startswith("bh/random/")]
    again = [c.args for c in suite_checks("bh", 1) if c.name.startswith("bh/random/")]
    assert len(first) == 25
    assert [W.exponents for (W,) in first] == [W.exponents for (W,) in again]


def test_long_checks_are_marked():
    checks = {c.name: c for c in suite_checks("ade")}
    assert checks["ade/witness/E8"].long
    assert checks["ade/end/E7"].long
    assert not checks["ade/witness/E6"].long
    assert not checks["ade/end/D3"].long
    assert not checks["ade/end/E6"].long
    assert not checks["ade/monoid/D4/reduced"].long
    assert [c.name for c in suite_checks("ade") if c.long] == [
        "ade/witness/E8",
        "ade/end/E7",
        "ade/end/E8",
    ]
    for suite in ("fusion", "tl", "adjunction"):
        assert not any(c.long for c in suite_checks(suite))


def test_fusion_check_labels():
    result = check_fusion(3, 0, 0, 1)
    assert result["passed"], result
    assert result["decomposition"] == [[1, 0]]


#
# compute
#
def test_compute_fuse(capsys):
    assert main(["compute", "fuse", "5", "0", "1", "0", "1"]) == 0
    assert capsys.readouterr().out == "P_{1:0} ⊕ P_{0:2}\n"


def test_compute_charge(capsys):
    assert main(["compute", "charge", "x^3+x*y^3"]) == 0
    assert capsys.readouterr().out == "8/9\n"


def test_compute_milnor(capsys):
    assert main(["compute", "milnor", "x^3 + x*y^3"]) == 0
    assert capsys.readouterr().out == "7\n"


def test_compute_transpose(capsys):
    assert main(["compute", "transpose", "x^4 + x*y^2"]) == 0
    out = capsys.readouterr().out.strip()
    assert set(out.split(" + ")) == {"x^4*y", "y^2"}


def test_compute_wenzl():
    text = cmd_compute("wenzl", ["2"])
    assert text.startswith("(1) 1 + (")
    assert text.endswith(") e1")
    assert cmd_compute("wenzl", ["1"]) == "(1) 1"


def test_compute_wenzl_undefined_at_root_of_unity(capsys):
    assert main(["compute", "wenzl", "3", "--at", "3"]) == 1
    assert "UndefinedProjector" in capsys.readouterr().err


def test_compute_qdim(tmp_path, capsys):
    P = permutation_mf(4, [1, 2])
    path = tmp_path / "p.json"
    write_mf(P, path)
    assert main(["compute", "qdim", str(path)]) == 0
    dims = qdim(P)
    assert capsys.readouterr().out == f"qdim_l = {dims.left}\nqdim_r = {dims.right}\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "fuse", "5", "0", "1"],
        ["compute", "fuse", "5", "0", "one", "0", "1"],
        ["compute", "charge", "x^2*y^2 + x*y"],
        ["compute", "charge", "x^3", "y^2"],
        ["compute", "fuse", "5", "0", "4", "0", "1"],
    ],
)
def test_compute_invalid_arguments(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err


def test_compute_argument_errors():
    with pytest.raises(ParseError):
        cmd_compute("milnor", ["x^3", "y^2"])
    with pytest.raises(ParseError):
        cmd_compute("wenzl", ["two"])


def test_parser_rejects_unknown_kind():
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args(["compute", "determinant", "x"])
    assert e.value.code == 2


#
# inspect
#
def test_inspect_permutation_mf(tmp_path, capsys):
    path = tmp_path / "p.json"
    write_mf(permutation_mf(3, [0], graded=True), path)
    assert main(["inspect", str(path), "--graded"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "ok"
    assert "rank: 1 + 1" in lines
    assert "H = (1, 1)" in lines
    assert any(line.startswith("grading: even [") for line in lines)


def test_inspect_corrupted_entry(tmp_path, capsys):
    text = dumps(permutation_mf(3, [0]))
    path = tmp_path / "bad.json"
    path.write_text(text.replace('"x^2 + x*y + y^2"', '"x^2 + x*y + 2*y^2"'))
    assert main(["inspect", str(path)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("SquareMismatch in d")
    assert "at entry" in err


def test_inspect_missing_grading(tmp_path, capsys):
    path = tmp_path / "p.json"
    write_mf(permutation_mf(3, [0]), path)
    assert main(["inspect", str(path)]) == 0
    capsys.readouterr()
    assert main(["inspect", str(path), "--graded"]) == 1
    assert capsys.readouterr().err.startswith("GradingViolation")


def test_inspect_parse_error(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(dumps(permutation_mf(3, [0])).replace('"x - y"', '"x - q"'))
    assert main(["inspect", str(path)]) == 1
    assert "d1[0][0]" in capsys.readouterr().err


def test_inspect_missing_file(tmp_path, capsys):
    assert main(["inspect", str(tmp_path / "nothing.json")]) == 1
    assert capsys.readouterr().err.startswith("error:")


#
# verify
#
def test_verify_tl(tmp_path, capsys):
    path = tmp_path / "tl.json"
    assert main(["verify", "--suite", "tl", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert " 0 failed" in out

    data = json.loads(path.read_text())
    assert data["suite"] == "tl"
    assert [c["name"] for c in data["checks"]] == [c.name for c in suite_checks("tl")]
    assert data["summary"]["failed"] == 0


def test_verify_is_deterministic(monkeypatch, capsys):
    checks = [Check("demo/a", check_quantum_identity), Check("demo/b", check_quantum_identity, (5,))]
    monkeypatch.setattr("mfcas.cli.commands.suite_checks", lambda suite, seed: checks)

    assert main(["verify", "--suite", "tl", "--json", "-"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--suite", "tl", "--json", "-"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["summary"] == {"passed": 2, "failed": 0, "skipped": 0}


def test_verify_default_json_path(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(conf, "RESULTS_DIR", tmp_path)
    monkeypatch.setattr(
        "mfcas.cli.commands.suite_checks", lambda suite, seed: [Check("demo/a", _passing)]
    )
    assert main(["verify", "--suite", "tl", "--json"]) == 0
    assert json.loads((tmp_path / "verify-tl.json").read_text())["suite"] == "tl"


def test_verify_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(
        "mfcas.cli.commands.suite_checks",
        lambda suite, seed: [Check("demo/a", _passing), Check("demo/b", _failing)],
    )
    assert main(["verify", "--suite", "bh"]) == 1
    assert "FAIL  demo/b" in capsys.readouterr().out


def test_verify_invalid_jobs(capsys):
    assert main(["verify", "--suite", "tl", "--jobs", "0"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_verify_catalog_checksum_mismatch(tmp_path, monkeypatch, capsys):
    target = tmp_path / "data"
    shutil.copytree(data_dir(), target)
    with open(target / "e7.json", "a") as f:
        f.write("\n")
    monkeypatch.setitem(conf.CATALOG, "DATA_DIR", target)
    monkeypatch.setitem(conf.CATALOG, "CHECKSUMS_FILE", target / "checksums.json")

    assert main(["verify", "--suite", "ade"]) == 2
    assert "e7.json" in capsys.readouterr().err


def test_verify_defaults_follow_conf():
    args = build_parser().parse_args(["verify"])
    assert args.suite == "all"
    assert args.jobs == conf.GENERAL["N_JOBS"]
    assert args.seed == conf.GENERAL["RANDOM_SEED"]
    assert args.long == bool(conf.GENERAL["LONG_CHECKS"])
