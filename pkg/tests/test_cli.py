import json

import pytest

from tracekernel.cli import main
from tracekernel.runner import Report, emit

DOC = """\
algebra A fam=dual_numbers field=F2
[module X]
preset = direct_sum(R,k)
[tasks]
trace M=k L=R N=R
center M=X
iso kind=center M=X
reflexive M=k
semidualizing C=omega
check name=lindo M=R
"""


@pytest.fixture
def docfile(tmp_path):
    p = tmp_path / "dual.tk"
    p.write_text(DOC)
    return str(p)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_empty_report():
    assert emit(Report()) == '{"tasks": []}'


def test_run_document(capsys, docfile):
    code, out = run_json(capsys, ["run", docfile])
    assert code == 0 and out["ok"] and out["schema"] == "v1"
    ops = [t["op"] for t in out["tasks"]]
    assert ops == ["trace", "center", "iso", "reflexive", "semidualizing", "check"]
    trace = out["tasks"][0]["result"]
    assert trace["basis"] == ["x"] and trace["dim"] == 1
    assert out["tasks"][1]["result"]["dim"] == 2
    assert out["tasks"][2]["result"]["verdict"] == "pass"
    assert out["tasks"][3]["result"]["reflexive"] is True


def test_single_subcommand_with_arguments(capsys, docfile):
    code, out = run_json(capsys, ["hom", docfile, "M=k", "N=R"])
    assert code == 0
    assert out["tasks"][0]["result"]["dim"] == 1
    code, out = run_json(capsys, ["center", docfile])
    assert [t["op"] for t in out["tasks"]] == ["center"]


def test_output_is_deterministic(capsys, docfile):
    main(["run", docfile, "--json"])
    first = capsys.readouterr().out
    main(["run", docfile, "--json"])
    assert capsys.readouterr().out == first


def test_seed_from_environment(capsys, docfile, monkeypatch):
    monkeypatch.setenv("TRACEKERNEL_SEED", "7")
    _, out = run_json(capsys, ["validate", docfile])
    assert out["seed"] == 7
    _, out = run_json(capsys, ["validate", docfile, "--seed", "3"])
    assert out["seed"] == 3
    monkeypatch.setenv("TRACEKERNEL_SEED", "seven")
    assert main(["validate", docfile]) == 2


def test_semigroup_commands_need_no_file(capsys):
    code, out = run_json(capsys, ["sgp.check_canonical", "gens=3,4,5", "ideal=m"])
    assert code == 0
    res = out["tasks"][0]["result"]
    assert res["verdict"] == "pass" and res["shift"] == 3
    code, out = run_json(capsys, ["sgp.hw_probe", "gens=3,4", "ideal=m"])
    assert code == 0
    assert out["tasks"][0]["result"]["torsion_len_star"]["length"] == 2


def test_usage_errors(capsys, docfile, tmp_path):
    assert main(["frobnicate", docfile]) == 2
    assert main(["hom"]) == 2
    assert main(["run", str(tmp_path / "missing.tk")]) == 2
    bad = tmp_path / "bad.tk"
    bad.write_text("field = F6\n")
    assert main(["run", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_failing_task_exit_code(capsys, docfile):
    # an unknown module is a task error, not a parse error
    assert main(["hom", docfile, "M=nope", "N=R"]) == 1


def test_human_output(capsys, docfile):
    assert main(["trace", docfile]) == 0
    out = capsys.readouterr().out
    assert "trace M=k L=R N=R  ok" in out and out.rstrip().endswith("1 task(s), 0 not ok")


def test_small_suite_from_cli(capsys):
    code, out = run_json(
        capsys, ["suite", "fields=2", "families=dual_numbers", "checks=center,lindo,tracetheory1", "triples=4"]
    )
    res = out["tasks"][0]["result"]
    assert res["failures"] == []
    assert res["counts"]["center"]["fail"] == 0
