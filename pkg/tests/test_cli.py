"""Command-line interface tests: outputs, exit codes, flag handling."""

import json

import pytest

from scrolleq.cli import run


def lines_of(capsys):
    return capsys.readouterr().out.strip().splitlines()


# -- equations ------------------------------------------------------------------


def test_equations_2234(capsys):
    assert run(["--profile", "2,2,3,4", "equations"]) == 0
    out = lines_of(capsys)
    gen_lines = [l for l in out if not l.startswith("#")]
    assert len(gen_lines) == 12
    assert any("arithmetic rank = 12 = N-2" in l for l in out)
    assert any(l.endswith("# curve[1][1]") for l in gen_lines)
    assert any(l.endswith("# weight[7]") for l in gen_lines)


def test_equations_two_quadric_blocks(capsys):
    assert run(["--profile", "2,2", "equations"]) == 0
    gen_lines = [l for l in lines_of(capsys) if not l.startswith("#")]
    assert len(gen_lines) == 3


def test_equations_minimal(capsys):
    assert run(["--profile", "1,1", "equations"]) == 0
    gen_lines = [l for l in lines_of(capsys) if not l.startswith("#")]
    assert len(gen_lines) == 1


def test_equations_single_block_summary(capsys):
    assert run(["--profile", "4", "equations"]) == 0
    out = capsys.readouterr().out
    assert "arithmetic rank = 3 (rational normal curve case)" in out


def test_equations_json(capsys):
    assert run(["--profile", "2,2,3,4", "equations", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["system_size"] == 12
    assert doc["N"] == 14
    assert doc["arithmetic_rank"] == 12
    assert len(doc["generators"]) == 12
    assert len(doc["minors"]) == 55
    assert doc["generators"][0]["label"] == "curve[1][1]"


# -- verify ---------------------------------------------------------------------------


def test_verify_symbolic_only(capsys):
    assert run(["--profile", "2,2", "verify"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_verify_with_field(capsys):
    assert run(["--profile", "1,2", "verify", "--field", "3"]) == 0
    out = capsys.readouterr().out
    assert "count_J=16 count_P=16" in out


def test_verify_full_profile_char_two(capsys):
    assert run(["--profile", "2,2,3,4", "verify", "--field", "2"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "variety-comparison q=2" in out


def test_verify_json_records_seed(capsys):
    assert run(["--profile", "1,1", "verify", "--field", "3", "--format", "json",
                "--seed", "42"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert doc["variety"]["seed"] == 42
    assert doc["variety"]["count_J"] == 16
    assert all(c["passed"] for c in doc["checks"])


# -- enumerate -------------------------------------------------------------------------


def test_enumerate_reports_counts(capsys):
    assert run(["--profile", "1,1", "enumerate", "--field", "3"]) == 0
    out = capsys.readouterr().out
    assert "count_J = 16" in out and "PASS" in out


def test_enumerate_field_defaults():
    from scrolleq import build_profile
    from scrolleq.cli import default_field

    assert default_field(build_profile([1, 1])) == 3
    assert default_field(build_profile([2, 2, 3, 4])) == 2


def test_enumerate_without_field_uses_default(capsys):
    assert run(["--profile", "1,1", "enumerate"]) == 0
    assert "GF(3)" in capsys.readouterr().out
    assert run(["--profile", "2,2,3,4", "enumerate"]) == 0
    assert "GF(2)" in capsys.readouterr().out


def test_enumerate_budget_exit_code(capsys):
    code = run(["--profile", "2,2,3,4", "enumerate", "--field", "3", "--budget", "1000"])
    assert code == 3
    assert "budget exceeded" in capsys.readouterr().err


def test_budget_env_default(capsys, monkeypatch):
    monkeypatch.setenv("SCROLLEQ_BUDGET", "10")
    assert run(["--profile", "1,1", "enumerate", "--field", "3"]) == 3
    monkeypatch.setenv("SCROLLEQ_BUDGET", "100000")
    assert run(["--profile", "1,1", "enumerate", "--field", "3"]) == 0
    capsys.readouterr()


def test_nonprime_field_is_usage_error(capsys):
    assert run(["--profile", "1,1", "enumerate", "--field", "4"]) == 2
    assert "not prime" in capsys.readouterr().err


# -- export ------------------------------------------------------------------------------


def test_export_deterministic_file(tmp_path):
    out1 = tmp_path / "a.m2"
    out2 = tmp_path / "b.m2"
    assert run(["--profile", "2,3", "export", "--out", str(out1)]) == 0
    assert run(["--profile", "2,3", "export", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_export_cas_alias_is_m2(capsys):
    assert run(["--profile", "1,1", "export", "--format", "cas"]) == 0
    out = capsys.readouterr().out
    assert "QQ[" in out


def test_export_singular(capsys):
    assert run(["--profile", "1,1", "export", "--format", "singular"]) == 0
    assert "ring R = 0" in capsys.readouterr().out


def test_export_rejects_plain():
    with pytest.raises(SystemExit) as exc:
        run(["--profile", "1,1", "export", "--format", "plain"])
    assert exc.value.code == 2


# -- bench ---------------------------------------------------------------------------------


def test_bench_rows(capsys):
    assert run(["--profile", "1,2", "bench", "--field", "3"]) == 0
    out = lines_of(capsys)
    phases = [l.split("\t")[0] for l in out]
    assert phases == ["construct", "symbolic", "enumerate q=3"]


def test_bench_json_without_field(capsys):
    assert run(["--profile", "1,1", "bench", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [row["phase"] for row in doc] == ["construct", "symbolic"]
    assert all(row["ms"] >= 0 for row in doc)


# -- flags and usage -------------------------------------------------------------------------


def test_flags_before_or_after_command(capsys):
    assert run(["--profile", "1,1", "verify"]) == 0
    capsys.readouterr()
    assert run(["verify", "--profile", "1,1"]) == 0
    capsys.readouterr()


def test_flag_after_command_overrides_before(capsys):
    assert run(["--field", "3", "enumerate", "--profile", "1,1", "--field", "5"]) == 0
    assert "GF(5)" in capsys.readouterr().out


def test_missing_profile_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["equations"])
    assert exc.value.code == 2


def test_invalid_profile_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["--profile", "0,2", "equations"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["--profile", "2,x", "equations"])
    assert exc.value.code == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["--profile", "1,1", "frobnicate"])
    assert exc.value.code == 2
