"""Command line: exit codes, stream discipline, flags."""

from __future__ import annotations

import subprocess
import sys

from conftest import ROOT, stdlib_paths

STDLIB = [str(p) for p in stdlib_paths()]


def run(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "hott.cli", *args], capture_output=True, cwd=ROOT, text=True
    )


def test_check_stdlib_exit_zero():
    proc = run("check", *STDLIB)
    assert proc.returncode == 0
    assert proc.stderr == ""


def test_check_missing_file_exit_3():
    proc = run("check", "missing.hott")
    assert proc.returncode == 3
    assert "missing.hott" in proc.stderr


def test_check_no_files_exit_3():
    proc = run("check")
    assert proc.returncode == 3


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.hott"
    bad.write_text("def x := 3\n")
    proc = run("check", str(bad))
    assert proc.returncode == 2
    assert proc.stdout == ""
    assert "expected" in proc.stderr


def test_lex_error_exit_2(tmp_path):
    bad = tmp_path / "bad.hott"
    bad.write_text("def x : Nat := @\n")
    proc = run("check", str(bad))
    assert proc.returncode == 2


def test_type_error_exit_1(tmp_path):
    bad = tmp_path / "bad.hott"
    bad.write_text("def x : Nat := star\n")
    proc = run("check", str(bad))
    assert proc.returncode == 1
    assert proc.stdout == ""
    assert "type-mismatch" in proc.stderr


def test_failed_assert_exit_1(tmp_path):
    bad = tmp_path / "bad.hott"
    bad.write_text("#assert-eq zero == 1 : Nat\n")
    proc = run("check", str(bad))
    assert proc.returncode == 1


def test_eval_prints_decimal():
    proc = run("eval", "--expr", "binom 5 2", *STDLIB)
    assert proc.returncode == 0
    assert proc.stdout == "10\n"


def test_eval_requires_expr():
    proc = run("eval", *STDLIB)
    assert proc.returncode == 3


def test_eval_type_error_exit_1():
    proc = run("eval", "--expr", "succ star", *STDLIB)
    assert proc.returncode == 1


def test_eval_parse_error_exit_2():
    proc = run("eval", "--expr", "((", *STDLIB)
    assert proc.returncode == 2


def test_eval_non_nat_normal_form():
    proc = run("eval", "--expr", "pred-Z zero-Z", *STDLIB)
    assert proc.returncode == 0
    assert proc.stdout == "inl 0\n"


def test_eval_print_normal_forms_flag():
    proc = run("eval", "--print-normal-forms", "--expr", "add 1 2", *STDLIB)
    assert proc.returncode == 0
    assert proc.stdout == "3\nsucc (succ (succ zero))\n"


def test_max_steps_flag_budget():
    proc = run("eval", "--max-steps", "4", "--expr", "factorial 5", *STDLIB)
    assert proc.returncode == 1
    assert "budget" in proc.stderr


def test_trace_goes_to_stderr():
    proc = run("check", "--trace", STDLIB[0])
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert "prelude.hott" in proc.stderr


def test_jobs_flag_parses_concurrently():
    proc = run("check", "--jobs", "4", *STDLIB)
    assert proc.returncode == 0
    single = run("check", *STDLIB)
    assert proc.stdout == single.stdout
