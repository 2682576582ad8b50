"""Test the command-line surface and its exit codes."""

import json
import signal

import pandas as pd
import pytest

from hckm.__main__ import (
    EXIT_ERROR,
    EXIT_INFEASIBLE,
    EXIT_OK,
    build_parser,
    cancel_on_interrupt,
    main,
)

BLOBS = "blobs:count=2,per_blob=3,sigma=0.2,spread=8"


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("HCKM_LOG", raising=False)


def test_solve_writes_solution(tmp_path):
    out = tmp_path / "solution.json"
    code = main(["solve", "--generate", BLOBS, "--k", "2", "--u", "3", "--output", str(out)])
    assert code == EXIT_OK
    document = json.loads(out.read_text())
    assert len(document["labels"]) == 6
    assert document["config"]["k"] == 2
    assert document["advertised_bound"] == pytest.approx(69.36)


def test_solve_prints_to_stdout(capsys):
    assert main(["solve", "--generate", BLOBS, "--k", "2", "--u", "3", "--seed", "4"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["subroutine_stats"]["seed"] == 4


def test_solve_from_csv(tmp_path):
    (tmp_path / "points.csv").write_text("0,0\n0,1\n10,0\n10,1\n")
    out = tmp_path / "out.json"
    code = main(["solve", "--input", "points.csv", "--k", "2", "--u", "2", "--output", str(out),
                 "--workers", "2", "--no-prune"])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["cost_d"] == pytest.approx(1.0)


def test_infeasible_exit_code(tmp_path, capsys):
    (tmp_path / "points.csv").write_text("0\n1\n2\n3\n")
    code = main(["solve", "--input", "points.csv", "--k", "2", "--u", "1"])
    assert code == EXIT_INFEASIBLE
    assert "Infeasible instance" in capsys.readouterr().err


def test_other_errors_exit_one(tmp_path, capsys):
    assert main(["solve", "--input", "missing.csv", "--k", "2", "--u", "2"]) == EXIT_ERROR
    (tmp_path / "bad.csv").write_text("0,0\n1\n")
    assert main(["solve", "--input", "bad.csv", "--k", "1", "--u", "2"]) == EXIT_ERROR
    assert "ragged row at line 2" in capsys.readouterr().err
    assert main(["solve", "--generate", BLOBS, "--k", "2", "--u", "3",
                 "--output", str(tmp_path / "nope" / "out.json")]) == EXIT_ERROR
    assert main(["solve", "--generate", BLOBS, "--k", "2", "--u", "3",
                 "--subroutine", "nope"]) == EXIT_ERROR


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--k", "2"])
    assert exc.value.code == EXIT_ERROR


def test_oracle_command(capsys):
    assert main(["oracle", "--generate", BLOBS, "--k", "2", "--u", "3"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["labels"]) == 6
    assert max(document["labels"].count(c) for c in (0, 1)) <= 3


def test_check_command(capsys):
    code = main(["check", "--generate", BLOBS, "--k", "2", "--u", "3", "--samples", "20"])
    assert code == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_bench_command(tmp_path):
    out = tmp_path / "bench.csv"
    code = main(["bench", "--sizes", "6", "--ks", "2", "--us", "3", "--seeds", "2",
                 "--output", str(out)])
    assert code == EXIT_OK
    table = pd.read_csv(out)
    assert list(table["generator"]) == ["blobs", "blobs", "uniform", "uniform"]
    assert (table["ratio"] <= 69.36).all()
    assert (table["ratio"] >= 1 - 1e-9).all()


def test_config_file_and_flags(tmp_path, capsys):
    (tmp_path / "run.yaml").write_text("hckm:\n  seed: 12\n  lloyd_rounds: 3\n")
    args = ["solve", "--generate", BLOBS, "--k", "2", "--u", "3", "--config", "run.yaml"]
    assert main(args) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["subroutine_stats"]["seed"] == 12
    assert main(args + ["--seed", "1"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["subroutine_stats"]["seed"] == 1


def test_parser_lists_every_flag(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["solve", "--help"])
    help_text = capsys.readouterr().out
    for flag in ("--input", "--format", "--generate", "--k", "--u", "--epsilon", "--seed",
                 "--overseed-factor", "--lloyd-rounds", "--workers", "--no-prune", "--output",
                 "--config", "--log-level", "--subroutine", "--certify"):
        assert flag in help_text


def test_solve_certify_flag(capsys):
    assert main(["solve", "--generate", BLOBS, "--k", "2", "--u", "3", "--certify"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["oracle_opt"] is not None
    assert document["certified_ratio"] <= 69.36
    assert document["config"]["certify"] is True


def test_interrupt_cancels_instead_of_raising():
    before = signal.getsignal(signal.SIGINT)
    with cancel_on_interrupt() as cancel:
        assert not cancel.is_set()
        signal.raise_signal(signal.SIGINT)
        assert cancel.is_set()
        with pytest.raises(KeyboardInterrupt):
            signal.raise_signal(signal.SIGINT)
    assert signal.getsignal(signal.SIGINT) is before
