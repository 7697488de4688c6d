import argparse
import json

import numpy as np
import pytest

from bounds import bound_set
from harness.commands import COMMANDS, exit_code
from harness.commands.verify_lemmas import parse_p_grid, parse_sizes
from harness.run import cli_dispatch
from utils.matrix_io import read_matrix, read_vector, write_matrix, write_vector


def _json_tail(text: str):
    """Parse the JSON document that ends a command's stdout."""
    lines = text.splitlines()
    start = next(i for i, line in enumerate(lines) if line.startswith("{"))
    return json.loads("\n".join(lines[start:]))


def test_registry_has_every_command():
    assert set(COMMANDS) == {"bounds", "ric", "recover", "gen", "verify-lemmas", "montecarlo"}


def test_exit_code_precedence():
    assert exit_code({"progress", "done"}) == 0
    assert exit_code({"violation"}) == 2
    assert exit_code({"violation", "error"}) == 1


def test_help_lists_commands(capsys):
    assert cli_dispatch(["--help"]) == 0
    out = capsys.readouterr().out
    for name in COMMANDS:
        assert name in out


def test_usage_errors(capsys):
    assert cli_dispatch(["frobnicate"]) == 1
    assert cli_dispatch(["bounds", "--p", "0.4"]) == 1
    assert cli_dispatch([]) == 1


def test_bounds_json(capsys):
    assert cli_dispatch(["bounds", "--p", "0.4", "--delta", "0.8"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == json.loads(json.dumps(bound_set(0.4, 0.8).to_dict(json_safe=True)))


def test_bounds_table(capsys):
    assert cli_dispatch(["bounds", "--p", "0.9", "--delta", "0.95", "--table"]) == 0
    out = capsys.readouterr().out
    assert "C(p)" in out
    assert "n/a" in out


def test_bounds_domain_error(capsys):
    assert cli_dispatch(["bounds", "--p", "1.5", "--delta", "0.8"]) == 1
    assert capsys.readouterr().err.startswith("Error:")


def test_gen_recover_ric_pipeline(capsys, isolated_env):
    out_dir = isolated_env / "instance"
    assert cli_dispatch(["gen", "--m", "6", "--n", "10", "--k", "1", "--seed", "7",
                         "--out-dir", str(out_dir)]) == 0
    assert f"Instance written to {out_dir}" in capsys.readouterr().out
    A = read_matrix(out_dir / "A.csv")
    assert A.shape == (6, 10)

    x_hat_path = isolated_env / "x_hat.csv"
    assert cli_dispatch(["recover", "--matrix", str(out_dir / "A.csv"), "--y", str(out_dir / "y.csv"),
                         "--p", "0.5", "--k", "1", "--x-ref", str(out_dir / "x.csv"),
                         "--out", str(x_hat_path)]) == 0
    result = _json_tail(capsys.readouterr().out)
    assert result["feasible"] is True
    assert result["converged"] in (True, False)
    assert result["objective_dominates_reference"] in (True, False)
    assert "x_hat" not in result
    assert result["x_hat_file"] == str(x_hat_path)
    assert read_vector(x_hat_path).shape == (10,)

    assert cli_dispatch(["ric", "--matrix", str(out_dir / "A.csv"), "--k", "2"]) == 0
    estimate = _json_tail(capsys.readouterr().out)
    assert estimate["kind"] == "exact"
    assert 0.0 < estimate["delta"] < 1.0
    assert len(estimate["argmax_subset"]) == 2


def test_recover_prints_x_hat_inline(capsys, isolated_env):
    rng = np.random.default_rng(5)
    A = np.linalg.qr(rng.standard_normal((5, 5)))[0]
    write_matrix(isolated_env / "A.csv", A)
    write_vector(isolated_env / "y.csv", A[:, 2] * 1.5)
    assert cli_dispatch(["recover", "--matrix", str(isolated_env / "A.csv"),
                         "--y", str(isolated_env / "y.csv"), "--p", "0.5", "--epsilon", "0.01"]) == 0
    result = _json_tail(capsys.readouterr().out)
    assert len(result["x_hat"]) == 5
    assert result["lambda_used"] > 0.0
    assert result["objective_dominates_reference"] is None


def test_ric_sampled_and_normalize(capsys, isolated_env):
    path = isolated_env / "A.csv"
    write_matrix(path, 3.0 * np.random.default_rng(0).standard_normal((5, 8)))
    assert cli_dispatch(["ric", "--matrix", str(path), "--k", "2", "--mode", "sampled",
                         "--trials", "40", "--seed", "1", "--normalize"]) == 0
    estimate = _json_tail(capsys.readouterr().out)
    assert estimate["kind"] == "sampled_lower_bound"
    assert estimate["delta"] < 1.0


def test_ric_cap_is_an_error(capsys, isolated_env):
    path = isolated_env / "A.csv"
    write_matrix(path, np.random.default_rng(1).standard_normal((6, 12)))
    assert cli_dispatch(["ric", "--matrix", str(path), "--k", "4", "--cap", "10"]) == 1
    assert "--mode sampled" in capsys.readouterr().err


def test_recover_rejects_mismatched_files(capsys, isolated_env):
    write_matrix(isolated_env / "A.csv", np.eye(3))
    write_vector(isolated_env / "y.csv", np.ones(4))
    assert cli_dispatch(["recover", "--matrix", str(isolated_env / "A.csv"),
                         "--y", str(isolated_env / "y.csv"), "--p", "0.5"]) == 1


def test_recover_missing_file(capsys, isolated_env):
    assert cli_dispatch(["recover", "--matrix", str(isolated_env / "none.csv"),
                         "--y", str(isolated_env / "none.csv"), "--p", "0.5"]) == 1


def test_verify_lemmas_small(capsys):
    assert cli_dispatch(["verify-lemmas", "--trials", "20", "--sizes", "none", "--json"]) == 0
    results = _json_tail(capsys.readouterr().out)
    assert all(stats["violations"] == 0 for stats in results.values())
    assert results["shift"]["trials"] == 20


def test_verify_lemmas_argument_parsers():
    assert parse_p_grid("0.1, 0.5") == (0.1, 0.5)
    assert parse_sizes("8,12,2;6,8,2") == ((8, 12, 2), (6, 8, 2))
    assert parse_sizes("none") == ()
    with pytest.raises(argparse.ArgumentTypeError):
        parse_p_grid("0,0.5")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_sizes("8,12")


def test_montecarlo_with_report(capsys, isolated_env):
    report = isolated_env / "out" / "trials.jsonl"
    code = cli_dispatch(["montecarlo", "--m", "6", "--n", "10", "--k", "1", "--trials", "4",
                         "--seed", "2", "--report", str(report), "--format", "jsonl", "--quiet"])
    assert code == 0
    out = capsys.readouterr().out
    assert "Monte-Carlo: m=6 n=10 k=1" in out
    assert f"Report written to {report}" in out
    assert len(report.read_text().splitlines()) == 4


def test_montecarlo_config_file_and_default_report(capsys, isolated_env):
    cfg = isolated_env / "exp.cfg"
    cfg.write_text("M=6\nN=10\nK=1\nTRIALS=50\nSEED=4\n", encoding="utf-8")
    assert cli_dispatch(["montecarlo", "--config", str(cfg), "--trials", "3", "--quiet"]) == 0
    report = isolated_env / "reports" / "montecarlo_m6_n10_k1_seed4.csv"
    assert report.is_file()
    assert len(report.read_text().splitlines()) == 4


def test_montecarlo_missing_sizes(capsys, isolated_env):
    assert cli_dispatch(["montecarlo", "--n", "10", "--k", "2", "--quiet"]) == 1
    assert "M" in capsys.readouterr().err
