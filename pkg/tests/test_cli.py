import json

import pytest

from cyclofactor import cli


def _run(capsys, *argv):
    code = cli.run(cli.build_parser().parse_args(["run", *argv]))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_both_modes_agree(capsys):
    code, out, _ = _run(capsys, "--n", "73", "--q", "2")
    assert code == cli.EXIT_OK
    assert "case: ORDER_W2_A  method: closed_form" in out
    assert "oracle_agrees=True" in out
    assert "factors (9):" in out


def test_run_json_payload(capsys):
    code, out, _ = _run(capsys, "--n", "40", "--q", "3", "--format", "json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["n"] == 40
    assert payload["q"] == 3
    assert payload["p"] == 3 and payload["s"] == 1
    assert payload["case"] == "ORDER_4"
    assert payload["num_factors"] == 13
    assert payload["fallback"] is False
    assert payload["checks"]["oracle_agrees"] is True
    assert len(payload["factors"]) == 13
    assert sum(f["degree"] for f in payload["factors"]) == 40
    # Coefficients are prime-level integer lists, constant term first.
    linear = payload["factors"][0]
    assert linear["degree"] == 1
    assert all(isinstance(c, list) for c in linear["coeffs"])
    assert "timing" not in payload


def test_run_unsupported_falls_back_to_oracle(capsys):
    code, out, _ = _run(capsys, "--n", "7", "--q", "2", "--mode", "closed")
    assert code == cli.EXIT_OK
    assert "case: UNSUPPORTED(3)" in out
    assert "oracle fallback" in out
    assert "1 + x^2 + x^3" in out and "1 + x + x^3" in out


def test_run_rejects_bad_inputs(capsys):
    code, _, err = _run(capsys, "--n", "6", "--q", "3")
    assert code == cli.EXIT_USAGE
    assert "share the prime 3" in err
    code, _, err = _run(capsys, "--n", "5", "--q", "12")
    assert code == cli.EXIT_USAGE
    code, _, err = _run(capsys, "--n", "0", "--q", "3")
    assert code == cli.EXIT_USAGE


def test_run_budget_exhaustion_is_resource_error(capsys):
    code, _, err = _run(capsys, "--n", "151", "--q", "2", "--budget", "8")
    assert code == cli.EXIT_USAGE
    assert "resource error" in err


def test_usage_error_exit_code_is_one():
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--n", "5"])
    assert exc.value.code == cli.EXIT_USAGE


def test_run_writes_report_and_figure(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, _, _ = _run(
        capsys, "--n", "40", "--q", "3", "--format", "json", "--out", str(out_file)
    )
    assert code == cli.EXIT_OK
    payload = json.loads(out_file.read_text())
    assert payload["num_factors"] == 13
    figure = tmp_path / "report_degrees.png"
    assert figure.exists() and figure.stat().st_size > 0


def test_run_json_is_byte_identical_across_runs(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _, _ = _run(
            capsys,
            "--n", "73", "--q", "2", "--format", "json", "--out", str(path),
        )
        assert code == cli.EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def _sweep(capsys, *argv):
    code = cli.sweep(cli.build_parser().parse_args(["sweep", *argv]))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sweep_csv(capsys):
    code, out, _ = _sweep(capsys, "--n-max", "10", "--q-list", "2,3")
    assert code == cli.EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0] == "n,q,case,closed_count,oracle_count,agree"
    rows = dict()
    for line in lines[1:]:
        n, q, case, closed, orc, agree = line.split(",")
        rows[(int(n), int(q))] = (case, closed, orc, agree)
    assert (6, 2) not in rows
    assert (3, 3) not in rows
    assert rows[(1, 2)][3] == "true"
    assert rows[(7, 2)] == ("UNSUPPORTED(3)", "", "3", "skipped")
    assert rows[(8, 3)] == ("ORDER_1_B", "5", "5", "true")
    assert all(v[3] in ("true", "skipped") for v in rows.values())


def test_sweep_json_and_figure(tmp_path, capsys):
    out_file = tmp_path / "sweep.json"
    code, _, _ = _sweep(
        capsys,
        "--n-max", "8", "--q-list", "2", "--format", "json", "--out", str(out_file),
    )
    assert code == cli.EXIT_OK
    rows = json.loads(out_file.read_text())
    assert all(set(row) == {"n", "q", "case", "closed_count", "oracle_count", "agree"}
               for row in rows)
    assert (tmp_path / "sweep_counts.png").exists()


def test_sweep_rejects_bad_inputs(capsys):
    code, _, _ = _sweep(capsys, "--n-max", "0", "--q-list", "2")
    assert code == cli.EXIT_USAGE
    code, _, _ = _sweep(capsys, "--n-max", "5", "--q-list", "6")
    assert code == cli.EXIT_USAGE
