#!/usr/bin/env python3
"""
End-to-end runs of the lyu command: golden tables, checks and exit codes.
"""

import io
import json
from pathlib import Path

import pandas as pd
import pytest

from lyu import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from lyutab.utils.parse import parse_table
from pipeline import LyubeznikPipeline, PipelineConfig
from lyutab.combinatorics import corpus

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, capsys.readouterr().out


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["lyubeznik", "rp2.json", "--char", "0"], "rp2_lyubeznik_char0.json"),
        (["lyubeznik", "rp2.json", "--char", "2"], "rp2_lyubeznik_char2.json"),
        (["nu", "rp2.json", "--char", "2"], "rp2_nu_char2.json"),
        (["lyubeznik", "rp2_cap_x7.json"], "rp2_cap_x7_lyubeznik.json"),
        (["lyubeznik", "rp2_cap_two_primes.json", "--char", "0"], "rp2_cap_two_primes_lyubeznik_char0.json"),
        (["lyubeznik", "rp2_cap_two_primes.json", "--char", "2"], "rp2_cap_two_primes_lyubeznik_char2.json"),
        (["lyubeznik", "five_variable.txt"], "five_variable_lyubeznik.json"),
        (["lyubeznik", "figure_one.txt"], "figure_one_lyubeznik.json"),
    ],
)
def test_golden_tables(capsys, argv, golden):
    command, source, *rest = argv
    code, out = run_json(capsys, command, str(FIXTURES / source), *rest)
    assert code == EXIT_OK
    expected = parse_table((GOLDEN / golden).read_text(encoding="utf-8"))
    assert parse_table(out) == expected


def test_facet_input_gives_the_same_table(capsys):
    _, from_facets = run_json(capsys, "lyubeznik", str(FIXTURES / "rp2_complex.txt"), "--char", "2")
    _, from_ideal = run_json(capsys, "lyubeznik", str(FIXTURES / "rp2.json"), "--char", "2")
    assert parse_table(from_facets) == parse_table(from_ideal)


def test_text_output(capsys):
    assert main(["betti", str(FIXTURES / "principal.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "total:" in out


@pytest.mark.parametrize("oracle", ["hochster", "koszul"])
def test_oracles_pass_their_check(capsys, oracle):
    code, out = run_json(capsys, "betti", str(FIXTURES / "rp2.json"), "--char", "2", "--oracle", oracle, "--check")
    assert code == EXIT_OK
    combined = json.loads(out)
    assert combined["checks"][0]["passed"] is True
    assert parse_table(json.dumps(combined["table"])).graded[(3, 6)] == 1


def test_checks_on_a_nontrivial_table(capsys):
    code, out = run_json(capsys, "lyubeznik", str(FIXTURES / "figure_one.txt"), "--check")
    assert code == EXIT_OK
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert names == ["lambda-invariants", "lambda-consecutiveness", "lambda-0,1-topological"]


def test_nu_checks_in_text(capsys):
    assert main(["nu", str(FIXTURES / "rp2.json"), "--char", "2", "--check"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[ok] nu-invariants" in out


def test_checks_follow_the_csv_table(capsys):
    assert main(["lyubeznik", str(FIXTURES / "figure_one.txt"), "--check", "--format", "csv"]) == EXIT_OK
    table, checks = capsys.readouterr().out.strip().split("\n\n")
    assert table.splitlines()[0].startswith("p,")
    assert checks.splitlines()[0] == "name,passed,violations"
    frame = pd.read_csv(io.StringIO(checks))
    assert frame["name"].tolist() == ["lambda-invariants", "lambda-consecutiveness", "lambda-0,1-topological"]
    assert frame["passed"].all()


def test_verify_report_as_csv(capsys):
    assert main(["verify", "paper-examples", "--format", "csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "field,value"
    assert "corpus,paper-examples" in out


def test_subdivision_flag(capsys):
    _, plain = run_json(capsys, "lyubeznik", '{"n": 4, "facets": [[1, 2], [3, 4]]}', "--char", "2")
    _, subdivided = run_json(capsys, "lyubeznik", '{"n": 4, "facets": [[1, 2], [3, 4]]}', "--char", "2", "--subdivide", "1")
    assert parse_table(plain) == parse_table(subdivided)


def test_randomized_rank_needs_a_seed(capsys):
    assert main(["nu", str(FIXTURES / "rp2.json"), "--rank-mode", "randomized"]) == EXIT_USAGE
    code, out = run_json(capsys, "nu", str(FIXTURES / "rp2.json"), "--char", "2", "--rank-mode", "randomized", "--seed", "17")
    assert code == EXIT_OK
    table = parse_table(out)
    assert table.metadata["seed"] == 17
    assert table.cleaned() == {(0, 3): 1, (1, 4): 1, (2, 6): 1}


def test_usage_errors():
    assert main(["lyubeznik", str(FIXTURES / "rp2.json"), "--char", "4"]) == EXIT_USAGE
    assert main(["lyubeznik", "missing.txt"]) == EXIT_USAGE
    assert main(["lyubeznik", '{"n": 2, "gens": []}']) == EXIT_USAGE
    assert main(["verify", "everything"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["transpose", "x"])
    assert exc.value.code == EXIT_USAGE


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("LYU_BUDGET", "4")
    assert main(["betti", str(FIXTURES / "rp2.json")]) == EXIT_BUDGET
    monkeypatch.setenv("LYU_BUDGET", "taylor=lots")
    assert main(["betti", str(FIXTURES / "rp2.json")]) == EXIT_USAGE


def test_verify_paper_examples(capsys):
    assert main(["verify", "paper-examples", "--char", "0", "--char", "2"]) == EXIT_OK
    assert "corpus: paper-examples" in capsys.readouterr().out


def test_injected_fault_fails_verify(capsys):
    code = main(["verify", "n3-exhaustive", "--inject-fault", "--format", "json"])
    assert code == EXIT_VIOLATION
    assert json.loads(capsys.readouterr().out)["violations"]


def test_pipeline_frame_carries_table_and_checks():
    pipeline = LyubeznikPipeline(PipelineConfig(char=2, check=True))
    df = pipeline.run("lyubeznik", corpus.rp2_ideal())
    assert df.shape == (4, 4)
    assert df.attrs["table"].lam(0, 2) == 1
    assert all(report.passed for report in df.attrs["checks"])
