import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from phraselette.cli import main

POEM = "so much depends upon a red wheel barrow glazed with rain water"


@pytest.fixture
def runner():
    return CliRunner()


def run_args(fixture, extra=()):
    return [
        "run",
        "--text", POEM,
        "--inlet", "40:51",
        "--well", "thesaurus:a precise scientific thesaurus, over the top, perhaps latin",
        "--backend", "mock",
        "--fixture", str(fixture),
        "--seed", "7",
        *extra,
    ]


class TestRun:
    def test_json_pool(self, runner, mock_fixture_file):
        result = runner.invoke(main, run_args(mock_fixture_file,
                                              ["--constraint", "words:1-4"]))
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        texts = [r["text"] for r in payload["rephrasings"]]
        assert "venusta amplitudo" in texts
        assert payload["jobId"] == "cli-run"

    def test_text_file_source(self, runner, mock_fixture_file, tmp_path):
        poem = tmp_path / "poem.txt"
        poem.write_text(POEM)
        result = runner.invoke(main, [
            "run", "--text", str(poem), "--inlet", "40:51",
            "--well", "context", "--param", "context:max_tokens=3",
            "--backend", "mock", "--fixture", str(mock_fixture_file), "--seed", "7",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["document"]["text"] == POEM
        assert any(r["wellId"] == "context-1" for r in payload["rephrasings"])

    def test_pos_constraint_parsing(self, runner, mock_fixture_file):
        result = runner.invoke(main, run_args(
            mock_fixture_file, ["--constraint", "pos:VERB ADV:exact"]))
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        entry = payload["rephrasings"][0]
        assert len(entry["constraintScores"]) == 1

    def test_bad_inlet_range_exits_2(self, runner, mock_fixture_file):
        result = runner.invoke(main, [
            "run", "--text", POEM, "--inlet", "21:10",
            "--backend", "mock", "--fixture", str(mock_fixture_file),
        ])
        assert result.exit_code == 2

    def test_bad_constraint_exits_2(self, runner, mock_fixture_file):
        result = runner.invoke(main, run_args(mock_fixture_file,
                                              ["--constraint", "vibes:1-4"]))
        assert result.exit_code == 2

    def test_mock_without_fixture_exits_2(self, runner):
        result = runner.invoke(main, [
            "run", "--text", POEM, "--inlet", "40:51", "--backend", "mock",
        ])
        assert result.exit_code == 2

    def test_remote_without_urls_exits_3(self, runner, monkeypatch):
        for var in ("PHRASELETTE_LOGIT_URL", "PHRASELETTE_INSTRUCT_URL",
                    "PHRASELETTE_API_KEY"):
            monkeypatch.delenv(var, raising=False)
        result = runner.invoke(main, [
            "run", "--text", POEM, "--inlet", "40:51", "--backend", "remote",
        ])
        assert result.exit_code == 3

    def test_determinism_two_invocations(self, runner, mock_fixture_file):
        args = run_args(mock_fixture_file, ["--constraint", "words:1-2"])
        one = runner.invoke(main, args).output
        two = runner.invoke(main, args).output
        assert one == two

    def test_table_format(self, runner, mock_fixture_file):
        result = runner.invoke(main, run_args(mock_fixture_file, ["--format", "table"]))
        assert result.exit_code == 0
        assert "REPHRASING" in result.output
        assert "venusta amplitudo" in result.output


class TestReport:
    def test_writes_csv_and_figures(self, runner, mock_fixture_file, tmp_path):
        out = tmp_path / "report"
        result = runner.invoke(main, [
            "report", "--text", POEM, "--inlet", "40:51",
            "--well", "thesaurus:a precise scientific thesaurus, over the top, perhaps latin",
            "--well", "context", "--param", "context:max_tokens=3",
            "--constraint", "words:1-4",
            "--backend", "mock", "--fixture", str(mock_fixture_file),
            "--seed", "7", "--out-dir", str(out),
        ])
        assert result.exit_code == 0, result.output
        assert (out / "rephrasings.csv").exists()
        assert (out / "histogram.png").exists()
        assert (out / "scores.png").exists()
        header = (out / "rephrasings.csv").read_text().splitlines()[0]
        assert header.startswith("text,wellId,provenance,overallScore")

    def test_csv_rows_match_pool(self, runner, mock_fixture_file, tmp_path):
        out = tmp_path / "r2"
        result = runner.invoke(main, [
            "report", "--text", POEM, "--inlet", "40:51",
            "--well", "thesaurus:a precise scientific thesaurus, over the top, perhaps latin",
            "--backend", "mock", "--fixture", str(mock_fixture_file),
            "--seed", "7", "--out-dir", str(out),
        ])
        assert result.exit_code == 0, result.output
        rows = (out / "rephrasings.csv").read_text().splitlines()
        assert len(rows) - 1 == 5  # canned thesaurus items


class TestPresets:
    def test_lists_all(self, runner):
        result = runner.invoke(main, ["presets"])
        payload = json.loads(result.output)
        assert set(payload) == {"thesaurus", "reader", "dictionary"}

    def test_kind_filter(self, runner):
        result = runner.invoke(main, ["presets", "reader"])
        assert "Tristan Tzara, the Dadaist poet" in result.output

    def test_unknown_kind(self, runner):
        assert runner.invoke(main, ["presets", "nope"]).exit_code == 2
