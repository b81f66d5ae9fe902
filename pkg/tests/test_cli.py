# Copyright 2025 Vijaykumar Singh <singhvjd@gmail.com>
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Tests for the proofgraph command line."""

from __future__ import annotations

import csv
import io
import json

import pytest

from proofgraph.cli import build_parser, main, write_atomic
from proofgraph.config import CONFIG_ENV_VAR
from proofgraph.discovery.corpus import Corpus, seed_corpus
from proofgraph.errors import EXIT_BUDGET, EXIT_OK, EXIT_USAGE


def _tower(n: int) -> str:
    text = "zero"
    for _ in range(n):
        text = f"(succ {text})"
    return text


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


@pytest.fixture
def seed_file(tmp_path):
    path = tmp_path / "seed.json"
    path.write_bytes(seed_corpus().dumps())
    return path


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    """Tests for the eval command."""

    def test_addition(self, capsys, tmp_path):
        """add 2 2 normalizes to four."""
        code, out, _ = _run(capsys, "eval", "(add 2 2)", "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert out.splitlines()[0] == _tower(4)

    def test_normal_form_takes_no_steps(self, capsys, tmp_path):
        """zero is already normal."""
        code, out, _ = _run(capsys, "eval", "zero", "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert out.splitlines() == ["zero", "steps: 0"]

    def test_double(self, capsys, tmp_path):
        """double 5 is ten."""
        _, out, _ = _run(capsys, "eval", "(double 5)", "--out-dir", str(tmp_path))
        assert out.splitlines()[0] == _tower(10)

    def test_parse_error(self, capsys, tmp_path):
        """Unbalanced input is a usage error."""
        code, _, err = _run(capsys, "eval", "(add 2", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE
        assert "error" in err

    def test_fuel_exhausted(self, capsys, tmp_path):
        """One step of fuel is not enough for add 2 2."""
        code, _, _ = _run(capsys, "eval", "--fuel", "1", "(add 2 2)", "--out-dir", str(tmp_path))
        assert code == EXIT_BUDGET

    @pytest.mark.parametrize(
        "term, value", [("400", 400), ("(add 300 300)", 600), ("(double 400)", 800)]
    )
    def test_large_numerals(self, capsys, tmp_path, term, value):
        """Long successor towers evaluate and print."""
        code, out, _ = _run(capsys, "eval", term, "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert out.splitlines()[0] == _tower(value)

    def test_oversized_literal(self, capsys, tmp_path):
        """A numeral literal past the limit is a parse error, not a runaway tower."""
        code, _, err = _run(capsys, "eval", "99999999999999999999", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE
        assert "position 0" in err

    @pytest.mark.parametrize("term", ["(add 2 2 2)", "(fst 3)", "(succ (lam x x))", "#3"])
    def test_ill_typed_terms_rejected(self, capsys, tmp_path, term):
        """Only well-typed closed terms are evaluated."""
        code, out, err = _run(capsys, "eval", term, "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE
        assert out == ""
        assert "type error" in err


class TestTypecheck:
    """Tests for the typecheck command."""

    def test_infer(self, capsys, tmp_path):
        """zero has type Nat."""
        code, out, _ = _run(capsys, "typecheck", "zero", "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert out.strip() == "Nat"

    def test_check(self, capsys, tmp_path):
        """Checking against the right type prints ok."""
        code, out, _ = _run(
            capsys, "typecheck", "zero", "--type", "Nat", "--out-dir", str(tmp_path)
        )
        assert code == EXIT_OK
        assert out.strip() == "ok"

    def test_mismatch(self, capsys, tmp_path):
        """A wrong expected type is reported on stderr."""
        code, _, err = _run(
            capsys, "typecheck", "zero", "--type", "Sort", "--out-dir", str(tmp_path)
        )
        assert code == EXIT_USAGE
        assert "type error" in err


class TestGrowth:
    """Tests for the growth command."""

    def test_layers(self, capsys, tmp_path):
        """Two atoms grow as 2, 4, 16, 256."""
        code, out, _ = _run(capsys, "growth", "2", "3", "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert out.strip() == "2,4,16,256"
        rows = list(csv.reader(io.StringIO((tmp_path / "growth.csv").read_text())))
        assert rows[0] == ["layer", "count"]
        assert rows[-1] == ["3", "256"]

    def test_guard(self, capsys, tmp_path):
        """More than four layers needs --override."""
        code, _, _ = _run(capsys, "growth", "2", "5", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE


class TestCorpusCommands:
    """Tests for commands that read a corpus."""

    def test_metrics_empty_corpus(self, capsys, tmp_path):
        """An empty corpus gives a header-only CSV."""
        empty = tmp_path / "empty.json"
        empty.write_bytes(Corpus().dumps())
        out_dir = tmp_path / "out"
        code, out, _ = _run(
            capsys, "metrics", "--corpus", str(empty), "--out-dir", str(out_dir)
        )
        assert code == EXIT_OK
        assert out.strip() == "0 nodes"
        lines = (out_dir / "nodes.csv").read_text().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("node,kind,depth")

    @pytest.mark.integration
    def test_metrics_seed_corpus(self, capsys, tmp_path, seed_file):
        """One row per node of the loaded corpus."""
        out_dir = tmp_path / "out"
        code, _, _ = _run(
            capsys,
            "metrics",
            "--corpus",
            str(seed_file),
            "--preset",
            "quick",
            "--out-dir",
            str(out_dir),
        )
        assert code == EXIT_OK
        expected = len(Corpus.loads(seed_file.read_bytes(), fuel=2500).graph)
        lines = (out_dir / "nodes.csv").read_text().splitlines()
        assert len(lines) == expected + 1

    @pytest.mark.integration
    def test_mine_seed_corpus(self, capsys, tmp_path, seed_file):
        """One printed line per mined abstraction, best first."""
        out_dir = tmp_path / "out"
        code, out, _ = _run(
            capsys, "mine", "--corpus", str(seed_file), "--out-dir", str(out_dir)
        )
        assert code == EXIT_OK
        found = json.loads((out_dir / "abstractions.json").read_text())
        assert len(out.splitlines()) == len(found)
        utilities = [entry["utility"] for entry in found]
        assert utilities == sorted(utilities, reverse=True)

    @pytest.mark.integration
    def test_compress_seed_corpus(self, capsys, tmp_path, seed_file):
        """One cost per adopted abstraction plus the starting cost; the corpus reloads."""
        out_dir = tmp_path / "out"
        code, out, _ = _run(
            capsys,
            "compress",
            "--rounds",
            "2",
            "--corpus",
            str(seed_file),
            "--out-dir",
            str(out_dir),
        )
        assert code == EXIT_OK
        assert out.startswith("adopted ")
        data = json.loads((out_dir / "compression.json").read_text())
        assert len(data["costs"]) == len(data["adopted"]) + 1
        assert len(data["branching"]) == len(data["costs"])
        reloaded = Corpus.loads((out_dir / "corpus.json").read_bytes())
        assert len(reloaded.definitions) >= len(Corpus.loads(seed_file.read_bytes()).definitions)

    def test_missing_corpus(self, capsys, tmp_path):
        """A corpus path that does not exist is a usage error."""
        code, _, err = _run(
            capsys, "metrics", "--corpus", str(tmp_path / "absent.json"), "--out-dir", str(tmp_path)
        )
        assert code == EXIT_USAGE
        assert "cannot read" in err

    def test_export_json(self, capsys, tmp_path, seed_file):
        """JSON export reloads to the same corpus document."""
        target = tmp_path / "copy.json"
        code, _, _ = _run(
            capsys,
            "export",
            "--corpus",
            str(seed_file),
            "--output",
            str(target),
            "--out-dir",
            str(tmp_path),
        )
        assert code == EXIT_OK
        original = Corpus.loads(seed_file.read_bytes())
        assert Corpus.loads(target.read_bytes()).to_dict() == original.to_dict()

    def test_export_dot(self, capsys, tmp_path, seed_file):
        """DOT export lands in the output directory by default."""
        code, out, _ = _run(
            capsys,
            "export",
            "--format",
            "dot",
            "--corpus",
            str(seed_file),
            "--out-dir",
            str(tmp_path),
        )
        assert code == EXIT_OK
        written = tmp_path / "corpus.dot"
        assert out.strip() == str(written)
        assert written.read_text().startswith("digraph proofgraph {")


class TestDiscoverAndReport:
    """Tests for discover and report."""

    @pytest.mark.integration
    def test_discover_is_deterministic(self, capsys, tmp_path):
        """Two one-step runs with the same seed write the same log and corpus."""
        outputs = []
        out_dir = tmp_path / "run"
        for _ in range(2):
            code, _, _ = _run(
                capsys,
                "discover",
                "--steps",
                "1",
                "--preset",
                "quick",
                "--out-dir",
                str(out_dir),
            )
            assert code == EXIT_OK
            outputs.append(
                ((out_dir / "run.jsonl").read_text(), (out_dir / "corpus.json").read_text())
            )
        assert outputs[0] == outputs[1]
        summary = json.loads((out_dir / "summary.json").read_text())
        assert summary["steps"] == 1
        assert (out_dir / "run.cfg").exists()

    @pytest.mark.integration
    def test_report_on_discovered_run(self, capsys, tmp_path):
        """report reads a log and corpus and writes both criteria files."""
        run_dir = tmp_path / "run"
        _run(capsys, "discover", "--steps", "1", "--preset", "quick", "--out-dir", str(run_dir))
        report_dir = tmp_path / "report"
        code, out, _ = _run(
            capsys,
            "report",
            str(run_dir / "run.jsonl"),
            "--corpus",
            str(run_dir / "corpus.json"),
            "--out-dir",
            str(report_dir),
        )
        assert code == EXIT_OK
        assert out.startswith("C1")
        data = json.loads((report_dir / "criteria.json").read_text())
        assert len(data["criteria"]) == 10
        assert (report_dir / "criteria.txt").read_text() == out

    @pytest.mark.integration
    @pytest.mark.parametrize("keep_corpus", [True, False])
    def test_report_finds_corpus_without_flag(self, capsys, tmp_path, keep_corpus):
        """Without --corpus, proofs replay from corpus.json beside the log or a rerun."""
        run_dir = tmp_path / "run"
        _run(capsys, "discover", "--steps", "3", "--preset", "quick", "--out-dir", str(run_dir))
        if not keep_corpus:
            (run_dir / "corpus.json").unlink()
        report_dir = tmp_path / "report"
        code, _, _ = _run(
            capsys, "report", str(run_dir / "run.jsonl"), "--out-dir", str(report_dir)
        )
        assert code == EXIT_OK
        data = json.loads((report_dir / "criteria.json").read_text())
        verdicts = {c["code"]: c["verdict"] for c in data["criteria"]}
        assert verdicts["C2"] == "satisfied"

    def test_report_unreplayable_log(self, capsys, tmp_path):
        """A log that no seeded run reproduces leaves proofs unreplayed."""
        log = tmp_path / "run.jsonl"
        log.write_text(
            '{"action":"proved","nodeIds":["a","b"],"phase":"prove","seedState":null,'
            '"stats":{},"t":1}\n'
        )
        code, _, _ = _run(capsys, "report", str(log), "--out-dir", str(tmp_path / "out"))
        assert code == EXIT_OK
        data = json.loads((tmp_path / "out" / "criteria.json").read_text())
        verdicts = {c["code"]: c["verdict"] for c in data["criteria"]}
        assert verdicts["C2"] == "partial"

    def test_report_malformed_log(self, capsys, tmp_path):
        """A broken log is a usage error."""
        log = tmp_path / "bad.jsonl"
        log.write_text("not json\n")
        code, _, _ = _run(capsys, "report", str(log), "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE


class TestConfiguration:
    """Tests for configuration handling on the command line."""

    def test_missing_config_file(self, capsys, tmp_path):
        """A --config path that does not exist is a usage error."""
        code, _, _ = _run(
            capsys,
            "eval",
            "zero",
            "--config",
            str(tmp_path / "nope.cfg"),
            "--out-dir",
            str(tmp_path),
        )
        assert code == EXIT_USAGE

    def test_bad_config_from_environment(self, capsys, tmp_path, monkeypatch):
        """The environment variable is honoured, and a bad file rejected."""
        bad = tmp_path / "bad.cfg"
        bad.write_text("bogus=1\n")
        monkeypatch.setenv(CONFIG_ENV_VAR, str(bad))
        code, _, _ = _run(capsys, "eval", "zero", "--out-dir", str(tmp_path))
        assert code == EXIT_USAGE

    def test_subcommand_required(self):
        """Running without a command is an argparse error."""
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_preset(self):
        """Only the known presets are accepted."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["eval", "zero", "--preset", "extreme"])


class TestWriteAtomic:
    """Tests for atomic artifact writes."""

    def test_creates_parents_and_leaves_no_temp(self, tmp_path):
        """Parents are created and only the target remains."""
        target = tmp_path / "a" / "b" / "file.txt"
        write_atomic(target, "hello\n")
        assert target.read_text() == "hello\n"
        assert [p.name for p in target.parent.iterdir()] == ["file.txt"]

    def test_replaces_existing(self, tmp_path):
        """An existing file is replaced whole."""
        target = tmp_path / "file.bin"
        target.write_bytes(b"old contents")
        write_atomic(target, b"new")
        assert target.read_bytes() == b"new"
