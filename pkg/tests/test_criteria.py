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

"""Unit tests for the discovery criteria report."""

from __future__ import annotations

import pytest

from proofgraph.discovery.corpus import Event, format_log, seed_corpus
from proofgraph.discovery.criteria import CRITERIA, Verdict, criteria_report
from proofgraph.errors import MalformedLog


@pytest.fixture
def run():
    """Seed corpus plus a short hand-written log proving Q from P and P -> Q."""
    corpus = seed_corpus()
    t = corpus.kernel.terms
    p, q = t.atom("P"), t.atom("Q")
    p_implies_q = t.implies(p, q)
    ax_p = t.axiom("ax_P", p)
    proof = t.app(t.axiom("ax_PQ", p_implies_q), ax_p)
    events = [
        Event(0, "setup", "seed"),
        Event(1, "conjecture", "proposed", (q,), {"generators": ["reversal"], "parents": [[]]}),
        Event(1, "novelty", "novel", (q,), {"m": 4}),
        Event(1, "prove", "proved", (q, proof)),
        Event(1, "curate", "admitted", (q, proof), {"score": 2.0}),
    ]
    return corpus, events, {"q": q, "proof": proof, "ax_p": ax_p}


class TestCriteriaReport:
    """Tests for criteria_report."""

    def test_empty_log(self):
        """Nothing happened, so nothing is met."""
        report = criteria_report("")
        assert len(report.results) == len(CRITERIA)
        assert all(r.verdict is Verdict.UNMET for r in report.results)

    def test_short_run(self, run):
        """Replayed proofs and a proven conjecture; no definitions."""
        corpus, events, _ = run
        report = criteria_report(format_log(events), corpus)
        assert report.verdict("C2") is Verdict.SATISFIED
        assert report.verdict("C4") is Verdict.SATISFIED
        assert report.verdict("C5") is Verdict.UNMET
        assert report.verdict("C7") is Verdict.SATISFIED
        assert report.verdict("C9") is Verdict.PARTIAL
        assert report.verdict("C10") is Verdict.UNMET

    def test_without_corpus(self, run):
        """Proofs cannot be replayed without the corpus."""
        _, events, _ = run
        report = criteria_report(events)
        assert report.verdict("C2") is Verdict.PARTIAL
        assert report.verdict("C9") is Verdict.UNMET

    def test_tampered_proof(self, run):
        """A logged proof that does not check fails verification at its entry."""
        corpus, events, nodes = run
        bad = [
            Event(e.t, e.phase, e.action, (nodes["q"], nodes["ax_p"]), e.stats)
            if e.action in ("proved", "admitted")
            else e
            for e in events
        ]
        report = criteria_report(bad, corpus)
        result = next(r for r in report.results if r.code == "C2")
        assert result.verdict is Verdict.UNMET
        assert result.evidence == ("log:3",)

    def test_satisfied_needs_evidence(self, run):
        """Every satisfied criterion points at log entries."""
        corpus, events, _ = run
        for result in criteria_report(events, corpus).results:
            if result.verdict is Verdict.SATISFIED:
                assert result.evidence
                assert all(e.startswith("log:") for e in result.evidence)

    def test_selection_and_easy_rejection(self, run):
        """An easy rejection next to an admission satisfies selection and novelty."""
        corpus, events, nodes = run
        events.append(Event(2, "novelty", "easy", (nodes["q"],), {"m": 1}))
        events.append(Event(2, "curate", "rejected", (nodes["q"],), {"reason": "easy", "m": 1}))
        report = criteria_report(events, corpus)
        assert report.verdict("C3") is Verdict.SATISFIED
        assert report.verdict("C6") is Verdict.SATISFIED
        assert report.verdict("C7") is Verdict.SATISFIED

    def test_adopted_definition_and_reuse(self, run):
        """Adoptions count as definitions; conjectures built on gains close the loop."""
        corpus, events, nodes = run
        events.append(Event(2, "compress", "adopt", ("abs",), {"name": "abs_1", "utility": 3}))
        events.append(
            Event(
                3,
                "conjecture",
                "proposed",
                ("r",),
                {"generators": ["composition", "induction"], "parents": [[nodes["q"]]]},
            )
        )
        report = criteria_report(events, corpus)
        assert report.verdict("C5") is Verdict.SATISFIED
        assert report.verdict("C10") is Verdict.SATISFIED
        assert report.verdict("C1") is Verdict.SATISFIED

    def test_research_program_capped(self, run):
        """Changing tactic priorities is at most partial evidence."""
        corpus, events, _ = run
        events.append(Event(1, "learn", "priorities", (), {"order": ["known", "refl"]}))
        events.append(Event(2, "learn", "priorities", (), {"order": ["known", "mp"]}))
        report = criteria_report(events, corpus)
        assert report.verdict("C8") is Verdict.PARTIAL

    def test_render_text(self, run):
        """The text report lists every criterion."""
        corpus, events, _ = run
        text = criteria_report(events, corpus).render_text()
        for code in CRITERIA:
            assert f"{code} " in text
        assert text.endswith("\n")

    def test_to_dict(self, run):
        """The JSON report carries the verdict values."""
        corpus, events, _ = run
        data = criteria_report(events, corpus).to_dict()
        by_code = {entry["code"]: entry for entry in data["criteria"]}
        assert by_code["C2"]["verdict"] == "satisfied"
        assert by_code["C2"]["evidence"] == ["log:3", "log:4"]


class TestMalformedLogs:
    """Tests for rejected logs."""

    def test_time_goes_backwards(self):
        """Steps must not decrease."""
        events = [Event(2, "setup", "run"), Event(1, "curate", "summary")]
        with pytest.raises(MalformedLog):
            criteria_report(events)

    def test_non_string_node_id(self):
        """Node ids are strings."""
        line = '{"t": 0, "phase": "setup", "action": "seed", "nodeIds": [1]}\n'
        with pytest.raises(MalformedLog):
            criteria_report(line)

    @pytest.mark.parametrize("text", ["not json\n", '{"phase": "setup"}\n', "[]\n"])
    def test_unparsable(self, text):
        """Lines that are not events are rejected."""
        with pytest.raises(MalformedLog):
            criteria_report(text)
