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

"""Tests for the discovery agent: corpus, conjectures, scoring and the loop."""

from __future__ import annotations

import pytest

from proofgraph.config import RunConfig
from proofgraph.discovery.conjectures import (
    Conjecture,
    ConjectureStatus,
    canonical_binders,
    generate_conjectures,
    swap_arguments,
)
from proofgraph.discovery.corpus import Corpus, Event, format_log, parse_log, seed_corpus
from proofgraph.discovery.criteria import Verdict, criteria_report
from proofgraph.discovery.learning import DEFAULT_TACTICS, TacticPriorities
from proofgraph.discovery.loop import extract_partial_results, replay_corpus, run_loop
from proofgraph.discovery.scoring import Novelty, interestingness, novelty
from proofgraph.discovery.search import SearchResult, SearchStats
from proofgraph.errors import BudgetZero, EmptyCorpus, LoadError, MalformedLog, Unproven
from proofgraph.kernel import Kernel
from proofgraph.kernel.library import (
    add_succ_statement,
    forall_nat,
    nat_eq,
    succ_add_proof,
    succ_add_statement,
)
from proofgraph.metrics import UNIT
from tests.golden_files import GOLDEN_LOG, assert_golden


@pytest.fixture
def corpus() -> Corpus:
    return seed_corpus()


def _all_conjectures(corpus: Corpus):
    return {c.proposition: c for c in generate_conjectures(corpus, 10_000)}


class TestCorpus:
    """Tests for corpus state and persistence."""

    def test_seed_contents(self, corpus):
        """The prelude defines arithmetic and proves three facts."""
        assert set(corpus.definitions) == {"add", "double", "mult"}
        assert len(corpus.proven) == 3
        assert corpus.replay() == []
        assert corpus.log[0].phase == "setup"

    def test_round_trip(self, corpus):
        """Reloading keeps the graph, definitions, facts and terms."""
        loaded = Corpus.loads(corpus.dumps())
        assert loaded.graph.structurally_equal(corpus.graph)
        assert loaded.definitions == corpus.definitions
        assert loaded.proven == corpus.proven
        assert loaded.terms == corpus.terms

    def test_conjectures_persist(self, corpus):
        """Tracked conjectures and their statuses survive a reload."""
        chosen = generate_conjectures(corpus, 2)
        chosen[0].mark(ConjectureStatus.REFUTED)
        loaded = Corpus.loads(corpus.dumps())
        assert set(loaded.conjectures) == set(corpus.conjectures)
        restored = loaded.conjectures[chosen[0].proposition]
        assert restored.status is ConjectureStatus.REFUTED
        assert restored.generator == chosen[0].generator

    def test_bad_proof_rejected_on_load(self, corpus):
        """A proven pair that no longer checks fails the load."""
        data = corpus.to_dict()
        q = corpus.kernel.terms.atom("Q")
        p_proof = corpus.proven[corpus.kernel.terms.atom("P")]
        data["proven"].append([q, p_proof])
        with pytest.raises(LoadError):
            Corpus.from_dict(data)

    def test_not_json(self):
        """Garbage is a LoadError."""
        with pytest.raises(LoadError):
            Corpus.loads(b"{not json")

    def test_log_round_trip(self, corpus):
        """The JSON-lines log parses back to the same events."""
        assert parse_log(format_log(corpus.log)) == corpus.log

    def test_bad_log_line(self):
        """A line that is not an event object is rejected."""
        with pytest.raises(MalformedLog):
            parse_log('{"t": 0, "phase": "setup", "action": "x"}\n[1, 2]\n')


class TestTacticPriorities:
    """Tests for tactic priority learning."""

    def test_default_order(self):
        """Without statistics the default order is used."""
        assert TacticPriorities().ordered() == list(DEFAULT_TACTICS)

    def test_successful_tactic_promoted(self):
        """A tactic that keeps succeeding moves ahead; known stays first."""
        priorities = TacticPriorities()
        for _ in range(5):
            priorities.record("induction", True)
            priorities.record("intro", False)
        order = priorities.ordered()
        assert order[0] == "known"
        assert order.index("induction") < order.index("intro")

    def test_round_trip(self):
        """Counts survive serialization."""
        priorities = TacticPriorities()
        priorities.record("mp", True)
        priorities.record("mp", False)
        restored = TacticPriorities.from_dict(priorities.to_dict())
        assert restored.rate("mp") == priorities.rate("mp") == pytest.approx(0.5)


class TestConjectures:
    """Tests for conjecture generation."""

    def test_reversal_proposes_succ_add(self, corpus):
        """Swapping the arguments of a + S b = S(a + b) gives S a + b = S(a + b)."""
        k = corpus.kernel
        add = corpus.definitions["add"]
        swapped = canonical_binders(k, swap_arguments(k, add_succ_statement(k, add)))
        assert swapped == succ_add_statement(k, add)
        found = _all_conjectures(corpus)
        conjecture = found[succ_add_statement(k, add)]
        assert conjecture.generator == "reversal"
        assert conjecture.parents == (add_succ_statement(k, add),)

    def test_implication_reversal(self, corpus):
        """P -> Q suggests Q -> P."""
        t = corpus.kernel.terms
        found = _all_conjectures(corpus)
        assert t.implies(t.atom("Q"), t.atom("P")) in found

    def test_inductive_generalization(self, corpus):
        """add(n, 0) = n holds on 0..10 and is conjectured for all n."""
        k = corpus.kernel
        t = k.terms
        add = corpus.definitions["add"]
        goal = forall_nat(k, nat_eq(k, t.app(add, t.var(0), t.zero()), t.var(0)))
        found = _all_conjectures(corpus)
        assert found[goal].generator == "induction"

    def test_false_template_not_conjectured(self, corpus):
        """add(n, 0) = 0 fails at n = 1 and is not an inductive conjecture."""
        k = corpus.kernel
        t = k.terms
        add = corpus.definitions["add"]
        wrong = forall_nat(k, nat_eq(k, t.app(add, t.var(0), t.zero()), t.zero()))
        found = _all_conjectures(corpus)
        assert wrong not in found or found[wrong].generator != "induction"

    def test_proven_never_open(self, corpus):
        """Proven propositions are never proposed."""
        found = _all_conjectures(corpus)
        assert not set(found) & set(corpus.proven)
        proven_forms = {corpus.kernel.nf(p) for p in corpus.proven}
        assert all(corpus.kernel.nf(p) not in proven_forms for p in found)

    def test_all_statements(self, corpus):
        """Every conjecture is a proposition."""
        k = corpus.kernel
        for prop in _all_conjectures(corpus):
            assert k.nf(k.infer(prop)) == k.terms.sort()

    def test_seeded_order(self):
        """The same seed gives the same conjectures."""
        first = [c.proposition for c in generate_conjectures(seed_corpus(), 3, seed=[4, 1])]
        second = [c.proposition for c in generate_conjectures(seed_corpus(), 3, seed=[4, 1])]
        assert first == second
        assert len(first) == 3

    def test_tracked_and_settled(self, corpus):
        """Chosen conjectures are tracked; settled ones are not proposed again."""
        chosen = generate_conjectures(corpus, 1)
        assert corpus.conjectures[chosen[0].proposition] is chosen[0]
        chosen[0].mark(ConjectureStatus.REFUTED)
        assert chosen[0].proposition not in _all_conjectures(corpus)

    def test_empty_corpus(self):
        """Nothing to work from is an error."""
        with pytest.raises(EmptyCorpus):
            generate_conjectures(Corpus(), 3)

    def test_needs_one(self, corpus):
        """n must be at least 1."""
        with pytest.raises(ValueError):
            generate_conjectures(corpus, 0)

    def test_status_moves_once(self):
        """A settled conjecture cannot change or reopen."""
        conjecture = Conjecture("p", "reversal")
        conjecture.mark(ConjectureStatus.PROVEN)
        conjecture.mark(ConjectureStatus.PROVEN)
        with pytest.raises(ValueError):
            conjecture.mark(ConjectureStatus.REFUTED)
        with pytest.raises(ValueError):
            conjecture.mark(ConjectureStatus.OPEN)

    def test_conjecture_dict(self):
        """Conjectures serialize their status by value."""
        conjecture = Conjecture("p", "induction", ("d",), ConjectureStatus.ABANDONED)
        assert Conjecture.from_dict(conjecture.to_dict()) == conjecture


class TestNovelty:
    """Tests for novelty judgements."""

    def test_proven_is_known(self, corpus):
        """A proven fact is known."""
        prop = add_succ_statement(corpus.kernel, corpus.definitions["add"])
        assert novelty(corpus, prop).verdict is Novelty.KNOWN

    def test_one_modus_ponens_is_easy(self, corpus):
        """Q is one modus ponens from P and P -> Q."""
        report = novelty(corpus, corpus.kernel.terms.atom("Q"), threshold=3)
        assert report.verdict is Novelty.EASY
        assert report.m_estimate == 1

    def test_succ_add_is_novel(self, corpus):
        """S a + b = S(a + b) needs more than a couple of steps."""
        prop = succ_add_statement(corpus.kernel, corpus.definitions["add"])
        report = novelty(corpus, prop, threshold=3)
        assert report.verdict is Novelty.NOVEL
        assert report.m_estimate is not None and report.m_estimate >= 3

    def test_unprovable_is_novel_without_estimate(self, corpus):
        """Exhausted search gives novel with no estimate."""
        report = novelty(corpus, corpus.kernel.terms.atom("R"), budget=10)
        assert report.verdict is Novelty.NOVEL
        assert report.m_estimate is None

    def test_probe_is_side_effect_free(self, corpus):
        """Judging novelty records nothing in the corpus."""
        prop = succ_add_statement(corpus.kernel, corpus.definitions["add"])
        before = (dict(corpus.proven), corpus.priorities.to_dict(), len(corpus.log))
        novelty(corpus, prop)
        assert (dict(corpus.proven), corpus.priorities.to_dict(), len(corpus.log)) == before


class TestInterestingness:
    """Tests for interestingness scores."""

    @pytest.fixture
    def twins(self, corpus):
        k = corpus.kernel
        add = corpus.definitions["add"]
        succ_add = succ_add_statement(k, add)
        assert corpus.admit(succ_add, succ_add_proof(k, add)).valid
        return corpus, add_succ_statement(k, add), succ_add

    def test_inductive_twin_scores_higher(self, twins):
        """The definitional fact scores below the one needing induction."""
        corpus, add_succ, succ_add = twins
        assert interestingness(corpus, succ_add).score > interestingness(corpus, add_succ).score

    def test_ranking_stable_under_rescaling(self, twins):
        """Scaling every cost by ten keeps the ranking."""
        corpus, add_succ, succ_add = twins
        scaled = UNIT.scaled(10)
        unit_order = interestingness(corpus, succ_add).score > interestingness(
            corpus, add_succ
        ).score
        scaled_order = interestingness(corpus, succ_add, model=scaled).score > interestingness(
            corpus, add_succ, model=scaled
        ).score
        assert unit_order == scaled_order

    def test_invariant_under_reload(self, twins):
        """A reloaded corpus gives the same score."""
        corpus, _, succ_add = twins
        loaded = Corpus.loads(corpus.dumps())
        assert interestingness(loaded, succ_add).score == pytest.approx(
            interestingness(corpus, succ_add).score
        )

    def test_unproven(self, corpus):
        """Only proven propositions can be scored."""
        prop = succ_add_statement(corpus.kernel, corpus.definitions["add"])
        with pytest.raises(Unproven):
            interestingness(corpus, prop)


class TestPartialResults:
    """Tests for logging lemmas of failed attempts."""

    def test_valid_lemmas_logged_once(self, corpus):
        """New checked lemmas are logged; known and repeated ones are skipped."""
        t = corpus.kernel.terms
        q = t.atom("Q")
        proof = t.app(t.axiom("ax_PQ", t.implies(t.atom("P"), q)), t.axiom("ax_P", t.atom("P")))
        known = t.atom("P")
        result = SearchResult(
            "goal",
            None,
            SearchStats(),
            partial=[(q, proof), (q, proof), (known, corpus.proven[known])],
        )
        kept = extract_partial_results(corpus, result)
        assert kept == [(q, proof)]
        assert corpus.log[-1].phase == "prove"
        assert corpus.log[-1].action == "partial"


class TestLoop:
    """Tests for the discovery loop."""

    @pytest.fixture
    def quick(self) -> RunConfig:
        return RunConfig.from_preset("quick")

    def test_zero_steps(self, corpus):
        """The loop needs at least one step."""
        with pytest.raises(BudgetZero):
            run_loop(corpus, 0)

    @pytest.mark.integration
    def test_short_run(self, corpus, quick):
        """Two steps keep every proof valid and the proven set growing."""
        report = run_loop(corpus, 2, quick)
        phases = {(e.phase, e.action) for e in report.events}
        assert ("setup", "run") in phases
        assert ("conjecture", "proposed") in phases
        assert ("learn", "priorities") in phases
        assert corpus.replay() == []
        summaries = [
            e.stats["proven"]
            for e in report.events
            if (e.phase, e.action) == ("curate", "summary")
        ]
        assert len(summaries) == 2
        assert summaries == sorted(summaries)
        assert [e.t for e in corpus.log] == sorted(e.t for e in corpus.log)
        for event in report.events:
            if (event.phase, event.action) == ("curate", "admitted"):
                assert event.stats["novelty"] != Novelty.EASY.value
                assert "score" in event.stats

    @pytest.mark.integration
    def test_deterministic(self, quick):
        """Same corpus, config, steps and seed give the same log."""
        first = seed_corpus()
        second = seed_corpus()
        run_loop(first, 2, quick, seed=3)
        run_loop(second, 2, quick, seed=3)
        assert first.log_text() == second.log_text()

    def test_conjecture_free_admits_forward_facts(self, corpus, quick):
        """Without conjecturing, one forward layer is admitted directly."""
        config = quick.with_overrides(conjecture_free=True)
        report = run_loop(corpus, 1, config)
        q = corpus.kernel.terms.atom("Q")
        assert q in report.admitted
        assert corpus.is_proven(q)
        assert any(e.phase == "extend" and e.action == "derived" for e in report.events)
        assert not any(e.phase == "conjecture" for e in report.events)

    def test_logged_settings_leave_out_paths(self, quick):
        """Where artifacts go does not change the log."""
        logs = []
        for out_dir in ("first", "second"):
            corpus = seed_corpus()
            run_loop(corpus, 1, quick.with_overrides(out_dir=out_dir, log_file=f"{out_dir}.jsonl"))
            logs.append(corpus.log_text())
        assert logs[0] == logs[1]
        setup = next(e for e in parse_log(logs[0]) if e.action == "run")
        assert not {"out_dir", "log_file", "corpus_file"} & set(setup.stats["config"])

    @pytest.mark.integration
    def test_replay_rebuilds_corpus(self, quick):
        """A seed-corpus run is rebuilt from its log alone."""
        corpus = seed_corpus(Kernel(fuel=quick.normalize_fuel))
        run_loop(corpus, 2, quick, seed=5)
        rebuilt = replay_corpus(parse_log(corpus.log_text()))
        assert rebuilt is not None
        assert rebuilt.log_text() == corpus.log_text()
        assert rebuilt.proven == corpus.proven

    def test_replay_rejects_logs_it_cannot_reproduce(self, quick):
        """Truncated logs and logs without a run event give no corpus."""
        corpus = seed_corpus(Kernel(fuel=quick.normalize_fuel))
        run_loop(corpus, 1, quick)
        assert replay_corpus(corpus.log[:-1]) is None
        assert replay_corpus(seed_corpus().log) is None

    @pytest.mark.slow
    def test_golden_run(self):
        """The pinned fifty-step run reproduces its recorded log."""
        config = RunConfig()
        corpus = seed_corpus(Kernel(fuel=config.normalize_fuel))
        report = run_loop(corpus, 50, config)
        assert_golden(GOLDEN_LOG, corpus.log_text().encode("utf-8"))
        assert corpus.replay() == []
        assert report.adopted
        criteria = criteria_report(corpus.log_text(), corpus)
        for code in ("C2", "C4", "C5"):
            assert criteria.verdict(code) is Verdict.SATISFIED

    @pytest.mark.slow
    def test_golden_log_reports_on_its_own(self):
        """The recorded log, replayed without its corpus, satisfies C2, C4 and C5."""
        assert GOLDEN_LOG.is_file(), "golden log not recorded"
        events = parse_log(GOLDEN_LOG.read_text(encoding="utf-8"))
        rebuilt = replay_corpus(events)
        assert rebuilt is not None
        criteria = criteria_report(events, rebuilt)
        for code in ("C2", "C4", "C5"):
            assert criteria.verdict(code) is Verdict.SATISFIED


class TestEvents:
    """Tests for event records."""

    def test_line_is_compact_and_sorted(self):
        """Each event is one compact JSON line with sorted keys."""
        line = Event(1, "prove", "proved", ("a", "b"), {"m": 2}, [0, 1]).to_line()
        assert line == (
            '{"action":"proved","nodeIds":["a","b"],"phase":"prove",'
            '"seedState":[0,1],"stats":{"m":2},"t":1}'
        )
