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

"""The conjecture, prove, learn and compress loop.

Each step t draws its randomness from the seed material ``[seed, t]``:

1. conjecture: propose up to ``conjectures_per_step`` open statements
2. prove: estimate novelty, then search bidirectionally under the per-goal
   budget; refuted and abandoned conjectures are settled, and closed lemmas
   from failed attempts are logged
3. learn: tactic statistics reorder backward search (updated by the searches)
4. curate: admit proven conjectures that are novel and interesting enough;
   every ``compress_every`` steps, adopt the best abstraction

With ``conjecture_free`` set, step 1 and 2 are replaced by one layer of
forward chaining whose derived facts are admitted directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from proofgraph.abstraction import compress
from proofgraph.config import RunConfig
from proofgraph.discovery.conjectures import (
    Conjecture,
    ConjectureStatus,
    generate_conjectures,
)
from proofgraph.discovery.corpus import Corpus, Event, format_log, seed_corpus
from proofgraph.discovery.scoring import Novelty, interestingness, novelty
from proofgraph.discovery.search import SearchResult, forward_layer, prove_bidirectional
from proofgraph.errors import BudgetZero, EmptyCorpus, ProofGraphError
from proofgraph.hypergraph import NodeId
from proofgraph.kernel import Kernel

logger = logging.getLogger(__name__)


@dataclass
class LoopReport:
    """What a run did.

    Attributes:
        corpus: The corpus after the run
        events: Events appended by the run
        admitted: Propositions admitted, in order
        adopted: Names of abstractions adopted, in order
    """

    corpus: Corpus
    events: List[Event] = field(default_factory=list)
    admitted: List[NodeId] = field(default_factory=list)
    adopted: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": len({e.t for e in self.events if e.phase == "curate"}),
            "admitted": self.admitted,
            "adopted": self.adopted,
            "proven": len(self.corpus.proven),
            "events": len(self.events),
        }


def extract_partial_results(corpus: Corpus, result: SearchResult) -> List[Tuple[NodeId, NodeId]]:
    """Log the closed lemmas a failed attempt proved along the way."""
    kept: List[Tuple[NodeId, NodeId]] = []
    seen = set()
    for prop, proof in result.partial:
        if prop in seen or corpus.is_proven(prop):
            continue
        seen.add(prop)
        if corpus.kernel.check_proof(proof, prop).valid:
            kept.append((prop, proof))
            corpus.record("prove", "partial", (prop, proof), {"goal": result.goal})
    return kept


# =============================================================================
# Steps
# =============================================================================


def _attempt(
    corpus: Corpus, conjecture: Conjecture, config: RunConfig, report: LoopReport
) -> None:
    prop = conjecture.proposition
    verdict = novelty(corpus, prop, config.novelty_m, config.proof_nodes)
    corpus.record("novelty", verdict.verdict.value, (prop,), {"m": verdict.m_estimate})
    if verdict.verdict is Novelty.KNOWN:
        conjecture.mark(ConjectureStatus.PROVEN)
        return

    result = prove_bidirectional(corpus, prop, config.proof_nodes, refute_limit=config.refute_limit)
    if result.refuted:
        conjecture.mark(ConjectureStatus.REFUTED)
        corpus.record(
            "prove", "refuted", (prop,), {"counterexample": list(result.counterexample or ())}
        )
        return
    if result.proof is None:
        conjecture.mark(ConjectureStatus.ABANDONED)
        corpus.record("prove", "failed", (prop,), result.stats.to_dict())
        extract_partial_results(corpus, result)
        return

    conjecture.mark(ConjectureStatus.PROVEN)
    stats = result.stats.to_dict()
    stats["steps"] = result.steps
    corpus.record("prove", "proved", (prop, result.proof), stats)

    if verdict.verdict is Novelty.EASY:
        corpus.record(
            "curate", "rejected", (prop,), {"reason": "easy", "m": verdict.m_estimate}
        )
        return
    interest = interestingness(corpus, prop)
    rationale = interest.to_dict()
    rationale.update(
        {"novelty": verdict.verdict.value, "m": result.steps, "generator": conjecture.generator}
    )
    if interest.score < config.interest_floor:
        rationale["reason"] = "below-floor"
        corpus.record("curate", "rejected", (prop,), rationale)
        return
    if corpus.admit(prop, result.proof).valid:
        report.admitted.append(prop)
        corpus.record("curate", "admitted", (prop, result.proof), rationale)


def _conjecture_step(
    corpus: Corpus, config: RunConfig, seed_state: List[int], report: LoopReport
) -> None:
    try:
        conjectures = generate_conjectures(
            corpus, config.conjectures_per_step, seed_state, config.ground_instances
        )
    except EmptyCorpus as exc:
        corpus.record("conjecture", "none", (), {"reason": str(exc)}, seed_state)
        return
    corpus.record(
        "conjecture",
        "proposed",
        [c.proposition for c in conjectures],
        {
            "generators": [c.generator for c in conjectures],
            "parents": [list(c.parents) for c in conjectures],
        },
        seed_state,
    )
    for conjecture in conjectures:
        _attempt(corpus, conjecture, config, report)


def _forward_step(corpus: Corpus, config: RunConfig, report: LoopReport) -> None:
    derived = forward_layer(corpus, config.proof_nodes)
    for prop, proof in derived[: config.conjectures_per_step]:
        if corpus.admit(prop, proof).valid:
            report.admitted.append(prop)
            corpus.record("extend", "derived", (prop, proof), {"generator": "forward"})


def _compress_step(corpus: Corpus, config: RunConfig, report: LoopReport) -> None:
    if not corpus.terms:
        return
    try:
        outcome = compress(
            corpus,
            rounds=1,
            max_size=config.mine_size,
            max_arity=config.mine_arity,
            top_k=config.mine_top_k,
        )
    except ProofGraphError as exc:
        logger.warning(f"Compression at t={corpus.t} failed: {exc}")
        corpus.record("compress", "failed", (), {"reason": str(exc)})
        return
    names = [a.name for a in outcome.adopted if a.name is not None]
    report.adopted.extend(names)
    corpus.record(
        "compress",
        "summary",
        names,
        {"costs": outcome.costs, "branching": outcome.branching},
    )


# =============================================================================
# Loop
# =============================================================================


def run_loop(
    corpus: Corpus,
    steps: int,
    config: Optional[RunConfig] = None,
    seed: Optional[int] = None,
) -> LoopReport:
    """Run ``steps`` discovery steps on ``corpus`` in place.

    Identical corpus, config, steps and seed give identical logs.

    Raises:
        BudgetZero: ``steps`` below 1
    """
    if steps < 1:
        raise BudgetZero(f"the loop needs at least one step, got {steps}")
    config = config or RunConfig()
    seed = config.seed if seed is None else seed
    corpus.kernel.fuel = config.normalize_fuel
    first_event = len(corpus.log)
    report = LoopReport(corpus)

    corpus.record(
        "setup",
        "run",
        (),
        {"steps": steps, "conjectureFree": config.conjecture_free, "config": config.run_settings()},
        [seed],
    )
    start = corpus.t
    for offset in range(1, steps + 1):
        corpus.t = start + offset
        seed_state = [seed, corpus.t]
        if config.conjecture_free:
            _forward_step(corpus, config, report)
        else:
            _conjecture_step(corpus, config, seed_state, report)
        corpus.record("learn", "priorities", (), {"order": corpus.priorities.ordered()})
        if corpus.t % config.compress_every == 0:
            _compress_step(corpus, config, report)
        corpus.record(
            "curate",
            "summary",
            (),
            {
                "proven": len(corpus.proven),
                "definitions": len(corpus.definitions),
                "terms": len(corpus.terms),
                "nodes": len(corpus.graph),
            },
        )
        logger.info(
            f"Step {corpus.t}: {len(corpus.proven)} proven, "
            f"{len(corpus.definitions)} definitions, {len(corpus.graph)} nodes"
        )

    report.events = corpus.log[first_event:]
    return report


# =============================================================================
# Replay
# =============================================================================


def replay_corpus(events: Sequence[Event]) -> Optional[Corpus]:
    """Rebuild the final corpus of a seed-corpus run from its log.

    The run is repeated from the logged settings and seed. The rebuilt
    corpus is returned only when the repeated run reproduces ``events``
    exactly; logs of runs from other start corpora give None.
    """
    runs = [e for e in events if e.phase == "setup" and e.action == "run"]
    if len(runs) != 1 or not isinstance(runs[0].stats.get("config"), dict):
        logger.info("Log has no single setup/run event; nothing to replay")
        return None
    run = runs[0]
    try:
        config = RunConfig().with_overrides(**run.stats["config"])
        steps = int(run.stats["steps"])
        seed = int(run.seed_state[0]) if run.seed_state else config.seed
    except (ProofGraphError, KeyError, TypeError, ValueError) as exc:
        logger.warning(f"Cannot replay the logged run: {exc}")
        return None

    logger.info(f"Replaying {steps} steps with seed {seed}")
    corpus = seed_corpus(Kernel(fuel=config.normalize_fuel))
    try:
        run_loop(corpus, steps, config, seed)
    except ProofGraphError as exc:
        logger.warning(f"Replay failed: {exc}")
        return None
    if format_log(corpus.log) != format_log(events):
        logger.warning("Replayed log differs from the given log")
        return None
    return corpus


__all__ = [
    "LoopReport",
    "extract_partial_results",
    "run_loop",
    "replay_corpus",
]
