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

"""Novelty and interestingness of propositions relative to a corpus."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, Optional

from proofgraph.abstraction import mine_terms, term_cost
from proofgraph.discovery.search import DEFAULT_PROOF_BUDGET, SearchResult, prove_backward
from proofgraph.errors import ProofGraphError
from proofgraph.hypergraph import NodeId
from proofgraph.metrics import DEFAULT_SEARCH_BUDGET, UNIT, CostModel, efficiency

if TYPE_CHECKING:
    from proofgraph.discovery.corpus import Corpus

logger = logging.getLogger(__name__)

DEFAULT_NOVELTY_THRESHOLD = 3


class Novelty(str, Enum):
    KNOWN = "known"
    EASY = "easy"
    NOVEL = "novel"


@dataclass(frozen=True)
class NoveltyReport:
    """Verdict with the proof-step estimate behind it.

    ``m_estimate`` is None when bounded search found no proof.
    """

    verdict: Novelty
    m_estimate: Optional[int]
    search: Optional[SearchResult] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict.value, "m": self.m_estimate}


def novelty(
    corpus: "Corpus",
    prop: NodeId,
    threshold: int = DEFAULT_NOVELTY_THRESHOLD,
    budget: int = DEFAULT_PROOF_BUDGET,
) -> NoveltyReport:
    """Classify ``prop`` as known, easy or novel.

    A bounded backward search from the corpus facts estimates the proof
    size; the search records nothing in the corpus.
    """
    result = prove_backward(corpus, prop, budget, record=False)
    if result.found and result.trail == ("known",):
        return NoveltyReport(Novelty.KNOWN, 0, result)
    if result.found and result.steps < threshold:
        return NoveltyReport(Novelty.EASY, result.steps, result)
    return NoveltyReport(Novelty.NOVEL, result.steps if result.found else None, result)


@dataclass(frozen=True)
class InterestReport:
    """Interestingness of a proven proposition.

    Attributes:
        prop: Scored proposition
        score: efficiency plus compression bonus
        efficiency: Statement-length sum of the best proof over the statement length
        bonus: Best abstraction utility in the proof, relative to the proof's cost
        proof: Proof the score was computed on
        abstraction: Rendering of the abstraction behind the bonus, if any
    """

    prop: NodeId
    score: float
    efficiency: float
    bonus: float
    proof: NodeId
    abstraction: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "score": round(self.score, 6),
            "efficiency": round(self.efficiency, 6),
            "bonus": round(self.bonus, 6),
            "proof": self.proof,
            "abstraction": self.abstraction,
        }


def interestingness(
    corpus: "Corpus",
    prop: NodeId,
    budget: int = DEFAULT_SEARCH_BUDGET,
    model: Optional[CostModel] = None,
) -> InterestReport:
    """Efficiency of ``prop`` plus a bonus for compressible proofs.

    Raises:
        Unproven: no proof of ``prop`` is recorded in the graph
    """
    cost_model = model or UNIT
    report = efficiency(corpus.kernel, prop, budget)
    proof = report.proof
    bonus, rendered = 0.0, None
    try:
        candidates = mine_terms(corpus.kernel, {"proof": proof}, top_k=1, model=cost_model)
    except ProofGraphError as exc:
        logger.debug(f"No abstraction mined from proof {proof}: {exc}")
        candidates = []
    if candidates and candidates[0].utility > 0:
        cost = term_cost(corpus.graph, proof, cost_model)
        if cost > 0:
            bonus = candidates[0].utility / cost
            rendered = candidates[0].pattern.render()
    score = report.value + bonus
    logger.debug(f"Interestingness of {prop}: {report.value:.3f} + {bonus:.3f}")
    return InterestReport(prop, score, report.value, bonus, proof, rendered)


__all__ = [
    "DEFAULT_NOVELTY_THRESHOLD",
    "Novelty",
    "NoveltyReport",
    "novelty",
    "InterestReport",
    "interestingness",
]
