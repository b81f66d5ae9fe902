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

"""Self-report of a run against ten criteria for a discovery agent.

Each criterion is a condition function over the run log, registered in
CRITERIA. A criterion is satisfied only with evidence pointers of the form
``log:<index>`` into the log; C2 additionally replays every logged proof
against the corpus through the kernel.

Example:
    report = criteria_report(corpus.log_text(), corpus)
    print(report.render_text())
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from proofgraph.discovery.corpus import Corpus, Event, parse_log
from proofgraph.errors import MalformedLog

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    SATISFIED = "satisfied"
    PARTIAL = "partial"
    UNMET = "unmet"


@dataclass(frozen=True)
class CriterionResult:
    code: str
    title: str
    verdict: Verdict
    evidence: Tuple[str, ...] = ()
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "title": self.title,
            "verdict": self.verdict.value,
            "evidence": list(self.evidence),
            "note": self.note,
        }


@dataclass
class CriteriaReport:
    results: List[CriterionResult] = field(default_factory=list)

    def verdict(self, code: str) -> Verdict:
        for result in self.results:
            if result.code == code:
                return result.verdict
        raise KeyError(code)

    def to_dict(self) -> Dict[str, Any]:
        return {"criteria": [r.to_dict() for r in self.results]}

    def render_text(self) -> str:
        lines = []
        for result in self.results:
            lines.append(f"{result.code:<4} {result.verdict.value:<10} {result.title}")
            if result.note:
                lines.append(f"     {result.note}")
            if result.evidence:
                shown = ", ".join(result.evidence[:5])
                more = len(result.evidence) - 5
                lines.append(f"     evidence: {shown}" + (f" (+{more} more)" if more > 0 else ""))
        return "\n".join(lines) + "\n"


# =============================================================================
# Log view
# =============================================================================


class _Log:
    """Events indexed by (phase, action)."""

    def __init__(self, events: Sequence[Event], corpus: Optional[Corpus]):
        self.events = list(events)
        self.corpus = corpus
        self._by_kind: Dict[Tuple[str, str], List[int]] = {}
        for index, event in enumerate(self.events):
            self._by_kind.setdefault((event.phase, event.action), []).append(index)

    def indices(self, phase: str, action: Optional[str] = None) -> List[int]:
        if action is not None:
            return list(self._by_kind.get((phase, action), ()))
        found: List[int] = []
        for (p, _), positions in self._by_kind.items():
            if p == phase:
                found.extend(positions)
        return sorted(found)

    def __getitem__(self, index: int) -> Event:
        return self.events[index]


def _pointers(indices: Sequence[int]) -> Tuple[str, ...]:
    return tuple(f"log:{i}" for i in indices)


Outcome = Tuple[Verdict, Tuple[str, ...], str]


# =============================================================================
# Conditions
# =============================================================================


def open_ended_language(log: _Log) -> Outcome:
    proposed = log.indices("conjecture", "proposed")
    adopted = log.indices("compress", "adopt")
    generators: Set[str] = set()
    for index in proposed:
        generators.update(log[index].stats.get("generators", ()))
    if not proposed:
        return Verdict.UNMET, (), "no conjectures were proposed"
    note = f"{len(generators)} conjecture generators; {len(adopted)} definitions added"
    if len(generators) >= 3 and adopted:
        return Verdict.SATISFIED, _pointers(proposed[:1] + adopted[:1]), note
    return Verdict.PARTIAL, _pointers(proposed[:1]), note


def verifiable_proofs(log: _Log) -> Outcome:
    logged = sorted(
        log.indices("prove", "proved")
        + log.indices("curate", "admitted")
        + log.indices("extend", "derived")
    )
    if not logged:
        return Verdict.UNMET, (), "no proofs in the log"
    if log.corpus is None:
        return Verdict.PARTIAL, _pointers(logged), "no corpus given, proofs not replayed"
    kernel = log.corpus.kernel
    for index in logged:
        event = log[index]
        if len(event.node_ids) < 2:
            return Verdict.UNMET, _pointers([index]), f"log:{index} names no proof"
        prop, proof = event.node_ids[0], event.node_ids[1]
        if prop not in kernel.graph or proof not in kernel.graph:
            return Verdict.UNMET, _pointers([index]), f"log:{index} names unknown nodes"
        if not kernel.check_proof(proof, prop).valid:
            return Verdict.UNMET, _pointers([index]), f"log:{index} fails replay"
    return Verdict.SATISFIED, _pointers(logged), f"{len(logged)} proofs replayed"


def novelty_detection(log: _Log) -> Outcome:
    judged = log.indices("novelty")
    if not judged:
        return Verdict.UNMET, (), "no novelty judgements"
    verdicts = {log[i].action for i in judged}
    easy_rejections = [
        i for i in log.indices("curate", "rejected") if log[i].stats.get("reason") == "easy"
    ]
    note = f"verdicts seen: {sorted(verdicts)}"
    if "novel" in verdicts and easy_rejections:
        return Verdict.SATISFIED, _pointers(judged[:1] + easy_rejections[:1]), note
    return Verdict.PARTIAL, _pointers(judged[:1]), note


def proposes_and_proves(log: _Log) -> Outcome:
    proposed_at: Dict[str, int] = {}
    for index in log.indices("conjecture", "proposed"):
        for prop in log[index].node_ids:
            proposed_at.setdefault(prop, index)
    evidence: List[int] = []
    for index in log.indices("curate", "admitted"):
        prop = log[index].node_ids[0] if log[index].node_ids else None
        if prop in proposed_at:
            evidence += [proposed_at[prop], index]
    if evidence:
        return Verdict.SATISFIED, _pointers(evidence), f"{len(evidence) // 2} conjectures proven"
    proved = [
        i
        for i in log.indices("prove", "proved")
        if log[i].node_ids and log[i].node_ids[0] in proposed_at
    ]
    if proved:
        return Verdict.PARTIAL, _pointers(proved), "conjectures proven but none admitted"
    return Verdict.UNMET, (), "no proposed conjecture was proven"


def new_definitions(log: _Log) -> Outcome:
    adopted = [i for i in log.indices("compress", "adopt") if log[i].stats.get("utility", 0) > 0]
    if adopted:
        return Verdict.SATISFIED, _pointers(adopted), f"{len(adopted)} abstractions adopted"
    return Verdict.UNMET, (), "no abstraction was adopted"


def selects_discoveries(log: _Log) -> Outcome:
    admitted = log.indices("curate", "admitted")
    rejected = log.indices("curate", "rejected")
    if admitted and rejected:
        note = f"{len(admitted)} admitted, {len(rejected)} rejected"
        return Verdict.SATISFIED, _pointers(admitted[:1] + rejected[:1]), note
    if admitted or rejected:
        return Verdict.PARTIAL, _pointers((admitted or rejected)[:1]), "only one kind of decision"
    return Verdict.UNMET, (), "no curation decisions"


def reasons_for_selection(log: _Log) -> Outcome:
    decisions = log.indices("curate", "admitted") + log.indices("curate", "rejected")
    if not decisions:
        return Verdict.UNMET, (), "no curation decisions"
    scored = [i for i in decisions if "score" in log[i].stats or "reason" in log[i].stats]
    if len(scored) == len(decisions):
        return Verdict.SATISFIED, _pointers(sorted(scored)), "every decision carries its rationale"
    note = f"{len(scored)} of {len(decisions)} explained"
    return Verdict.PARTIAL, _pointers(sorted(scored)), note


def research_program(log: _Log) -> Outcome:
    orders = log.indices("learn", "priorities")
    changes = [
        i
        for previous, i in zip(orders, orders[1:])
        if log[i].stats.get("order") != log[previous].stats.get("order")
    ]
    if changes:
        note = "tactic priorities adapted; a research program needs human judgement"
        return Verdict.PARTIAL, _pointers(changes), note
    return Verdict.UNMET, (), "no evidence of an adaptive plan"


def independent_validation(log: _Log) -> Outcome:
    verdict, evidence, _ = verifiable_proofs(log)
    if verdict is Verdict.SATISFIED:
        note = "proofs re-checked by the kernel; outside validation needs human judgement"
        return Verdict.PARTIAL, evidence, note
    return Verdict.UNMET, (), "no replayable proofs"


def closed_loop_expansion(log: _Log) -> Outcome:
    gained: Dict[str, int] = {}
    for index in log.indices("curate", "admitted") + log.indices("compress", "adopt"):
        if log[index].node_ids:
            gained.setdefault(log[index].node_ids[0], index)
    reused: List[int] = []
    for index in log.indices("conjecture", "proposed"):
        for parents in log[index].stats.get("parents", ()):
            for parent in parents:
                origin = gained.get(parent)
                if origin is not None and origin < index:
                    reused += [origin, index]
    if reused:
        return Verdict.SATISFIED, _pointers(reused[:2]), "later conjectures build on gains"
    steps = {log[i].t for i in log.indices("curate", "summary")}
    if gained and len(steps) > 1:
        return Verdict.PARTIAL, _pointers(sorted(gained.values())[:1]), "gains not yet reused"
    return Verdict.UNMET, (), "the corpus did not grow"


# =============================================================================
# Registry Exports
# =============================================================================

Condition = Callable[[_Log], Outcome]

CRITERIA: Dict[str, Tuple[str, Condition]] = {
    "C1": ("Open-ended language", open_ended_language),
    "C2": ("Verifiable proofs", verifiable_proofs),
    "C3": ("Novelty detection", novelty_detection),
    "C4": ("Proposes and proves conjectures", proposes_and_proves),
    "C5": ("Introduces new definitions", new_definitions),
    "C6": ("Selects discoveries", selects_discoveries),
    "C7": ("Gives reasons for its selection", reasons_for_selection),
    "C8": ("Pursues a research program", research_program),
    "C9": ("Independently validated", independent_validation),
    "C10": ("Closed-loop expansion", closed_loop_expansion),
}

# Criteria that cannot be satisfied from a log alone.
_CAPPED = ("C8", "C9")


def _validate(events: Sequence[Event]) -> None:
    last = 0
    for index, event in enumerate(events):
        if event.t < last:
            raise MalformedLog(f"log:{index} goes back in time ({event.t} after {last})")
        last = event.t
        for node_id in event.node_ids:
            if not isinstance(node_id, str):
                raise MalformedLog(f"log:{index} has a non-string node id {node_id!r}")


def criteria_report(
    log: Union[str, Sequence[Event]], corpus: Optional[Corpus] = None
) -> CriteriaReport:
    """Evaluate every criterion on a run log.

    Args:
        log: JSON-lines text or parsed events
        corpus: The run's final corpus; needed to replay proofs

    Raises:
        MalformedLog: unparsable or out-of-order events
    """
    events = parse_log(log) if isinstance(log, str) else list(log)
    _validate(events)
    view = _Log(events, corpus)
    report = CriteriaReport()
    for code, (title, condition) in CRITERIA.items():
        verdict, evidence, note = condition(view)
        if code in _CAPPED and verdict is Verdict.SATISFIED:
            verdict = Verdict.PARTIAL
        if verdict is Verdict.SATISFIED and not evidence:
            verdict = Verdict.PARTIAL
        report.results.append(CriterionResult(code, title, verdict, evidence, note))
    logger.info(
        "Criteria: " + ", ".join(f"{r.code}={r.verdict.value}" for r in report.results)
    )
    return report


__all__ = [
    "Verdict",
    "CriterionResult",
    "CriteriaReport",
    "CRITERIA",
    "criteria_report",
    # Conditions
    "open_ended_language",
    "verifiable_proofs",
    "novelty_detection",
    "proposes_and_proves",
    "new_definitions",
    "selects_discoveries",
    "reasons_for_selection",
    "research_program",
    "independent_validation",
    "closed_loop_expansion",
]
