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

"""The discovery agent.

- Corpus state and run log (corpus.py)
- Conjecture generation (conjectures.py)
- Forward, backward, bidirectional and linearized search (search.py)
- Synthetic chain families and scaling fits (synthetic.py)
- Novelty and interestingness (scoring.py)
- Tactic priority learning (learning.py)
- The closed loop (loop.py) and its criteria self-report (criteria.py)
"""

from proofgraph.discovery.corpus import Corpus, Event, format_log, parse_log, seed_corpus
from proofgraph.discovery.learning import TacticPriorities
from proofgraph.discovery.conjectures import (
    Conjecture,
    ConjectureStatus,
    generate_conjectures,
)
from proofgraph.discovery.search import (
    LinearizedResult,
    Outcome,
    SearchResult,
    SearchStats,
    enumerate_linearized,
    prove_backward,
    prove_bidirectional,
    prove_forward,
    refute,
)
from proofgraph.discovery.synthetic import (
    ChainFamily,
    ScalingReport,
    chain_family,
    scaling_experiment,
)
from proofgraph.discovery.scoring import (
    InterestReport,
    Novelty,
    NoveltyReport,
    interestingness,
    novelty,
)
from proofgraph.discovery.loop import (
    LoopReport,
    extract_partial_results,
    replay_corpus,
    run_loop,
)
from proofgraph.discovery.criteria import CriteriaReport, Verdict, criteria_report

__all__ = [
    # State
    "Corpus",
    "Event",
    "parse_log",
    "format_log",
    "seed_corpus",
    "TacticPriorities",
    # Conjectures
    "Conjecture",
    "ConjectureStatus",
    "generate_conjectures",
    # Search
    "Outcome",
    "SearchStats",
    "SearchResult",
    "LinearizedResult",
    "prove_forward",
    "prove_backward",
    "prove_bidirectional",
    "enumerate_linearized",
    "refute",
    "ChainFamily",
    "ScalingReport",
    "chain_family",
    "scaling_experiment",
    # Scoring
    "Novelty",
    "NoveltyReport",
    "InterestReport",
    "novelty",
    "interestingness",
    # Loop
    "LoopReport",
    "extract_partial_results",
    "run_loop",
    "replay_corpus",
    "Verdict",
    "CriteriaReport",
    "criteria_report",
]
