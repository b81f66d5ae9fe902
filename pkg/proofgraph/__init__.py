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

"""Proof hypergraph engine.

Mathematical objects and proofs live in one hash-consed, acyclic, ordered
hypergraph. On top of it:
- A dependent type theory kernel with fuelled normalization (kernel/)
- Depth, complexity, length and efficiency measures (metrics.py)
- Abstraction mining and corpus compression (abstraction.py)
- A conjecture, prove, learn and compress agent (discovery/)
- Run configuration (config.py) and the command line (cli.py)
"""

from proofgraph.errors import ProofGraphError
from proofgraph.rules import EdgeClass, NodeKind, get_catalogue
from proofgraph.hypergraph import (
    HyperEdge,
    Hypergraph,
    Node,
    NodeId,
    backward_closure,
    extend,
)
from proofgraph.serialization import export, import_json
from proofgraph.kernel import CheckResult, Kernel, NormalizeResult, parse, render
from proofgraph.metrics import (
    CostModel,
    depth,
    efficiency,
    growth_experiment,
    length,
    min_complexity,
)
from proofgraph.abstraction import Abstraction, compress, mine, utility
from proofgraph.config import RunConfig
from proofgraph.discovery import (
    Corpus,
    criteria_report,
    generate_conjectures,
    prove_backward,
    prove_bidirectional,
    prove_forward,
    run_loop,
    seed_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "ProofGraphError",
    # Hypergraph core
    "NodeKind",
    "EdgeClass",
    "get_catalogue",
    "NodeId",
    "Node",
    "HyperEdge",
    "Hypergraph",
    "backward_closure",
    "extend",
    "export",
    "import_json",
    # Kernel
    "Kernel",
    "CheckResult",
    "NormalizeResult",
    "parse",
    "render",
    # Metrics
    "CostModel",
    "depth",
    "min_complexity",
    "length",
    "efficiency",
    "growth_experiment",
    # Abstraction
    "Abstraction",
    "mine",
    "utility",
    "compress",
    # Discovery
    "Corpus",
    "seed_corpus",
    "generate_conjectures",
    "prove_forward",
    "prove_backward",
    "prove_bidirectional",
    "run_loop",
    "criteria_report",
    "RunConfig",
]
