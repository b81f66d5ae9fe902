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

"""Exception hierarchy for proofgraph.

Every error carries an ``exit_code`` so the command line can map failures
onto its contract without inspecting messages:

    2  usage or precondition failure
    3  budget or fuel exhausted
    4  internal invariant violation (a kernel bug)
"""

from __future__ import annotations

from typing import Any, Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class ProofGraphError(Exception):
    """Base class for all proofgraph errors."""

    exit_code: int = EXIT_INTERNAL


# =============================================================================
# Hypergraph store
# =============================================================================


class ArityMismatch(ProofGraphError):
    """A rule was applied to the wrong number of inputs."""

    def __init__(self, color: str, expected: int, actual: int):
        super().__init__(f"rule {color!r} takes {expected} inputs, got {actual}")
        self.color = color
        self.expected = expected
        self.actual = actual


class CycleDetected(ProofGraphError):
    """A construction edge would close a directed cycle."""


class UnknownInput(ProofGraphError):
    """A referenced node is not in the graph."""

    exit_code = EXIT_USAGE

    def __init__(self, node_id: str):
        super().__init__(f"unknown node {node_id!r}")
        self.node_id = node_id


class InvalidPayload(ProofGraphError, ValueError):
    """A payload does not fit its node kind."""

    exit_code = EXIT_USAGE


class UnknownRule(ProofGraphError, KeyError):
    """A rule color is not in the catalogue."""

    exit_code = EXIT_USAGE

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class BudgetZero(ProofGraphError):
    """A budget that must be positive was zero or negative."""

    exit_code = EXIT_USAGE


class FrozenGraph(ProofGraphError):
    """A snapshot was mutated."""


# =============================================================================
# Kernel
# =============================================================================


class TypeMismatch(ProofGraphError):
    """A term did not have the type its position requires."""

    def __init__(self, message: str, expected: Optional[str] = None, actual: Optional[str] = None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class UnboundVariable(ProofGraphError):
    """A variable index points past the enclosing binders."""

    def __init__(self, index: int, depth: int):
        super().__init__(f"variable #{index} is unbound under {depth} binders")
        self.index = index
        self.depth = depth


class FuelExhausted(ProofGraphError):
    """Normalization ran out of steps before reaching a normal form."""

    exit_code = EXIT_BUDGET

    def __init__(self, partial: str, steps: int):
        super().__init__(f"fuel exhausted after {steps} steps")
        self.partial = partial
        self.steps = steps


class DuplicateName(ProofGraphError):
    """A definition name is already taken."""

    exit_code = EXIT_USAGE


class OpenTerm(ProofGraphError):
    """A term that must be closed mentions a free variable."""

    exit_code = EXIT_USAGE


# =============================================================================
# Metrics
# =============================================================================


class Unreachable(ProofGraphError):
    """No construction from the roots reaches the node."""

    exit_code = EXIT_USAGE


class Unproven(ProofGraphError):
    """The proposition has no recorded proof."""

    exit_code = EXIT_USAGE


class ZeroLength(ProofGraphError):
    """A serialization had no tokens; the grammar forbids this."""


class GuardExceeded(ProofGraphError):
    """A doubly exponential experiment was asked for too many layers."""

    exit_code = EXIT_USAGE


# =============================================================================
# Abstraction and discovery
# =============================================================================


class EmptyCorpus(ProofGraphError):
    """The corpus holds nothing to work on."""

    exit_code = EXIT_USAGE


class SemanticDrift(ProofGraphError):
    """A rewritten term no longer normalizes to its original normal form."""


class MalformedLog(ProofGraphError):
    """A run log event is missing fields or out of order."""

    exit_code = EXIT_USAGE


# =============================================================================
# Input / output
# =============================================================================


class ParseError(ProofGraphError):
    """Surface syntax could not be parsed."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LoadError(ProofGraphError):
    """A file could not be read as the expected format."""

    exit_code = EXIT_USAGE


class ConfigError(ProofGraphError):
    """A run configuration is invalid."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, key: Optional[str] = None, value: Any = None):
        super().__init__(message)
        self.key = key
        self.value = value


__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_BUDGET",
    "EXIT_INTERNAL",
    "ProofGraphError",
    # Store
    "ArityMismatch",
    "CycleDetected",
    "UnknownInput",
    "InvalidPayload",
    "UnknownRule",
    "BudgetZero",
    "FrozenGraph",
    # Kernel
    "TypeMismatch",
    "UnboundVariable",
    "FuelExhausted",
    "DuplicateName",
    "OpenTerm",
    # Metrics
    "Unreachable",
    "Unproven",
    "ZeroLength",
    "GuardExceeded",
    # Abstraction / discovery
    "EmptyCorpus",
    "SemanticDrift",
    "MalformedLog",
    # IO
    "ParseError",
    "LoadError",
    "ConfigError",
]
