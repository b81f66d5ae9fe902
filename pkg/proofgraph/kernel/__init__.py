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

"""Dependent type theory kernel over the proof hypergraph.

Modules:
- terms: builders and de Bruijn shift/substitution
- reduction: beta/iota/delta/projection steps and fuelled normalization
- checker: typing, definitional equality, definitions and proof checking
- syntax: s-expression parsing, printing and token length
- library: arithmetic definitions and reference constructions
"""

from proofgraph.kernel.checker import (
    DEFAULT_FUEL,
    CheckResult,
    CheckStatus,
    Judgment,
    Kernel,
)
from proofgraph.kernel.library import build_appendix_examples, define_arithmetic
from proofgraph.kernel.reduction import NormalizeResult, Reducer
from proofgraph.kernel.syntax import parse, render, token_length
from proofgraph.kernel.terms import RecCell, Terms, TermView

__all__ = [
    # Checker
    "DEFAULT_FUEL",
    "CheckResult",
    "CheckStatus",
    "Judgment",
    "Kernel",
    # Reduction
    "NormalizeResult",
    "Reducer",
    # Terms
    "RecCell",
    "Terms",
    "TermView",
    # Syntax
    "parse",
    "render",
    "token_length",
    # Library
    "build_appendix_examples",
    "define_arithmetic",
]
