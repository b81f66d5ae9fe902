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

"""Command-line entry point.

Subcommands:
    eval       normalize a term and print its normal form and step count
    typecheck  infer the type of a term, or check it against --type
    metrics    write nodes.csv for a corpus
    growth     conjunction-only layer sizes, printed and written as growth.csv
    mine       write the top abstractions of a corpus
    compress   adopt abstractions and write the rewritten corpus
    discover   run the discovery loop and write its log and final corpus
    report     evaluate the criteria on a run log
    export     write a corpus as JSON or its graph as DOT

Exit codes: 0 success, 2 usage or precondition failure, 3 budget or fuel
exhausted, 4 internal error. Every file is written to a temporary name in
the target directory and renamed into place.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Union

from proofgraph.abstraction import compress, mine
from proofgraph.config import RunConfig, available_presets, load_run_config
from proofgraph.discovery.corpus import Corpus, Event, parse_log, seed_corpus
from proofgraph.discovery.criteria import criteria_report
from proofgraph.discovery.loop import replay_corpus, run_loop
from proofgraph.errors import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_USAGE,
    FuelExhausted,
    LoadError,
    OpenTerm,
    ProofGraphError,
    TypeMismatch,
    UnboundVariable,
)
from proofgraph.kernel import Kernel, define_arithmetic, parse, render
from proofgraph.metrics import growth_csv, growth_experiment, nodes_csv
from proofgraph.serialization import export

logger = logging.getLogger(__name__)

DEFAULT_DISCOVER_STEPS = 50

# Artifact names inside --out-dir.
NODES_CSV = "nodes.csv"
GROWTH_CSV = "growth.csv"
ABSTRACTIONS_JSON = "abstractions.json"
COMPRESSION_JSON = "compression.json"
CORPUS_JSON = "corpus.json"
SUMMARY_JSON = "summary.json"
CONFIG_FILE = "run.cfg"
CRITERIA_JSON = "criteria.json"
CRITERIA_TEXT = "criteria.txt"


# =============================================================================
# Helpers
# =============================================================================


def write_atomic(path: Union[str, Path], data: Union[str, bytes]) -> Path:
    """Write ``data`` to ``path`` through a temporary file and a rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    blob = data.encode("utf-8") if isinstance(data, str) else data
    fd, temp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(blob)
        os.replace(temp, target)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise
    logger.info(f"Wrote {target} ({len(blob)} bytes)")
    return target


def _json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _read(path: Union[str, Path], what: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise LoadError(f"cannot read {what} {path}: {exc}") from exc


def _config(args: argparse.Namespace) -> RunConfig:
    config = load_run_config(args.config, args.preset)
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out_dir is not None:
        overrides["out_dir"] = args.out_dir
    return config.with_overrides(**overrides) if overrides else config


def _load_corpus(path: Optional[str], config: RunConfig) -> Corpus:
    """The corpus at ``path``, else the configured corpus file, else the seed corpus."""
    source = path or config.corpus_file
    if source:
        corpus = Corpus.loads(_read(source, "corpus"), fuel=config.normalize_fuel)
        logger.info(f"Loaded {corpus!r} from {source}")
        return corpus
    return seed_corpus(Kernel(fuel=config.normalize_fuel))


def _term_kernel(args: argparse.Namespace, config: RunConfig) -> Kernel:
    if args.corpus:
        return _load_corpus(args.corpus, config).kernel
    kernel = Kernel(fuel=config.normalize_fuel)
    define_arithmetic(kernel)
    return kernel


# =============================================================================
# Commands
# =============================================================================


def cmd_eval(args: argparse.Namespace) -> int:
    config = _config(args)
    kernel = _term_kernel(args, config)
    node = parse(kernel.terms, args.term, kernel.definitions)
    # Only well-typed closed terms are guaranteed to normalize.
    try:
        kernel.infer(node)
    except (TypeMismatch, UnboundVariable, OpenTerm) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fuel = args.fuel if args.fuel is not None else config.normalize_fuel
    result = kernel.normalize(node, fuel)
    if not result.complete:
        raise FuelExhausted(render(kernel.graph, result.node), result.steps)
    print(render(kernel.graph, result.node))
    print(f"steps: {result.steps}")
    return EXIT_OK


def cmd_typecheck(args: argparse.Namespace) -> int:
    config = _config(args)
    kernel = _term_kernel(args, config)
    node = parse(kernel.terms, args.term, kernel.definitions)
    try:
        if args.type is None:
            print(render(kernel.graph, kernel.infer(node)))
        else:
            kernel.check(node, parse(kernel.terms, args.type, kernel.definitions))
            print("ok")
    except (TypeMismatch, UnboundVariable, OpenTerm) as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _load_corpus(args.corpus, config)
    text = nodes_csv(corpus.kernel, budget=config.proof_nodes, seed=config.seed)
    write_atomic(Path(config.out_dir) / NODES_CSV, text)
    print(f"{len(corpus.graph)} nodes")
    return EXIT_OK


def cmd_growth(args: argparse.Namespace) -> int:
    config = _config(args)
    counts = growth_experiment(args.k, args.layers, override=args.override)
    write_atomic(Path(config.out_dir) / GROWTH_CSV, growth_csv(counts))
    print(",".join(str(c) for c in counts))
    return EXIT_OK


def cmd_mine(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _load_corpus(args.corpus, config)
    found = mine(corpus, config.mine_size, config.mine_arity, config.mine_top_k)
    write_atomic(Path(config.out_dir) / ABSTRACTIONS_JSON, _json([a.to_dict() for a in found]))
    for abstraction in found:
        print(f"{abstraction.utility:g}\t{abstraction.pattern.render()}")
    return EXIT_OK


def cmd_compress(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _load_corpus(args.corpus, config)
    report = compress(
        corpus,
        rounds=args.rounds,
        max_size=config.mine_size,
        max_arity=config.mine_arity,
        top_k=config.mine_top_k,
    )
    out = Path(config.out_dir)
    write_atomic(out / COMPRESSION_JSON, _json(report.to_dict()))
    write_atomic(out / CORPUS_JSON, corpus.dumps() + b"\n")
    print(f"adopted {len(report.adopted)}, cost {report.cost_before:g} -> {report.cost_after:g}")
    return EXIT_OK


def cmd_discover(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _load_corpus(args.corpus, config)
    report = run_loop(corpus, args.steps, config)

    out = Path(config.out_dir)
    log_text = corpus.log_text()
    write_atomic(out / config.log_file, log_text)
    write_atomic(out / CORPUS_JSON, corpus.dumps() + b"\n")
    write_atomic(out / SUMMARY_JSON, _json(report.to_dict()))
    write_atomic(out / CONFIG_FILE, config.dumps())
    if args.write_golden:
        write_atomic(args.write_golden, log_text)
    print(
        f"{len(report.admitted)} admitted, {len(report.adopted)} abstractions adopted, "
        f"{len(corpus.proven)} proven"
    )
    return EXIT_OK


def _report_corpus(
    args: argparse.Namespace, config: RunConfig, events: Sequence[Event]
) -> Optional[Corpus]:
    """--corpus, else corpus.json beside the log, else a replay of the logged run."""
    if args.corpus:
        return _load_corpus(args.corpus, config)
    beside = Path(args.log).with_name(CORPUS_JSON)
    if beside.is_file():
        return _load_corpus(str(beside), config)
    return replay_corpus(events)


def cmd_report(args: argparse.Namespace) -> int:
    config = _config(args)
    events = parse_log(_read(args.log, "run log").decode("utf-8"))
    report = criteria_report(events, _report_corpus(args, config, events))
    out = Path(config.out_dir)
    write_atomic(out / CRITERIA_JSON, _json(report.to_dict()))
    rendered = report.render_text()
    write_atomic(out / CRITERIA_TEXT, rendered)
    print(rendered, end="")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _load_corpus(args.corpus, config)
    if args.format == "json":
        blob = corpus.dumps() + b"\n"
    else:
        blob = export(corpus.graph, "dot")
    target = args.output or Path(config.out_dir) / f"corpus.{args.format}"
    write_atomic(target, blob)
    print(target)
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Flat key=value run configuration")
    common.add_argument(
        "--preset",
        default="standard",
        choices=sorted(available_presets()),
        help="Budget preset used when no config file is given",
    )
    common.add_argument("--out-dir", default=None, help="Directory for artifacts")
    common.add_argument("--seed", type=int, default=None, help="Override the configured seed")
    common.add_argument("--verbose", action="store_true", help="Log phase summaries")
    return common


def _corpus_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--corpus", default=None, help="Corpus JSON (default: configured file or seed corpus)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proofgraph", description="Proof hypergraph engine and discovery experiments"
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    common = _common()

    def add(
        name: str, handler: Callable[[argparse.Namespace], int], summary: str
    ) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=summary, description=summary)
        command.set_defaults(handler=handler)
        return command

    p = add("eval", cmd_eval, "Normalize a term")
    p.add_argument("term", help="Term in surface syntax, e.g. \"(add 2 2)\"")
    p.add_argument("--fuel", type=int, default=None, help="Reduction step budget")
    _corpus_flag(p)

    p = add("typecheck", cmd_typecheck, "Infer or check the type of a term")
    p.add_argument("term", help="Term in surface syntax")
    p.add_argument("--type", default=None, help="Expected type in surface syntax")
    _corpus_flag(p)

    p = add("metrics", cmd_metrics, "Write per-node metrics as CSV")
    _corpus_flag(p)

    p = add("growth", cmd_growth, "Layer sizes of conjunction-only extension")
    p.add_argument("k", type=int, help="Number of starting atoms")
    p.add_argument("layers", type=int, help="Number of extension layers")
    p.add_argument("--override", action="store_true", help="Allow more than four layers")

    p = add("mine", cmd_mine, "Mine abstractions from exhibited terms")
    _corpus_flag(p)

    p = add("compress", cmd_compress, "Adopt abstractions and rewrite the corpus")
    p.add_argument("--rounds", type=int, default=1, help="Compression rounds")
    _corpus_flag(p)

    p = add("discover", cmd_discover, "Run the discovery loop")
    p.add_argument("--steps", type=int, default=DEFAULT_DISCOVER_STEPS, help="Loop steps")
    p.add_argument("--write-golden", default=None, help="Also write the run log to this path")
    _corpus_flag(p)

    p = add("report", cmd_report, "Evaluate the criteria on a run log")
    p.add_argument("log", help="Run log (JSON lines)")
    _corpus_flag(p)

    p = add("export", cmd_export, "Export a corpus")
    p.add_argument("--format", default="json", choices=("json", "dot"), help="Output format")
    p.add_argument("--output", default=None, help="Output path (default: in --out-dir)")
    _corpus_flag(p)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except ProofGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001
        logger.exception(f"Internal error in {args.command}")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
