"""
Command-line front end.

    python -m app.cli report --structure artin:A3
    python -m app.cli pd-experiment --structure artin:A3 --k 10 20 40 80 --samples 2000 --seed 7
    python -m app.cli verify --heavy

Tabular commands write CSV (header row, LF line endings) or JSON; `acceptor`
also has a plain digraph text format.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ValidationError

from .core.config import GARSIDE_HEAVY
from .core.debug import set_log_level
from .core.errors import GarsideError
from .garside.analysis import (alpha_beta_model, build_report, delta_pure_report, essential_names, growth_report,
                               run_pd_experiment, transitivity_report, verify_all)
from .garside.artin import transitivity_theorem_harness
from .garside.descriptors import parse_descriptor
from .garside.langgraph import build_acceptor, count_sequence, export_digraph, rigid_sequence, sample_uniform
from .garside.penetration import build_pi
from .models.models import ExperimentConfig, ReportResponse

logger = logging.getLogger(__name__)

Output = Union[BaseModel, List[Dict[str, Any]], str]


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return value


def _csv(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows({key: _cell(value) for key, value in row.items()} for row in rows)
    return buffer.getvalue()


def render_output(result: Output, fmt: str) -> str:
    if isinstance(result, str):
        return result
    if fmt == "json":
        if isinstance(result, BaseModel):
            return result.model_dump_json(indent=2) + "\n"
        return json.dumps(result, indent=2, ensure_ascii=False) + "\n"
    rows = [result.model_dump()] if isinstance(result, BaseModel) else result
    return _csv(rows)


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _single_k(args, default: int) -> int:
    return args.k[-1] if args.k else default


# -- commands ---------------------------------------------------------------------------


def cmd_report(args) -> Output:
    return build_report(args.structure, counts_up_to=_single_k(args, 8), cap=args.cap)


def cmd_acceptor(args) -> Output:
    graph = build_acceptor(parse_descriptor(args.structure), cap=args.cap)
    if args.format == "text":
        return export_digraph(graph)
    return [{"source": graph.display(x), "target": graph.display(y)}
            for x in graph.vertices for y in graph.vertices if graph.has_edge(x, y)]


def cmd_growth(args) -> Output:
    return growth_report(args.structure, k=_single_k(args, 12), cap=args.cap)


def cmd_diameter(args) -> Output:
    if args.structure:
        return transitivity_report(args.structure, cap=args.cap)
    return [{"type": row.type_name, "transitive": row.transitive, "diameter": row.diameter,
             "expected": row.expected, "passed": row.passed}
            for row in transitivity_theorem_harness(heavy=args.heavy)]


def cmd_essential(args) -> Output:
    structure = parse_descriptor(args.structure)
    return [{"element": name} for name in essential_names(structure, build_acceptor(structure, cap=args.cap))]


def cmd_rigid(args) -> Output:
    graph = build_acceptor(parse_descriptor(args.structure), cap=args.cap)
    k = _single_k(args, 8)
    words, rigid = count_sequence(graph, k), rigid_sequence(graph, k)
    return [{"k": j, "words": str(words[j]), "rigid": str(rigid[j - 1])} for j in range(1, k + 1)]


def cmd_pseq(args) -> Output:
    k = _single_k(args, 12)
    if args.format == "json":
        return alpha_beta_model(args.structure, k=k, cap=args.cap)
    structure = parse_descriptor(args.structure)
    pi, graph = build_pi(structure, cap=args.cap), build_acceptor(structure, cap=args.cap)
    pseq, words = count_sequence(pi, k), count_sequence(graph, k)
    return [{"k": j, "pseq": str(pseq[j]), "words": str(words[j])} for j in range(1, k + 1)]


def cmd_delta_pure(args) -> Output:
    return delta_pure_report(args.structure)


def cmd_pd_experiment(args) -> Output:
    config = ExperimentConfig(structure=args.structure, k_values=args.k or [10, 20, 40, 80],
                              samples=args.samples, seed=args.seed, out=args.out,
                              format="json" if args.format == "json" else "csv")
    rows = run_pd_experiment(config)
    return [row.model_dump() for row in rows]


def cmd_verify(args) -> Output:
    report = verify_all(heavy=args.heavy, witnesses_path=args.witnesses)
    args.exit_code = 0 if report.passed else 1
    if args.format == "json":
        return report
    return "".join(line.render() + "\n" for line in report.lines)


def cmd_sample(args) -> Output:
    graph = build_acceptor(parse_descriptor(args.structure), cap=args.cap)
    k = _single_k(args, 5)
    return [{"index": i, "word": " | ".join(graph.display(x) for x in sample_uniform(graph, k, args.seed, i))}
            for i in range(args.samples)]


def cmd_schema(args) -> Output:
    return json.dumps(ReportResponse.model_json_schema(), indent=2, ensure_ascii=False) + "\n"


COMMANDS = {
    "report": (cmd_report, "Acceptor statistics, Ess, transitivity, growth and Δ-purity (JSON)", True),
    "acceptor": (cmd_acceptor, "Edges of the acceptor Γ", True),
    "growth": (cmd_growth, "Growth rate and polynomial degree of L and of its ball", True),
    "diameter": (cmd_diameter, "Essential transitivity of one structure, or the diameter harness", False),
    "essential": (cmd_essential, "Essential elements", True),
    "rigid": (cmd_rigid, "Word and rigid counts up to k", True),
    "pseq": (cmd_pseq, "Penetration-sequence counts, or α/β with --format json", True),
    "delta-pure": (cmd_delta_pure, "Δ_a for every atom", True),
    "pd-experiment": (cmd_pd_experiment, "Sample pd(x, a) for x uniform in L^(k)", True),
    "verify": (cmd_verify, "Run the verification suite; exit code 1 on any failure", False),
    "sample": (cmd_sample, "Uniformly sampled normal words of length k", True),
    "schema": (cmd_schema, "JSON schema of the report", False),
}

DEFAULT_FORMATS = {"report": "json", "acceptor": "text", "growth": "json", "delta-pure": "json",
                   "verify": "text", "pseq": "csv"}
DEFAULT_SAMPLES = {"pd-experiment": 2000}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json", "text"], default=None,
                        help="Output format (default depends on the command)")
    common.add_argument("--out", default=None, help="Output path; standard output when omitted")
    common.add_argument("--cap", type=int, default=None, help="Materialization cap for simples")
    common.add_argument("--k", type=int, nargs="+", default=None, help="Length(s) k")
    common.add_argument("--samples", type=int, default=None,
                        help="Samples per k (2000 for pd-experiment, otherwise 1)")
    common.add_argument("--seed", type=int, default=0, help="Seed of the per-sample random streams")
    common.add_argument("--heavy", action="store_true", default=GARSIDE_HEAVY,
                        help="Include heavy checks (E6 diameter, E7/E8 witnesses, large Π automata)")
    common.add_argument("--witnesses", default=None, help="Witness catalog JSON for verify")
    common.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        type=str.upper)

    parser = argparse.ArgumentParser(prog="garside", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, needs_structure) in COMMANDS.items():
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--structure", required=needs_structure, default=None,
                         help="Structure descriptor, e.g. artin:A3, table:aa_bb.json, prod:artin:A2,artin:A2")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_log_level(args.log_level)
    args.format = args.format or DEFAULT_FORMATS.get(args.command, "csv")
    if args.samples is None:
        args.samples = DEFAULT_SAMPLES.get(args.command, 1)
    args.exit_code = 0
    handler = COMMANDS[args.command][0]
    try:
        text = render_output(handler(args), args.format)
    except (GarsideError, ValidationError) as e:
        logger.error(f"{args.command} failed: {str(e)}")
        return 2
    write_output(text, args.out)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
