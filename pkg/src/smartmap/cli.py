"""``smartmap`` command line: map / check / decide / trace / oracle.

Exit codes: 0 success (converged, survivable, proven, found), 1 negative
answer (stuck, not survivable, refuted, not exists), 2 undecided within
budget, 3 input or validation error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .formats import ParseError, contracted_to_dict, emit_mapping, parse_mapping, parse_topology
from .mapping import MappingError
from .oracle import DEFAULT_MAX_COMBINATIONS, DEFAULT_MAX_PATHS, FOUND, NOT_EXISTS, oracle_exists
from .smart import KINDS, PROVEN, REFUTED, Strategy, decide_existence, run, trace_vulnerability
from .survivability import is_k_survivable
from .topology import TopologyError
from .validation import check_instance, check_k, check_mapping

SCHEMA = 1
EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

logger = logging.getLogger("smartmap")


@dataclass
class RunConfig:
    subcommand: str
    input: Path
    k: int = 1
    mapping: Optional[Path] = None
    out: Optional[Path] = None
    seed: int = 0
    strategy: Optional[str] = None
    max_paths: Optional[int] = None
    max_combos: Optional[int] = None
    format: str = "text"
    verify: bool = True

    def smart_strategy(self) -> Strategy:
        budget = {"seed": self.seed}
        if self.subcommand in ("map", "trace"):
            if self.max_paths is not None:
                budget["max_paths"] = self.max_paths
            if self.max_combos is not None:
                budget["max_combinations"] = self.max_combos
        if self.strategy is None:
            return Strategy.for_k(self.k, **budget)
        return Strategy(kind=self.strategy, **budget)

    def oracle_caps(self) -> tuple:
        return (self.max_paths if self.max_paths is not None else DEFAULT_MAX_PATHS,
                self.max_combos if self.max_combos is not None else DEFAULT_MAX_COMBINATIONS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smartmap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in [
        ("map", "run k-SMART and write the mapping plus a JSON run log"),
        ("check", "verify that a mapping file is k-survivable"),
        ("decide", "prove or refute existence of a k-survivable mapping"),
        ("trace", "report the vulnerable part of the network as JSON"),
        ("oracle", "exhaustive search on the full instance"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="input", required=True, type=Path)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--mapping", type=Path, required=(name == "check"))
        p.add_argument("--out", type=Path)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--strategy", choices=KINDS)
        p.add_argument("--max-paths", type=int)
        p.add_argument("--max-combos", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--no-verify", dest="verify", action="store_false")
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _report(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        sys.stdout.write(_dump({"schema": SCHEMA, **payload}))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _write_mapping(cfg: RunConfig, mapping) -> None:
    if cfg.out is not None:
        cfg.out.write_text(emit_mapping(mapping), encoding="utf-8")


def _cmd_map(cfg, physical, logical) -> int:
    outcome = run(physical, logical, cfg.k, cfg.smart_strategy(), cfg.verify)
    log = {"schema": SCHEMA, **outcome.as_dict()}
    if cfg.out is not None:
        cfg.out.write_text(emit_mapping(outcome.mapping), encoding="utf-8")
        cfg.out.with_name(cfg.out.name + ".log.json").write_text(_dump(log), encoding="utf-8")
    if cfg.format == "json":
        sys.stdout.write(_dump({**log, "mapping": outcome.mapping.edge_lists()}))
    else:
        if cfg.out is None:
            sys.stdout.write(emit_mapping(outcome.mapping))
        state = outcome.status + (" (budget limited)" if outcome.budget_limited else "")
        sys.stderr.write(f"{state}: {len(outcome.mapping)}/{len(logical.edges)} links mapped "
                         f"in {len(outcome.iterations)} iterations\n")
    if outcome.converged:
        return EXIT_OK
    return EXIT_UNKNOWN if outcome.budget_limited else EXIT_NO


def _cmd_check(cfg, physical, logical) -> int:
    text = cfg.mapping.read_text(encoding="utf-8")
    mapping = check_mapping(parse_mapping(text, logical, physical), logical, physical, total=True)
    verdict = is_k_survivable(logical, mapping, cfg.k, physical)
    if verdict.survivable:
        msg = f"survivable: no failure of {cfg.k} physical link(s) disconnects the logical topology"
    else:
        parts = " | ".join(" ".join(c) for c in verdict.components)
        msg = (f"NOT survivable: failing {' '.join(verdict.witness.edges)} "
               f"splits the logical topology into {parts}")
    _report(cfg, verdict.as_dict(cfg.k), msg)
    return EXIT_OK if verdict.survivable else EXIT_NO


def _cmd_decide(cfg, physical, logical) -> int:
    decision = decide_existence(physical, logical, cfg.k, cfg.smart_strategy(),
                                *cfg.oracle_caps(), verify=cfg.verify)
    payload = {"decision": decision.status, "k": cfg.k, "reason": decision.reason,
               "oracle_calls": decision.oracle_calls, "escalated": decision.escalated}
    if decision.status == PROVEN:
        _write_mapping(cfg, decision.mapping)
        payload["mapping"] = decision.mapping.edge_lists()
        text = f"proven: a {cfg.k}-survivable mapping exists\n" + emit_mapping(decision.mapping)
    else:
        payload["remaining"] = contracted_to_dict(decision.remaining)
        payload["trace"] = trace_vulnerability(decision.outcome)
        trace = payload["trace"]
        text = (f"{decision.status}: {decision.reason}\n"
                f"unmapped links: {' '.join(trace['unmapped_links'])}\n"
                + "".join(f"vertex {v['vertex']}: {' '.join(v['origin_nodes'])}\n"
                          for v in trace["remaining_vertices"]))
    _report(cfg, payload, text)
    return {PROVEN: EXIT_OK, REFUTED: EXIT_NO}.get(decision.status, EXIT_UNKNOWN)


def _cmd_trace(cfg, physical, logical) -> int:
    outcome = run(physical, logical, cfg.k, cfg.smart_strategy(), cfg.verify)
    if outcome.converged:
        report = {"schema": SCHEMA, "status": outcome.status, "k": cfg.k}
    else:
        report = trace_vulnerability(outcome)
    body = _dump(report)
    if cfg.out is not None:
        cfg.out.write_text(body, encoding="utf-8")
    sys.stdout.write(body)
    if outcome.converged:
        return EXIT_OK
    return EXIT_UNKNOWN if outcome.budget_limited else EXIT_NO


def _cmd_oracle(cfg, physical, logical) -> int:
    result = oracle_exists(physical, logical, cfg.k, *cfg.oracle_caps())
    payload = {"status": result.status, "k": cfg.k, "stats": result.stats.as_dict()}
    text = result.status
    if result.found:
        _write_mapping(cfg, result.mapping)
        payload["mapping"] = result.mapping.edge_lists()
        text += "\n" + emit_mapping(result.mapping)
    _report(cfg, payload, text)
    return {FOUND: EXIT_OK, NOT_EXISTS: EXIT_NO}.get(result.status, EXIT_UNKNOWN)


COMMANDS = {"map": _cmd_map, "check": _cmd_check, "decide": _cmd_decide,
            "trace": _cmd_trace, "oracle": _cmd_oracle}


def execute(cfg: RunConfig) -> int:
    try:
        cfg.k = check_k(cfg.k)
        physical, logical = check_instance(*parse_topology(cfg.input.read_text(encoding="utf-8")))
        for cap in (cfg.max_paths, cfg.max_combos):
            if cap is not None and cap < 1:
                raise ValueError("caps must be at least 1")
        cfg.smart_strategy().check_k(cfg.k)
        return COMMANDS[cfg.subcommand](cfg, physical, logical)
    except (OSError, ParseError, TopologyError, MappingError, ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = RunConfig(**vars(args))
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
