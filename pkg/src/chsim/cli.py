"""Command-line driver: single runs, policy comparison matrices, node sweeps.

Exit codes: 0 success, 1 usage error, 2 runtime or I/O error.  All
stochastic streams derive from the per-run seed, so repeating an
invocation reproduces its output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .metrics import compare, export, summarize
from .simulator import POLICIES, SimConfig, config_from_dict, run

__all__ = ["CliInvocation", "parse_args", "plan_runs", "execute", "main"]

_SCENARIO_NAMES = {
    "1": "scenario1",
    "2": "scenario2",
    "scenario1": "scenario1",
    "scenario2": "scenario2",
}
DEFAULT_SWEEP_NODES = "10..200..10"


class UsageError(Exception):
    """Bad flags or flag combinations; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_range(text: str) -> tuple[int, ...]:
    """Parse ``"a"``, ``"a..b"`` or ``"a..b..step"`` into an inclusive
    tuple of integers."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            return (int(parts[0]),)
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
            step = 1
        elif len(parts) == 3:
            lo, hi = int(parts[0]), int(parts[1])
            step = int(parts[2])
        else:
            raise ValueError
        if step < 1 or hi < lo:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected N, A..B or A..B..STEP with A <= B and STEP >= 1, got {text!r}"
        ) from None
    return tuple(range(lo, hi + 1, step))


@dataclass(frozen=True)
class CliInvocation:
    """Everything one invocation asked for, after flag parsing."""

    subcommand: str
    policy: str | None
    scenario: str | None
    nodes: tuple[int, ...] | None
    clusters: int | None
    frames: int | None
    seeds: tuple[int, ...] | None
    config_path: str | None
    out: str | None
    format: str
    duty_cycle: float | None
    event_prob: float | None
    round_frames: int | None
    mobility: float | None


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="chsim",
        description="Simulate cluster-head election policies in a wireless sensor network.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    specs = {
        "run": "run one simulation and export its trace",
        "compare": "run every policy on matched environments and export the delta table",
        "sweep": "repeat runs across a range of node counts and export the summaries",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--policy", choices=POLICIES, help="election policy (default dchne)")
        p.add_argument("--scenario", choices=sorted(_SCENARIO_NAMES),
                       help="traffic model: 1 = saturated, 2 = duty-cycled random events")
        p.add_argument("--nodes", type=_int_range, metavar="N|A..B[..STEP]",
                       help="node count (sweep accepts a range)")
        p.add_argument("--clusters", type=int, help="cluster count")
        p.add_argument("--frames", type=int, help="maximum frames to simulate")
        p.add_argument("--seed", type=int, help="single seed")
        p.add_argument("--seeds", type=_int_range, metavar="A..B[..STEP]",
                       help="seed range for multi-run subcommands")
        p.add_argument("--config", dest="config_path", metavar="FILE",
                       help="JSON config file; explicit flags override its values")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="export format (default csv)")
        p.add_argument("--duty-cycle", type=float, dest="duty_cycle",
                       help="fraction of frames a node is awake (scenario 2)")
        p.add_argument("--event-prob", type=float, dest="event_prob",
                       help="per-frame event probability (scenario 2)")
        p.add_argument("--round-frames", type=int, dest="round_frames",
                       help="frames between elections")
        p.add_argument("--mobility", type=float, help="node speed in m/frame (default 0)")
    return parser


def parse_args(argv=None) -> CliInvocation:
    """Parse ``argv`` into an invocation, raising :class:`UsageError`
    (never exiting) on bad input; ``--help`` still exits 0."""
    ns = _build_parser().parse_args(argv)
    if ns.seed is not None and ns.seeds is not None:
        raise UsageError("--seed and --seeds conflict; give one of them")
    if ns.subcommand == "run" and ns.seeds is not None and len(ns.seeds) != 1:
        raise UsageError("run simulates a single seed; use compare or sweep for ranges")
    if ns.subcommand == "compare" and ns.policy is not None:
        raise UsageError("compare always runs every policy; --policy conflicts with it")
    seeds = ns.seeds if ns.seeds is not None else ((ns.seed,) if ns.seed is not None else None)
    if ns.nodes is not None and ns.subcommand != "sweep" and len(ns.nodes) != 1:
        raise UsageError(f"{ns.subcommand} takes a single --nodes value; ranges are for sweep")
    return CliInvocation(
        subcommand=ns.subcommand,
        policy=ns.policy,
        scenario=ns.scenario,
        nodes=ns.nodes,
        clusters=ns.clusters,
        frames=ns.frames,
        seeds=None if seeds is None else tuple(seeds),
        config_path=ns.config_path,
        out=ns.out,
        format=ns.format,
        duty_cycle=ns.duty_cycle,
        event_prob=ns.event_prob,
        round_frames=ns.round_frames,
        mobility=ns.mobility,
    )


def _config_for(inv: CliInvocation, seed: int, policy=None, nodes=None) -> SimConfig:
    """Materialize one run's config: file values first, flags on top."""
    if inv.config_path:
        data = json.loads(Path(inv.config_path).read_text())
        if not isinstance(data, dict):
            raise ValueError(f"config file {inv.config_path} must hold a JSON object")
        data = {k: (dict(v) if isinstance(v, dict) else v) for k, v in data.items()}
    else:
        data = {}

    def put(section, key, value):
        if value is not None:
            data.setdefault(section, {})[key] = value

    put("arena", "node_count", nodes if nodes is not None else
        (inv.nodes[0] if inv.nodes else None))
    put("arena", "seed", seed)
    put("scenario", "kind", _SCENARIO_NAMES[inv.scenario] if inv.scenario else None)
    put("scenario", "duty_cycle", inv.duty_cycle)
    put("scenario", "event_probability", inv.event_prob)
    put("scenario", "frames_per_round", inv.round_frames)
    if policy is not None:
        data["policy"] = policy
    elif inv.policy is not None:
        data["policy"] = inv.policy
    if inv.clusters is not None:
        data["cluster_count"] = inv.clusters
    if inv.frames is not None:
        data["max_frames"] = inv.frames
    if inv.mobility is not None:
        data["mobility_speed"] = inv.mobility
    return config_from_dict(data)


def plan_runs(inv: CliInvocation) -> list[SimConfig]:
    """The full, deterministically ordered list of runs an invocation
    implies (ordered by policy, then seed, then node count)."""
    seeds = inv.seeds if inv.seeds is not None else (None,)
    if inv.subcommand == "run":
        return [_config_for(inv, seed=seeds[0])]
    if inv.subcommand == "compare":
        return [
            _config_for(inv, seed=seed, policy=policy)
            for policy in POLICIES
            for seed in seeds
        ]
    node_counts = inv.nodes if inv.nodes is not None else _int_range(DEFAULT_SWEEP_NODES)
    return [
        _config_for(inv, seed=seed, nodes=n)
        for n in node_counts
        for seed in seeds
    ]


def execute(inv: CliInvocation) -> int:
    """Run the planned simulations and export the artifact for the
    subcommand: a trace (run), a comparison table (compare), or the
    summary list (sweep)."""
    configs = plan_runs(inv)
    if inv.subcommand == "run":
        artifact = run(configs[0])
    elif inv.subcommand == "compare":
        artifact = compare([summarize(run(cfg)) for cfg in configs])
    else:
        artifact = [summarize(run(cfg)) for cfg in configs]
    destination = inv.out if inv.out is not None else sys.stdout.buffer
    export(artifact, inv.format, destination)
    return 0


def main(argv=None) -> int:
    try:
        inv = parse_args(argv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except SystemExit as err:  # argparse --help
        return 0 if (err.code or 0) == 0 else 1
    try:
        return execute(inv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
