"""Head-election policies on matched environments.

Runs all three election policies over the same placements, seeds and
traffic, then prints per-seed results and the aggregate comparison
table.  Matched environments are the whole point: a seed's placement and
event stream are identical across policies, so every difference comes
from who gets elected.  Run with ``python3 demos/policy_comparison.py``.
"""

import numpy as np

from chsim import (
    ArenaConfig,
    POLICIES,
    ScenarioConfig,
    SimConfig,
    compare,
    run,
    summarize,
)

SEEDS = (0, 1, 2)


def main():
    summaries = []
    print(f"{'policy':>7} {'seed':>4} {'packets':>9} {'first death':>12} "
          f"{'last death':>11}")
    for seed in SEEDS:
        for policy in POLICIES:
            cfg = SimConfig(arena=ArenaConfig(seed=seed), policy=policy,
                            scenario=ScenarioConfig(kind="scenario1"))
            summary = summarize(run(cfg))
            summaries.append(summary)
            print(f"{policy:>7} {seed:>4} {summary.total_packets:>9} "
                  f"{summary.first_death_frame!s:>12} "
                  f"{summary.all_dead_frame!s:>11}")

    table = compare(summaries)
    print("\n=== residual-energy election vs each baseline, per seed ===")
    for row in table.rows:
        print(f"seed {row.seed}: vs {row.baseline:<6} "
              f"packets {row.packets_delta:>+8}  lifetime {row.lifetime_delta:>+6}")

    print("\n=== aggregates over seeds ===")
    for agg in table.aggregates:
        print(f"vs {agg.baseline:<6} {agg.metric:<9} mean {agg.mean:>+10.1f}  "
              f"min {agg.min:>+8}  max {agg.max:>+8}")

    print()
    print("Reading the table: electing on residual energy wins delivered")
    print("packets on every seed and keeps the fleet at full strength about")
    print("three times longer (first-death column).  Its last survivor dies")
    print("earlier, though — balanced depletion retires everyone together,")
    print("while the baselines' broken clusters idle and stretch their")
    print("remaining charge.  Pick the endpoint that matches your failure")
    print("model before quoting a single 'lifetime' number.")


if __name__ == "__main__":
    main()
