"""Command-line driver: flags, planning, exit codes, reproducible output."""

import json

import pytest

from chsim.cli import main, parse_args, plan_runs
from chsim.metrics import read_curve_csv
from chsim.simulator import SimConfig


class TestParsing:
    def test_run_defaults_mirror_reference_profile(self):
        inv = parse_args(["run"])
        assert inv.subcommand == "run"
        cfgs = plan_runs(inv)
        assert len(cfgs) == 1
        cfg = cfgs[0]
        assert cfg == SimConfig()
        assert cfg.arena.node_count == 190
        assert cfg.initial_energy == 3.5
        assert cfg.policy == "dchne"
        assert cfg.scenario.kind == "scenario1"
        assert cfg.cluster_count == 10
        assert cfg.max_frames == 12000

    def test_flags_reach_the_config(self):
        inv = parse_args([
            "run", "--policy", "rrch", "--scenario", "2", "--nodes", "50",
            "--clusters", "4", "--frames", "99", "--seed", "8",
            "--duty-cycle", "0.6", "--event-prob", "0.2",
            "--round-frames", "10", "--mobility", "1.5",
        ])
        cfg = plan_runs(inv)[0]
        assert cfg.policy == "rrch"
        assert cfg.scenario.kind == "scenario2"
        assert cfg.scenario.duty_cycle == 0.6
        assert cfg.scenario.event_probability == 0.2
        assert cfg.scenario.frames_per_round == 10
        assert cfg.arena.node_count == 50
        assert cfg.arena.seed == 8
        assert cfg.cluster_count == 4
        assert cfg.max_frames == 99
        assert cfg.mobility_speed == 1.5

    def test_compare_plans_three_policies_per_seed(self):
        inv = parse_args(["compare", "--seeds", "1..10", "--scenario", "2"])
        cfgs = plan_runs(inv)
        assert len(cfgs) == 30
        assert {c.policy for c in cfgs} == {"dchne", "leach", "rrch"}
        assert {c.arena.seed for c in cfgs} == set(range(1, 11))
        assert all(c.scenario.kind == "scenario2" for c in cfgs)
        # matched environments: same seed means identical arena across policies
        by_seed = {}
        for c in cfgs:
            by_seed.setdefault(c.arena.seed, set()).add(c.arena)
        assert all(len(arenas) == 1 for arenas in by_seed.values())

    def test_sweep_covers_node_range(self):
        cfgs = plan_runs(parse_args(["sweep", "--nodes", "10..40..10", "--seeds", "0..1"]))
        assert len(cfgs) == 8
        assert sorted({c.arena.node_count for c in cfgs}) == [10, 20, 30, 40]

    def test_sweep_has_default_node_range(self):
        cfgs = plan_runs(parse_args(["sweep"]))
        assert len(cfgs) == 20
        assert min(c.arena.node_count for c in cfgs) == 10
        assert max(c.arena.node_count for c in cfgs) == 200

    def test_range_syntax(self):
        assert parse_args(["compare", "--seeds", "5"]).seeds == (5,)
        assert parse_args(["compare", "--seeds", "1..4"]).seeds == (1, 2, 3, 4)
        assert parse_args(["compare", "--seeds", "10..50..20"]).seeds == (10, 30, 50)


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["run", "--policy", "bogus"],
            ["run", "--seeds", "1..5"],
            ["run", "--seed", "1", "--seeds", "2..3"],
            ["run", "--nodes", "10..50"],
            ["compare", "--policy", "leach"],
            ["compare", "--seeds", "5..1"],
            ["compare", "--seeds", "1..9..0"],
            ["sweep", "--nodes", "ten"],
            ["run", "--format", "yaml"],
            ["teleport"],
            [],
        ],
    )
    def test_bad_invocations_exit_one(self, argv, capsys):
        assert main(argv) == 1
        assert capsys.readouterr().err

    def test_bogus_policy_message_lists_choices(self, capsys):
        main(["run", "--policy", "bogus"])
        err = capsys.readouterr().err
        assert "dchne" in err and "leach" in err and "rrch" in err

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "run" in capsys.readouterr().out
        assert main(["run", "--help"]) == 0
        assert "--policy" in capsys.readouterr().out


class TestExecution:
    def test_zero_frame_run_exports_header_only(self, tmp_path):
        out = tmp_path / "trace.csv"
        assert main(["run", "--frames", "0", "--out", str(out)]) == 0
        assert out.read_bytes() == b"frame,alive,packets_cum,chn_count\n"

    def test_run_writes_curve_rows(self, tmp_path):
        out = tmp_path / "trace.csv"
        code = main(["run", "--nodes", "15", "--clusters", "2", "--frames", "40",
                     "--seed", "4", "--out", str(out)])
        assert code == 0
        rows = read_curve_csv(out)
        assert len(rows) == 40
        assert rows[0][1] == 15

    def test_repeat_invocations_are_byte_identical(self, tmp_path):
        argv = ["run", "--nodes", "15", "--clusters", "2", "--frames", "60",
                "--seed", "9", "--format", "json"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_compare_single_seed_gives_two_baseline_rows(self, tmp_path):
        out = tmp_path / "table.csv"
        code = main(["compare", "--nodes", "15", "--clusters", "2", "--frames", "40",
                     "--seed", "2", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "scenario,seed,baseline,packets_delta,lifetime_delta"
        assert len(lines) == 3
        assert [line.split(",")[2] for line in lines[1:]] == ["leach", "rrch"]

    def test_sweep_exports_one_summary_per_run(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = main(["sweep", "--nodes", "10..20..5", "--clusters", "2",
                     "--frames", "30", "--seed", "1", "--format", "json",
                     "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert [d["nodes"] for d in data] == [10, 15, 20]

    def test_stdout_is_default_destination(self, capsysbinary):
        assert main(["run", "--frames", "0"]) == 0
        assert capsysbinary.readouterr().out == b"frame,alive,packets_cum,chn_count\n"

    def test_config_file_provides_base_values(self, tmp_path):
        config = tmp_path / "profile.json"
        config.write_text(json.dumps({
            "arena": {"node_count": 18, "seed": 7},
            "cluster_count": 3,
            "scenario": {"kind": "scenario2", "event_probability": 0.25},
            "max_frames": 25,
        }))
        inv = parse_args(["run", "--config", str(config), "--clusters", "2"])
        cfg = plan_runs(inv)[0]
        assert cfg.arena.node_count == 18
        assert cfg.arena.seed == 7  # file seed survives when no flag overrides it
        assert cfg.cluster_count == 2  # flag beats file
        assert cfg.scenario.event_probability == 0.25
        assert cfg.max_frames == 25

    def test_unknown_config_key_is_runtime_error(self, tmp_path, capsys):
        config = tmp_path / "bad.json"
        config.write_text(json.dumps({"antenna_gain": 3}))
        assert main(["run", "--config", str(config)]) == 2
        assert "antenna_gain" in capsys.readouterr().err

    def test_missing_config_file_is_runtime_error(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.json")]) == 2

    def test_unwritable_output_is_runtime_error(self, capsys):
        code = main(["run", "--frames", "0", "--out", "/nonexistent-dir/x.csv"])
        assert code == 2
        assert capsys.readouterr().err

    def test_invalid_config_combination_is_runtime_error(self, capsys):
        assert main(["run", "--nodes", "5", "--clusters", "9", "--frames", "1"]) == 2
        assert "cluster count" in capsys.readouterr().err
