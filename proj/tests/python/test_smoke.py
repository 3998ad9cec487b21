import json
import math
import os
import subprocess

import pytest

import abpf


def test_cycle_graph_and_fig1_schedule_stats():
    g = abpf.build_cycle_graph(5, 1)
    assert g.vertex_count == 5
    assert g.distance(0, 2) == 2
    sched = abpf.shifted_cycle_partitions(g, [2, 3], 5)
    assert sched.cyclic
    st = abpf.partition_stats(g, sched, 1.0)
    assert st["theta_m"] == pytest.approx([0.2] * 5)


def test_exact_filter_matches_path_oracle():
    g = abpf.build_cycle_graph(3, 1)
    m = abpf.make_uniform_mixture_model(g, 0.5, 1.0, 0.1)
    _, ys = abpf.simulate(m, 3, 11)
    mu = abpf.DenseDistribution.uniform(m.state_sizes)
    exact = abpf.exact_filter_run(m, mu, ys)
    oracle = abpf.path_oracle(m, mu, ys)
    for a, b in zip(exact, oracle):
        assert max(abs(x - y) for x, y in zip(a.probs, b.probs)) < 1e-12


def test_abpf_single_block_is_bootstrap():
    g = abpf.build_cycle_graph(4, 1)
    m = abpf.make_uniform_mixture_model(g, 0.7, 1.0, 0.2)
    _, ys = abpf.simulate(m, 5, 3)
    trivial = abpf.PartitionSchedule([abpf.Partition(4, [[0, 1, 2, 3]])])
    a = abpf.abpf_run(m, ys, trivial, 100, 9)
    b = abpf.bootstrap_run(m, ys, 100, 9)
    assert [e.states for e in a] == [e.states for e in b]


def test_bound_helpers():
    assert abpf.epsilon_threshold(3) == pytest.approx(0.9989685, abs=1e-7)
    assert abpf.theorem2_beta(1.0, 3, 1) == math.inf
    with pytest.raises(abpf.BoundDomainError):
        abpf.theorem2_beta(0.9, 3, 1)


def test_run_scenario_from_preset(tmp_path):
    text = abpf.preset_json("fig1-partial")
    spec = json.loads(text)
    spec["horizon"] = 8
    spec["particles"] = [50]
    spec["replicates"] = 2
    res = abpf.run_scenario_json(json.dumps(spec), str(tmp_path), 1)
    assert res["all_ok"]
    assert res["stats"]["theta_m"] == pytest.approx([0.25, 0.25, 0.0, 0.25, 0.25])
    assert (tmp_path / "errors.csv").exists()


def test_missing_seed_is_rejected():
    spec = json.loads(abpf.preset_json("fig1-cycle"))
    del spec["seed"]
    with pytest.raises(abpf.ScenarioError):
        abpf.run_scenario_json(json.dumps(spec))


CLI = os.environ.get("ABPF_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="ABPF_CLI not set")


@needs_cli
def test_cli_exit_codes(tmp_path):
    spec = json.loads(abpf.preset_json("fig1-cycle"))
    del spec["seed"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(spec))
    r = subprocess.run([CLI, "run", "--scenario", str(bad), "--out", str(tmp_path / "o")],
                       capture_output=True, text=True)
    assert r.returncode == 2

    r = subprocess.run([CLI, "stats", "--preset", "fig1-partial"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "0.25" in r.stdout


@needs_cli
def test_cli_run_small_scenario(tmp_path):
    spec = json.loads(abpf.preset_json("fig1-cycle"))
    spec.update(horizon=6, particles=[40], replicates=2, window=5)
    f = tmp_path / "s.json"
    f.write_text(json.dumps(spec))
    out = tmp_path / "out"
    r = subprocess.run([CLI, "run", "--scenario", str(f), "--out", str(out), "--seed", "7"],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    summary = json.loads((out / "summary.json").read_text())
    assert summary["seed"] == 7
