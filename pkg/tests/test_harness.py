import json
import math

import numpy as np
import pytest

from bellmark.errors import InvalidInputError
from bellmark.harness import (
    ExperimentConfig,
    record_from_json,
    run_experiment,
    sweep_and_fit,
    to_csv,
    to_json,
)
from bellmark.noise import fit_scaling


def test_config_validation():
    with pytest.raises(InvalidInputError):
        ExperimentConfig(device="falcon-7", family="xx", n=3, L=10)
    with pytest.raises(InvalidInputError):
        ExperimentConfig(device="falcon-7", family="lc", n=3, L=0)
    with pytest.raises(InvalidInputError):
        ExperimentConfig(device="falcon-7", family="lc", n=3, L=10, noise="global:1.5")
    with pytest.raises(InvalidInputError):
        ExperimentConfig(device="falcon-7", family="lc", n=3, L=10, noise="banana")


def test_noiseless_estimate_equals_M():
    for family, n in [("lc", 3), ("ghz", 4)]:
        cfg = ExperimentConfig(
            device="falcon-7", family=family, n=n, L=60, repetitions=2,
            noise="off", master_seed=5,
        )
        rec = run_experiment(cfg)
        for row in rec.repetitions:
            assert row["estimate"] == float(rec.M)
            assert all(b == 1 for b in row["outcomes"])
            assert row["p_value_bound"] < 1.0


def test_lc_path_too_long_raises():
    with pytest.raises(InvalidInputError):
        run_experiment(ExperimentConfig(device="falcon-7", family="lc", n=6, L=5))


def test_global_depolarization_statistics():
    cfg = ExperimentConfig(
        device="ion-trap-20", family="lc", n=6, L=4000, repetitions=5,
        noise="global:0.5", master_seed=9,
    )
    rec = run_experiment(cfg)
    se = math.sqrt((1 - 0.25) / (4000 * 5))
    assert abs(rec.aggregate["mean_over_q"] - 0.5) < 4 * se


def test_determinism_same_seed_same_record():
    cfg = ExperimentConfig(device="falcon-7", family="ghz", n=4, L=40,
                           repetitions=3, master_seed=21)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert a.repetitions == b.repetitions
    assert to_csv(a) == to_csv(b)


def test_worker_count_does_not_change_csv():
    cfg = ExperimentConfig(device="falcon-7", family="lc", n=3, L=80,
                           repetitions=4, master_seed=33)
    assert to_csv(run_experiment(cfg, workers=1)) == to_csv(run_experiment(cfg, workers=3))


def test_different_seeds_differ():
    base = dict(device="falcon-7", family="ghz", n=4, L=40, repetitions=2)
    a = run_experiment(ExperimentConfig(master_seed=1, **base))
    b = run_experiment(ExperimentConfig(master_seed=2, **base))
    assert a.repetitions != b.repetitions


def test_record_json_round_trip():
    cfg = ExperimentConfig(device="star-5", family="ghz", n=3, L=20,
                           repetitions=2, master_seed=4)
    rec = run_experiment(cfg)
    again = record_from_json(to_json(rec))
    assert again.config == rec.config
    assert again.repetitions == rec.repetitions
    assert again.M == rec.M
    assert json.loads(to_json(rec)) == json.loads(to_json(again))


def test_csv_shape_and_content():
    cfg = ExperimentConfig(device="star-5", family="ghz", n=3, L=20,
                           repetitions=3, master_seed=4)
    rec = run_experiment(cfg)
    lines = to_csv(rec).splitlines()
    assert lines[0] == "n,family,repetition,estimate,estimate_over_Q,p_bound,seed"
    assert len(lines) == 1 + 3
    assert lines[1].startswith("3,ghz,0,")


def test_outcomes_are_pm_one_and_estimate_bounded():
    cfg = ExperimentConfig(device="falcon-7", family="lc", n=3, L=50,
                           repetitions=2, master_seed=8)
    rec = run_experiment(cfg)
    for row in rec.repetitions:
        assert set(row["outcomes"]) <= {-1, 1}
        assert abs(row["estimate"]) <= rec.M
        assert len(row["indices"]) == 50


def test_device_noise_monotone_in_rate_scaling(tmp_path):
    # estimate/Q decreases when all rates are scaled x0 -> x1 -> x2
    from bellmark.devices import load_preset

    base = load_preset("ion-trap-20").to_json_dict()
    means = []
    for scale in (0.0, 1.0, 2.0):
        payload = dict(base)
        payload["noise"] = {"p1": 2e-3 * scale, "p2": 8e-3 * scale, "pr": 2e-2 * scale}
        f = tmp_path / f"scaled-{scale}.json"
        f.write_text(json.dumps(payload))
        cfg = ExperimentConfig(device=str(f), family="lc", n=6, L=600,
                               repetitions=4, master_seed=12)
        means.append(run_experiment(cfg).aggregate["mean_over_q"])
    assert means[0] == 1.0
    assert means[0] > means[1] > means[2]


def test_known_alpha_recovered_from_device_sweep():
    # inject a known decay via per-size global depolarization and re-fit it
    slope = 0.1
    points = []
    for n in (3, 6, 9, 12, 15):
        alpha = math.exp(-slope * n)
        cfg = ExperimentConfig(device="ion-trap-20", family="lc", n=n, L=2000,
                               repetitions=3, master_seed=7, noise=f"global:{alpha}")
        rec = run_experiment(cfg)
        points.append((n, rec.aggregate["mean_over_q"]))
    model = fit_scaling(points, "log-linear")
    assert abs(model.b - slope) < 0.01


def test_sweep_and_fit_forms():
    cfg = ExperimentConfig(device="ion-trap-20", family="lc", n=3, L=150,
                           repetitions=2, master_seed=3, noise="global:0.8")
    with pytest.raises(InvalidInputError):
        sweep_and_fit(cfg, [3])  # below the two-point minimum for a line fit
    result = sweep_and_fit(cfg, [3, 6, 9])
    assert result.model.form == "log-linear"
    assert len(result.records) == 3
    assert [r.config["n"] for r in result.records] == [3, 6, 9]

    gcfg = ExperimentConfig(device="ion-trap-20", family="ghz", n=3, L=150,
                            repetitions=2, master_seed=3, noise="global:0.8")
    with pytest.raises(InvalidInputError):
        sweep_and_fit(gcfg, [3, 6])  # quadratic fit needs three sizes
    gresult = sweep_and_fit(gcfg, [3, 5, 7])
    assert gresult.model.form == "log-quadratic"


def test_ghz_on_device_runs_and_violates():
    cfg = ExperimentConfig(device="eagle-127", family="ghz", n=6, L=200,
                           repetitions=2, master_seed=13)
    rec = run_experiment(cfg)
    assert rec.aggregate["mean_estimate"] > rec.C
    assert len(rec.qubits) == 6
