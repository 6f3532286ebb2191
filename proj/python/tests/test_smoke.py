import math
import os

import pytest

import ppekit

CONFIGS = os.path.join(os.path.dirname(__file__), "..", "..", "configs")


def test_pd_fixture_numbers():
    res = ppekit.analyze(ppekit.modified_pd(), delta=0.8)
    assert res["lambda"] == pytest.approx([0.25, 0.25])
    assert res["alpha"][0][1] == pytest.approx(5 / 3)
    assert res["alpha"][0][0] is None
    assert math.isinf(res["beta"][0][1])
    assert res["mu_min"] == pytest.approx([4 / 3, 4 / 3])
    assert res["delta_min"] == pytest.approx(7 / 9)
    assert all(res[f"cond{k}"]["pass"] for k in range(1, 5))
    assert res["regular"]


def test_validate_flags_undetectable_deviation():
    ok = ppekit.validate(ppekit.modified_pd())
    assert ok["all_pass"]
    bad = ppekit.validate(ppekit.modified_pd(q=0.5, r=0.5, check=False))
    assert not bad["a4"]["pass"]
    assert "i=1, j=2" in bad["a4"]["witness"]


def test_constraint_violation_raises():
    with pytest.raises(ppekit.PpekitError, match="ParameterConstraintViolated"):
        ppekit.modified_pd(q=0.5, r=0.5)


def test_table3_is_infeasible():
    with pytest.raises(ppekit.PpekitError, match="Condition 3 infeasible"):
        ppekit.analyze(ppekit.table3())


def test_engine_run_keeps_hyperplane():
    eq = ppekit.Equilibrium(ppekit.modified_pd(), 0.8, v0=[2.0, 2.0])
    out = eq.run(200, seed=3)
    assert out["active"][0] == 2
    for v in out["v"]:
        assert 0.25 * v[0] + 0.25 * v[1] == pytest.approx(1.0, abs=1e-12)
        assert min(v) >= 4 / 3 - 1e-9
    replay = eq.run(3, signals="gbg")
    assert replay["signal"] == ["g", "b", "g"]


def test_simulation_and_deviation():
    eq = ppekit.Equilibrium(ppekit.modified_pd(), 0.8, v0=[2.0, 2.0])
    s = eq.simulate(episodes=1000, seed=5)
    assert abs(s["mean"][0] - 2.0) <= 4 * s["stderr"][0]
    d = eq.deviation_gain("stationary:2:D", episodes=1000, seed=5)
    assert d["gain"] <= 4 * d["pooled_stderr"]


def test_oracle_and_two_player():
    g = ppekit.modified_pd()
    assert ppekit.is_self_generating(g, 0.8, k=21)["self_generating"]
    assert not ppekit.is_self_generating(g, 0.7, k=21)["self_generating"]
    r = ppekit.decomposable(g, [8 / 3, 4 / 3], 0.8)
    assert r["feasible"] and r["active"] == 1
    c = ppekit.two_player(g)
    assert c["interval"]
    assert c["delta_star"] == pytest.approx(7 / 9)


def test_sweeps():
    rows = ppekit.sweep_delta(ppekit.modified_pd(), [0.7, 0.8])
    assert [r["status"] for r in rows] == ["delta_below_min", "ok"]
    rows = ppekit.sweep_config(os.path.join(CONFIGS, "contest_kappa_sweep.ini"))
    assert len(rows) == 10


def test_config_game():
    g = ppekit.game_from_config(os.path.join(CONFIGS, "custom_pd.ini"))
    assert g.players == 2
    assert g.payoffs([1, 0]) == [4.0, 0.0]
    assert g.bad_prob(1, [1, 1]) == pytest.approx(0.8)
