import math

import pytest

import ipsnet


REF = ipsnet.ModelParams(n=3, alpha=0.3, pi_plus=0.9, pi_minus=0.4, link="mean")


def test_params_roundtrip():
    assert REF.n == 3
    assert REF.link == "mean"
    assert REF.f == pytest.approx(0.65)
    assert REF.edge_slots == 3


def test_validation_raises_value_error():
    with pytest.raises(ValueError):
        ipsnet.ModelParams(n=3, alpha=0.0, pi_plus=0.9, pi_minus=0.4)
    with pytest.raises(ValueError):
        ipsnet.ModelParams(n=3, alpha=0.3, pi_plus=0.4, pi_minus=0.9, link="mean")


def test_exact_moments_match_hand_value():
    two = ipsnet.ModelParams(n=2, alpha=0.3, pi_plus=0.9, pi_minus=0.4)
    ms = ipsnet.exact_moments(two)
    assert ms.m1 == pytest.approx(0.65, abs=1e-12)
    assert ms.m2 == pytest.approx(ms.m1, abs=1e-12)  # S is 0/1 when n = 2
    assert ms.m3 == pytest.approx(2 * ms.m2 - 2 * ms.cross1, abs=1e-12)


def test_simulate_is_deterministic():
    a = ipsnet.simulate(REF, k=200, seed=11, burn_in=50)
    b = ipsnet.simulate(REF, k=200, seed=11, burn_in=50)
    assert list(a.s) == list(b.s)
    assert len(a) == 200
    assert all(0 <= s <= 3 for s in a.s)
    assert all(0 <= n <= 3 for n in a.n_plus)


def test_joint_chain_rows_are_stochastic():
    rows = ipsnet.joint_chain_matrix(REF)
    assert len(rows) == 16
    for row in rows:
        assert sum(row) == pytest.approx(1.0, abs=1e-12)


def test_estimate_recovers_noiseless_moments():
    ms = ipsnet.exact_moments(REF)
    est = ipsnet.estimate_from_moments(
        ipsnet.EmpiricalMoments(m1k=ms.m1, m2k=ms.m2, m3k=ms.m3, k=10**6),
        n=3,
        link="mean",
    )
    assert est.pi_plus_hat == pytest.approx(0.9, abs=1e-3)
    assert est.pi_minus_hat == pytest.approx(0.4, abs=1e-3)
    assert est.alpha_hat == pytest.approx(0.3, abs=1e-3)
    assert est.flags == []


def test_estimate_from_series():
    series = ipsnet.simulate(REF, k=20000, seed=3)
    est = ipsnet.estimate(series, n=3, link="mean")
    assert abs(est.pi_plus_hat - 0.9) < 0.2
    assert abs(est.alpha_hat - 0.3) < 0.2


def test_series_too_short():
    series = ipsnet.simulate(REF, k=1, seed=1, burn_in=10)
    with pytest.raises(ValueError):
        ipsnet.estimate(series, n=3, link="mean")


def test_ks_two_sample():
    res = ipsnet.ks_two_sample([0.0] * 50, [1.0] * 50)
    assert res.d_statistic == pytest.approx(1.0)
    assert res.reject_at_005
    same = ipsnet.ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert same.p_value == 1.0


def test_run_replications_threads_agree():
    one = ipsnet.run_replications(REF, k=400, l=4, seed=9, threads=1, burn_in=50)
    four = ipsnet.run_replications(REF, k=400, l=4, seed=9, threads=4, burn_in=50)
    assert [r.alpha_hat for r in one.runs] == [r.alpha_hat for r in four.runs]
    assert one.mean_alpha == four.mean_alpha


def test_trajectory_io_roundtrip(tmp_path):
    series = ipsnet.simulate(REF, k=50, seed=2, burn_in=20)
    path = tmp_path / "traj.csv"
    ipsnet.write_trajectory(path, series)
    back = ipsnet.read_trajectory(path)
    assert list(back.s) == list(series.s)


def test_burn_in_formula():
    assert ipsnet.default_burn_in(REF) == math.ceil(10 * 3 * math.log(4) / 0.3)
