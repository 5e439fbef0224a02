import math

import pytest

import windings


def test_constants_at_one():
    c = windings.constants(1.0)
    assert c["K"] == pytest.approx(1.0, abs=1e-10)
    assert c["k"] == pytest.approx(4 * math.log(2), rel=1e-10)
    assert c["r"] == pytest.approx(c["k"] * c["K"], rel=1e-8)
    assert windings.angular_density(1.0, math.pi) == pytest.approx(1 / (4 * math.pi), rel=1e-9)


def test_samplers_are_seeded():
    a = windings.sample_positive_stable(0.5, 1000, seed=3)
    assert a == windings.sample_positive_stable(0.5, 1000, seed=3)
    assert a != windings.sample_positive_stable(0.5, 1000, seed=4)
    assert min(a) > 0
    # Laplace transform exp(-1) at s = 1.
    m = sum(math.exp(-x) for x in a) / len(a)
    assert abs(m - math.exp(-1)) < 0.03
    s = windings.sample_symmetric_stable(1.0, 2000, seed=1)
    assert abs(sum(1 for x in s if x <= 1.0) / len(s) - 0.75) < 0.04


def test_path_series():
    p = windings.generate_path(1.2, horizon=0.5, seed=2)
    n = len(p["times"])
    assert len(p["points"]) == len(p["theta"]) == len(p["clock"]) == n
    assert p["times"][0] == 0.0 and p["times"][-1] == 0.5
    assert p["points"][0] == 1 + 0j
    assert all(b > a for a, b in zip(p["clock"], p["clock"][1:]))
    for z, th in zip(p["points"], p["theta"]):
        m = (th - math.atan2(z.imag, z.real)) / (2 * math.pi)
        assert abs(m - round(m)) < 1e-9


def test_rho_and_integral_test():
    x = windings.simulate_rho(1.0, horizon=1.0, epsilon=1e-2, steps=4, seed=1)
    assert len(x) == 5 and x[0] == 0.0
    assert windings.integral_test(1.0, 3.0)[0]
    assert not windings.integral_test(1.0, 0.0)[0]


def test_suite_report_and_errors():
    assert "bm" in windings.suite_names()
    cfg = {"seed": 5, "replicas": 20, "bm": {"large_time_replicas": 20}}
    report = windings.run_suite("bm", cfg)
    assert report["suite"] == "bm"
    assert report["provenance"]["seed"] == 5
    assert report["checks"]
    assert report == windings.run_suite("bm", cfg)
    with pytest.raises(windings.ConfigError):
        windings.run_suite("bm", {"alphas": [3.0]})
    with pytest.raises(ValueError):
        windings.run_suite("bm", {"nonsense": 1})
