import math

import pytest

import batchps


def test_version():
    assert batchps.__version__ == "0.1.0"


def test_instability_is_a_value_error():
    with pytest.raises(batchps.InstabilityError):
        batchps.cut_info(0.7, 0.4)
    with pytest.raises(ValueError):
        batchps.lt_omega(0.2, 1.2, 1.0)


def test_cut_and_tail():
    c = batchps.cut_info(0.2, 0.3)
    assert c["sigma_plus"] == pytest.approx(-((math.sqrt(0.7) - math.sqrt(0.2)) ** 2))
    t = batchps.tail_constants(0.2, 0.3)
    k = math.sqrt(0.2 * 0.7)
    assert t["b_q"] == pytest.approx(3 * (math.pi**2 * k / 4) ** (1 / 3), rel=1e-12)
    assert t["prefactor_Omega"] > t["prefactor_omega"] > 0
    assert batchps.tail_Omega(0.2, 0.3, 100.0) > batchps.tail_omega(0.2, 0.3, 100.0)


def test_transform():
    assert batchps.lt_omega(0.2, 0.3, 0.5) == pytest.approx(0.512248406886, abs=1e-9)
    v = batchps.lt_omega(0.2, 0.3, 0.5 + 2j)
    assert abs(v) < 0.512248406886


def test_simulation_and_oracle():
    r = batchps.simulate(0.2, 0.3, batches=20000, seed=5)
    assert len(r["Omega"]) == 20000
    pi = batchps.stationary_occupancy(0.2, 0.3)
    assert pi[0] == pytest.approx(1 - 0.2 / 0.7)
    tv = 0.5 * sum(abs(a - b) for a, b in zip(r["occupancy"], pi + [0.0] * len(r["occupancy"])))
    assert tv < 0.02
    again = batchps.simulate(0.2, 0.3, batches=20000, seed=5)
    assert again["Omega"] == r["Omega"]


def test_bromwich_against_simulation():
    (c,) = batchps.bromwich_ccdf(0.2, 0.3, [5.0])
    assert c == pytest.approx(0.09704721232, rel=1e-6)
    r = batchps.simulate(0.2, 0.3, batches=100000, seed=2)
    emp = sum(w > 5.0 for w in r["Omega"]) / len(r["Omega"])
    assert abs(emp - c) < 0.01
