import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliqueproc.errors import InvalidParameter, OutOfRegime
from cliqueproc.process import (EdgeWeights, critical_time, event_schedule, from_upper_triangle,
                                generate_weights, graph_at, rescale_time, trial_seed)


def test_two_vertices_single_weight():
    w = generate_weights(2, 123)
    assert w.upper.shape == (1,)
    assert 0 < w.upper[0] < 1


def test_generation_is_deterministic():
    a, b = generate_weights(5, 99), generate_weights(5, 99)
    assert np.array_equal(a.weights, b.weights)
    assert not np.array_equal(a.weights, generate_weights(5, 100).weights)


def test_weight_invariants():
    w = generate_weights(50, 7)
    W = w.weights
    off = ~np.eye(50, dtype=bool)
    assert np.array_equal(W, W.T)
    assert np.all((W[off] > 0) & (W[off] < 1))
    assert np.unique(w.upper).size == w.upper.size
    # 1225 uniforms: sd of the mean is ~0.008, so 0.05 is > 6 sd
    assert abs(w.upper.mean() - 0.5) < 0.05


def test_rejects_small_n():
    with pytest.raises(InvalidParameter):
        generate_weights(1, 0)


def test_collisions_are_regenerated(monkeypatch):
    draws = iter([np.array([0.0, 0.25, 0.25]), np.array([0.5, 0.75])])

    class Stub:
        def random(self, size=None):
            return next(draws)

    monkeypatch.setattr(np.random, "default_rng", lambda seed: Stub())
    w = generate_weights(3, 1)
    assert sorted(w.upper.tolist()) == [0.25, 0.5, 0.75]


def test_json_round_trip_is_exact():
    w = generate_weights(9, 2**63 + 5)
    back = EdgeWeights.from_json(w.to_json())
    assert back == w
    assert back.seed == w.seed


def test_trial_seed_is_order_free():
    assert trial_seed(5, 3) == trial_seed(5, 3)
    assert len({trial_seed(5, i) for i in range(100)}) == 100


def test_graph_at_extremes():
    w = generate_weights(8, 3)
    assert graph_at(w, 0.0).edges == frozenset()
    assert len(graph_at(w, 1.0).edges) == 28
    with pytest.raises(InvalidParameter):
        graph_at(w, 1.5)


def test_graph_at_median():
    w = generate_weights(11, 4)
    med = float(np.median(w.upper))
    m = 11 * 10 // 2
    # oracle: direct count over the upper triangle
    direct = sum(1 for x in w.upper if x <= med)
    assert len(graph_at(w, med).edges) == direct
    assert direct in (math.floor(m / 2), math.ceil(m / 2))


def test_filtration_is_monotone():
    w = generate_weights(15, 8)
    ts = np.linspace(0, 1, 21)
    for s, t in zip(ts, ts[1:]):
        assert graph_at(w, s).edges <= graph_at(w, t).edges


def test_event_schedule():
    w = generate_weights(12, 5)
    full = event_schedule(w, 0, 1)
    assert len(full) == 66
    assert np.all(np.diff(full.times) > 0)
    rebuilt = np.full((12, 12), np.inf)
    for (i, j), t in full.events:
        rebuilt[i, j] = rebuilt[j, i] = t
    assert np.array_equal(rebuilt, w.weights)
    part = event_schedule(w, 0.5, 0.6)
    brute = [(i, j) for i, j in itertools.combinations(range(12), 2) if 0.5 < w.weights[i, j] <= 0.6]
    assert sorted(e for e, _ in part.events) == sorted(brute)
    with pytest.raises(InvalidParameter):
        event_schedule(w, 1, 1)
    with pytest.raises(InvalidParameter):
        event_schedule(w, 0.6, 0.5)


def test_critical_time_values():
    # closed form evaluated with mpmath at 30 digits
    assert critical_time(1, 100, 0.0) == pytest.approx(0.276971931644455402687, rel=1e-12)
    assert critical_time(2, 1000, 0.0) == pytest.approx(0.250655110047183261214, rel=1e-12)
    assert critical_time(1, 100, 0.0) == pytest.approx(0.276975, abs=1e-5)


def test_rescale_time_values():
    assert rescale_time(1.0, 1, 100) == pytest.approx(92.3286549081139123933, rel=1e-12)
    assert rescale_time(0.0, 1, 100) == pytest.approx(-(1.5 * math.log(100) + 0.5 * math.log(math.log(100))))
    assert rescale_time(critical_time(1, 200, 2.5), 1, 200) == pytest.approx(2.5, abs=1e-12)


def test_critical_time_regime_errors():
    with pytest.raises(OutOfRegime):
        critical_time(1, 100, -100.0)
    with pytest.raises(OutOfRegime):
        critical_time(1, 100, 1000.0)
    with pytest.raises(InvalidParameter):
        critical_time(0, 100, 0.0)
    with pytest.raises(InvalidParameter):
        rescale_time(1.2, 1, 100)


@settings(max_examples=200, deadline=None)
@given(k=st.integers(1, 4), n=st.integers(3, 5000), c=st.floats(-2.0, 5.0))
def test_critical_rescale_round_trip(k, n, c):
    try:
        t = critical_time(k, n, c)
    except OutOfRegime:
        return
    back = rescale_time(t, k, n)
    assert back == pytest.approx(c, rel=1e-12, abs=1e-12 * (abs(c) + 10 * math.log(n)))
    assert critical_time(k, n, back) == pytest.approx(t, rel=1e-12)


def test_from_upper_triangle_validation():
    with pytest.raises(InvalidParameter):
        from_upper_triangle(3, [0.1, 0.1, 0.2])
    with pytest.raises(InvalidParameter):
        from_upper_triangle(3, [0.1, 1.0, 0.2])
    with pytest.raises(InvalidParameter):
        from_upper_triangle(3, [0.1, 0.2])
