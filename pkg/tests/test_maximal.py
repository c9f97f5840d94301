import itertools
import math

import numpy as np
import pytest

from cliqueproc.complex import clique_complex, maximal_k_faces
from cliqueproc.errors import InvalidParameter, OutOfRegime, WindowTooShort
from cliqueproc.homology import StepFunction, betti_process
from cliqueproc.maximal import (FaceCountProcess, count_Nhat, count_Nk, count_Nk_star, count_R,
                                count_R_graph, hitting_time_generalized, hitting_time_T,
                                hitting_time_T_prime, hitting_times, jump_count, maximality_intervals,
                                maximality_intervals_exhaustive, nk_process)
from cliqueproc.process import critical_time, event_schedule, from_upper_triangle, generate_weights, graph_at

# U01=.1, U02=.3, U03=.5, U12=.6, U13=.4, U23=.2
HAND = from_upper_triangle(4, [0.1, 0.3, 0.5, 0.6, 0.4, 0.2])


def as_set(fc):
    return {(iv.face, iv.birth, iv.death) for iv in fc.intervals}


def test_hand_example_intervals():
    fc = maximality_intervals(HAND, 1)
    assert as_set(fc) == {((0, 1), 0.1, 0.5), ((2, 3), 0.2, 0.5), ((0, 2), 0.3, 0.5), ((1, 3), 0.4, 0.5)}
    assert hitting_time_T_prime(fc) == 0.5
    assert hitting_time_T(betti_process(HAND, 1)) == 0.5


@pytest.mark.parametrize("k, n", [(1, 15), (2, 15), (3, 12)])
def test_sweep_matches_exhaustive(k, n):
    for seed in range(4):
        w = generate_weights(n, seed)
        assert as_set(maximality_intervals(w, k)) == as_set(maximality_intervals_exhaustive(w, k))


@pytest.mark.parametrize("k", [1, 2])
def test_counts_match_snapshots(k):
    w = generate_weights(16, 5)
    fc = maximality_intervals(w, k)
    times = event_schedule(w).times
    for t in np.concatenate([[0.0], times[::7], [1.0]]):
        assert count_Nk(fc, t) == len(maximal_k_faces(graph_at(w, t), k))


def test_star_count_scan_oracle():
    w = generate_weights(14, 2)
    fc = maximality_intervals(w, 1)
    times = [0.0] + event_schedule(w).times.tolist()
    snaps = [set(maximal_k_faces(graph_at(w, t), 1)) for t in times]
    for i, t in enumerate(times[::5]):
        i *= 5
        ever = set().union(*snaps[i:])
        assert count_Nk_star(fc, t) == len(ever)


def test_star_count_non_increasing_and_nhat_identity():
    w = generate_weights(30, 8)
    fc = maximality_intervals(w, 1)
    ts = np.linspace(0, 1, 101)
    star = [count_Nk_star(fc, t) for t in ts]
    assert all(a >= b for a, b in zip(star, star[1:]))
    for t in ts:
        assert count_Nk_star(fc, t) == count_Nk(fc, t) + count_Nhat(fc, t)


def test_nk_process_matches_counts():
    w = generate_weights(25, 4)
    fc = maximality_intervals(w, 1)
    sf = nk_process(fc)
    for t in [0.0] + event_schedule(w).times.tolist():
        assert sf(t) == count_Nk(fc, t)


def test_jump_identity():
    # every interval alive after t_c(c) contributes its death, and its birth if later
    for seed in range(10):
        n = 60
        w = generate_weights(n, seed)
        fc = maximality_intervals(w, 1)
        for c in (-1.0, 0.0, 1.5):
            t = critical_time(1, n, c)
            assert jump_count(fc, c, math.inf) == count_Nk(fc, t) + 2 * count_Nhat(fc, t)


def test_jump_count_windows():
    fc = maximality_intervals(HAND, 1)
    assert jump_count(fc, -math.inf, math.inf) == 8
    with pytest.raises(InvalidParameter):
        jump_count(fc, 1.0, 0.0)
    late = maximality_intervals(generate_weights(40, 1), 1, t_lo=0.3)
    with pytest.raises(OutOfRegime):
        jump_count(late, -3.0, 0.0)


def test_hitting_times_scan_oracle():
    for seed in range(8):
        w = generate_weights(20, seed)
        fc = maximality_intervals(w, 1)
        bp = betti_process(w, 1)
        times = [0.0] + event_schedule(w).times.tolist()
        nz_max = [t for t in times if maximal_k_faces(graph_at(w, t), 1)]
        nz_beta = [t for t in times if bp(t) > 0]
        # the next event after the last nonzero snapshot
        after = lambda last: min(s for s in times if s > last)
        assert hitting_time_T_prime(fc) == after(nz_max[-1])
        expect_T = after(nz_beta[-1]) if nz_beta else 0.0
        assert hitting_time_T(bp) == expect_T
        h = hitting_times(bp, fc)
        assert h.equal == (h.T == h.T_prime)


def test_generalized_hitting_time():
    sf = StepFunction(0.0, 0, (0.1, 0.2, 0.4, 0.7), (3, 1, 2, 0))
    assert hitting_time_generalized(sf, 0) == 0.7
    assert hitting_time_generalized(sf, 1) == 0.7
    assert hitting_time_generalized(sf, 2) == 0.2
    assert hitting_time_generalized(sf, 3) == 0.0
    with pytest.raises(WindowTooShort):
        hitting_time_generalized(StepFunction(0.0, 0, (0.5,), (2,)), 1)
    fc = maximality_intervals(HAND, 1)
    assert hitting_time_generalized(fc, 3) == 0.5
    assert hitting_time_generalized(fc, 4) == 0.0


def test_csv_round_trip():
    fc = maximality_intervals(generate_weights(12, 0), 2)
    assert set(FaceCountProcess.parse_csv(fc.to_csv())) == set(fc.intervals)


def test_count_R_path():
    # path 0-1-2 present at t = .5, the edge 02 arrives at .9
    w = from_upper_triangle(3, [0.1, 0.9, 0.2])
    assert count_R(w, 1, 1, 0.5) == 2
    assert count_R(w, 1, 1, 0.5, star=True) == 2
    assert count_R(w, 1, 0, 0.5) == 0
    assert count_R(w, 1, 2, 1.0) == 3


@pytest.mark.parametrize("k, m", [(1, 0), (1, 2), (2, 1), (2, 3)])
def test_count_R_matches_complex(k, m):
    w = generate_weights(13, 7)
    for t in (0.2, 0.4, 0.6):
        assert count_R(w, k, m, t) == count_R_graph(graph_at(w, t), k, m)


def test_count_R_star_scan_oracle():
    w = generate_weights(11, 3)
    times = [0.0] + event_schedule(w).times.tolist()
    for t in (0.3, 0.5):
        later = [s for s in times if s >= t] + [t]
        found = set()
        for s in later:
            x = clique_complex(graph_at(w, s), 2)
            found |= {f for f in x[1] if x.coface_count(f) <= 1}
        assert count_R(w, 2, 1, t, star=True) == len(found)
