"""
The Betti number process
========================

beta_k(X(n, t)) as t sweeps [t_lo, 1]. The returned step function records
each jump; T is the last time it drops to zero.
"""

from cliqueproc import (betti_process, critical_time, generate_weights, hitting_times,
                        maximality_intervals)
from cliqueproc.maximal import nk_process

n, k = 100, 1
w = generate_weights(n, seed=11)
bp = betti_process(w, k)
print("max beta_1:", bp.max_value(), " jumps:", len(bp.jump_times))

# compare with the number of maximal faces inside the window
fc = maximality_intervals(w, k)
nk = nk_process(fc)
for c in (-6.0, -4.0, -2.0, 0.0):
    t = critical_time(k, n, c)
    print(f"c = {c:+.1f}  beta_1 = {bp(t)}  N_1 = {nk(t)}")

h = hitting_times(bp, fc)
print(f"T = {h.T:.5f}  T' = {h.T_prime:.5f}  equal: {h.equal}")

# the step function also serializes
print(bp.to_csv().splitlines()[:4])

# k = 2 on a smaller sample
w2 = generate_weights(30, seed=1)
print("beta_2 jumps at n=30:", betti_process(w2, 2).jump_times[:5])
