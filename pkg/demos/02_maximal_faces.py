"""
Maximal faces and their lifetimes
=================================

A (k+1)-clique is a maximal face of X(n, t) for t in a single interval
[birth, death). One vectorized sweep over the weights gives all intervals.
"""

import numpy as np
from cliqueproc import (count_Nhat, count_Nk, count_Nk_star, critical_time, generate_weights,
                        graph_at, hitting_time_T_prime, maximal_k_faces, maximality_intervals)

n, k = 80, 1
w = generate_weights(n, seed=3)
fc = maximality_intervals(w, k)
print(len(fc), "sets are maximal at some time")

# counts against a direct enumeration
t = critical_time(k, n, 0.0)
print("N_k(t_0) =", count_Nk(fc, t), " enumeration:", len(maximal_k_faces(graph_at(w, t), k)))

# N_k* counts sets maximal at some later time; the gap is N^
print("N_k*(t_0) =", count_Nk_star(fc, t), " N^(t_0) =", count_Nhat(fc, t))

# last time a maximal face disappears
Tp = hitting_time_T_prime(fc)
print("T' =", Tp)

# a few of the longest-lived intervals
life = fc.deaths - fc.births
for i in np.argsort(life)[-3:]:
    iv = fc.intervals[i]
    print(iv.face, f"[{iv.birth:.4f}, {iv.death:.4f})")
