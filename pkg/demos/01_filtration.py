"""
Edge weights and the critical window
====================================

Every pair of vertices gets an independent uniform weight. Thresholding at
``t`` gives the graph G(n, t); the clique complex of that graph is X(n, t).
"""

import numpy as np
from cliqueproc import clique_complex, critical_time, generate_weights, graph_at, rescale_time

n, k = 60, 1
w = generate_weights(n, seed=7)

# the same seed always gives the same sample
assert w == generate_weights(n, seed=7)

# where the window sits for k = 1
for c in (-2.0, 0.0, 2.0):
    t = critical_time(k, n, c)
    g = graph_at(w, t)
    x = clique_complex(g, 2)
    print(f"c = {c:+.1f}  t = {t:.4f}  f-vector = {x.f_vector()}")

# rescaling back recovers c
t0 = critical_time(k, n, 0.0)
print("round trip:", rescale_time(t0, k, n))

# the graph only grows
print("edges at t=0.3, 0.5:", len(graph_at(w, 0.3).edges), len(graph_at(w, 0.5).edges))
