"""
Spectral certificates
=====================

Garland's criterion: if every (k-1)-face has a connected link whose
normalized Laplacian has second eigenvalue above k/(k+1), then H^k vanishes.
"""

import itertools
from cliqueproc import (betti, clique_complex, garland_certify, generate_weights, graph_at,
                        lambda2, zuk_certify)
from cliqueproc.process import Graph

# complete graph on m vertices: lambda2 = m/(m-1)
for m in (3, 5, 8):
    km = Graph.from_edges(m, itertools.combinations(range(m), 2))
    print(m, lambda2(km))

# the octahedron passes for k = 1 but has a 2-cycle
octa = Graph.from_edges(6, [(i, j) for i, j in itertools.combinations(range(6), 2) if j - i != 3])
x = clique_complex(octa, 3)
print("zuk:", zuk_certify(x).certified, "  garland k=2:", garland_certify(x, 2).certified,
      "  beta_2 =", betti(x, 2))

# a dense random sample
w = generate_weights(25, seed=2)
x = clique_complex(graph_at(w, 0.8), 2)
cert = garland_certify(x, 1)
print(cert.to_json()[:200])
