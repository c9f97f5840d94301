import itertools
import json
import math

import numpy as np
import pytest

from cliqueproc.complex import clique_complex, from_faces, graph_components, parse_complex
from cliqueproc.errors import DegenerateInput, InvalidParameter
from cliqueproc.homology import RATIONAL, betti
from cliqueproc.process import Graph
from cliqueproc.spectral import (garland_certify, giant_component, is_connected, is_pure, lambda2,
                                 laplacian_spectrum, spectral_report, zuk_certify)

from conftest import random_graph


def complete(m):
    return Graph.from_edges(m, itertools.combinations(range(m), 2))


def cycle(m):
    return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def test_small_spectra():
    assert np.allclose(laplacian_spectrum(complete(2)), [0, 2])
    assert np.allclose(laplacian_spectrum(Graph.from_edges(3, [(0, 1), (1, 2)])), [0, 1, 2])


@pytest.mark.parametrize("m", range(3, 11))
def test_complete_graph_gap(m):
    assert lambda2(complete(m)) == pytest.approx(m / (m - 1), abs=1e-12)
    assert np.allclose(laplacian_spectrum(complete(m))[1:], m / (m - 1))


@pytest.mark.parametrize("m", [4, 5, 6, 9])
def test_cycle_gap(m):
    assert lambda2(cycle(m)) == pytest.approx(1 - math.cos(2 * math.pi / m), abs=1e-12)


def test_degenerate_inputs():
    with pytest.raises(DegenerateInput):
        lambda2(Graph(1))
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DegenerateInput):
        lambda2(two_edges)
    # a disconnected graph has a zero second eigenvalue
    assert laplacian_spectrum(two_edges)[1] == pytest.approx(0, abs=1e-12)
    assert spectral_report(two_edges).lambda2 == 0.0
    with pytest.raises(DegenerateInput):
        laplacian_spectrum(Graph.from_edges(3, [(0, 1)]))


def test_giant_component(rng):
    for _ in range(30):
        g = random_graph(20, 0.08, rng)
        comps = graph_components(g)
        best = max(len(c) for c in comps)
        first = min((c for c in comps if len(c) == best), key=min)
        gc = giant_component(g)
        assert sorted(gc.labels) == sorted(first)
        assert is_connected(gc)


def test_giant_component_tie_break():
    g = Graph.from_edges(4, [(2, 3), (0, 1)])
    assert giant_component(g).labels == (0, 1)


def test_spectral_report_margin():
    rep = spectral_report(complete(4), threshold=0.5)
    assert rep.connected and rep.num_components == 1 and rep.giant_size == 4
    assert rep.margin == pytest.approx(4 / 3 - 0.5)


def test_full_simplex_certified():
    x = clique_complex(complete(5), 2)
    cert = garland_certify(x, 1)
    assert cert.certified and cert.purity_ok and not cert.failing_faces
    assert cert.lambda2_min == pytest.approx(4 / 3)
    assert zuk_certify(x).certified


def test_octahedron():
    octa = Graph.from_edges(6, [(i, j) for i, j in itertools.combinations(range(6), 2) if j - i != 3])
    x = clique_complex(octa, 3)
    # vertex links are 4-cycles with gap 1
    z = zuk_certify(x)
    assert z.certified and z.lambda2_min == pytest.approx(1.0)
    # edge links are two points, and beta_2 = 1
    g2 = garland_certify(x, 2)
    assert not g2.certified
    assert {f.reason for f in g2.failing_faces} == {"isolated_vertex_in_link"}


def test_hollow_cycle_fails_everywhere():
    cert = garland_certify(clique_complex(cycle(5), 2), 1)
    assert not cert.certified and not cert.purity_ok
    assert len(cert.failing_faces) == 5


def test_seven_vertex_torus_sits_on_threshold():
    tris = [sorted({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]
    tris += [sorted({i, (i + 2) % 7, (i + 3) % 7}) for i in range(7)]
    x = from_faces(7, tris, dim_cap=2)
    assert betti(x, 1) == 2
    cert = zuk_certify(x)
    assert not cert.certified and cert.inconclusive
    assert all(f.reason == "small_gap" for f in cert.failing_faces)
    assert cert.lambda2_min == pytest.approx(0.5)


def test_empty_link_counts_as_disconnected():
    x = from_faces(4, [[0, 1, 2], [3]], dim_cap=2)
    cert = garland_certify(x, 1)
    assert not cert.purity_ok
    assert ((3,), "disconnected") in [(f.face, f.reason) for f in cert.failing_faces]


def test_certificate_json_shape():
    cert = zuk_certify(clique_complex(complete(4), 2))
    d = json.loads(cert.to_json())
    assert set(d) == {"mode", "k", "certified", "purity_ok", "inconclusive", "threshold", "tolerance",
                      "lambda2_min", "failing"}
    assert d["mode"] == "zuk" and d["threshold"] == 0.5


def test_certificate_needs_skeleton():
    with pytest.raises(InvalidParameter):
        garland_certify(clique_complex(complete(4), 1), 1)
    with pytest.raises(InvalidParameter):
        garland_certify(clique_complex(complete(4), 2), 0)


def test_purity():
    assert is_pure(clique_complex(complete(4), 2), 2)
    assert not is_pure(parse_complex('{"n": 4, "faces": [[0, 1, 2], [2, 3]]}'), 2)


@pytest.mark.parametrize("k", [1, 2])
def test_certificate_is_sound(rng, k):
    certified = 0
    for _ in range(150):
        g = random_graph(int(rng.integers(5, 11)), float(rng.uniform(0.5, 1.0)), rng)
        x = clique_complex(g, k + 1)
        if garland_certify(x, k).certified:
            certified += 1
            assert betti(x, k, RATIONAL) == 0
    assert certified > 0
