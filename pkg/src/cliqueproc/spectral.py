"""Normalized Laplacian spectra of links; Garland and Zuk certificates."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._bits import bits, components
from .complex import Face, SimplicialComplex
from .errors import DegenerateInput, InvalidParameter
from .process import Graph

TOL = 1e-9


def normalized_laplacian(g: Graph) -> np.ndarray:
    """``I - D^{-1/2} A D^{-1/2}``; every vertex must have an edge."""
    a = g.adjacency_matrix()
    deg = a.sum(axis=1)
    if g.n == 0 or np.any(deg == 0):
        raise DegenerateInput("normalized Laplacian needs a graph without isolated vertices")
    s = 1.0 / np.sqrt(deg)
    return np.eye(g.n) - s[:, None] * a * s[None, :]


def laplacian_spectrum(g: Graph) -> np.ndarray:
    return np.linalg.eigvalsh(normalized_laplacian(g))


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g.nbrs, (1 << g.n) - 1)) == 1


def lambda2(g: Graph) -> float:
    """Second-smallest normalized-Laplacian eigenvalue of a connected graph."""
    if g.n < 2:
        raise DegenerateInput("lambda2 needs at least two vertices")
    if not is_connected(g):
        raise DegenerateInput("lambda2 is only defined here for connected graphs; check connectivity first")
    return float(laplacian_spectrum(g)[1])


def giant_component(g: Graph) -> Graph:
    """Largest component; ties go to the one holding the smallest label."""
    if g.n == 0:
        raise DegenerateInput("empty graph")
    comps = components(g.nbrs, (1 << g.n) - 1)
    best = max(comps, key=lambda c: (c.bit_count(), -min(g.label(v) for v in bits(c))))
    return g.induced(bits(best))


@dataclass(frozen=True)
class SpectralReport:
    lambda2: float
    connected: bool
    num_components: int
    giant_size: int
    margin: float


def spectral_report(g: Graph, threshold: float = 0.5) -> SpectralReport:
    comps = components(g.nbrs, (1 << g.n) - 1)
    gc = giant_component(g)
    if len(comps) == 1 and g.n >= 2:
        lam = float(laplacian_spectrum(g)[1])
    else:
        lam = 0.0
    return SpectralReport(lam, len(comps) == 1, len(comps), gc.n, lam - threshold)


@dataclass(frozen=True)
class FailingFace:
    face: Face
    reason: str  # disconnected | small_gap | isolated_vertex_in_link
    lambda2: float | None = None


@dataclass(frozen=True)
class GarlandCertificate:
    k: int
    certified: bool
    purity_ok: bool
    failing_faces: tuple[FailingFace, ...]
    threshold: float
    tolerance: float = TOL
    lambda2_min: float | None = None
    inconclusive: bool = False
    mode: str = "garland"

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "certified": self.certified,
            "purity_ok": self.purity_ok,
            "inconclusive": self.inconclusive,
            "threshold": self.threshold,
            "tolerance": self.tolerance,
            "lambda2_min": self.lambda2_min,
            "failing": [{"face": list(f.face), "reason": f.reason, "lambda2": f.lambda2}
                        for f in self.failing_faces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def is_pure(x: SimplicialComplex, top: int) -> bool:
    """Every stored face of dimension <= ``top`` lies in some ``top``-face."""
    covered: set[Face] = set()
    for f in x[top]:
        for size in range(1, top + 1):
            covered.update(itertools.combinations(f, size))
    return all(f in covered for d in range(top) for f in x[d]) and len(x[top]) > 0


def _certify(x: SimplicialComplex, k: int, threshold: float, mode: str) -> GarlandCertificate:
    if x.dim_cap < k + 1:
        raise InvalidParameter(f"need dim_cap >= {k + 1}, got {x.dim_cap}")
    # higher faces do not affect H^k; work on the (k+1)-skeleton
    xs = x.skeleton(k + 1)
    purity_ok = is_pure(xs, k + 1)
    failing: list[FailingFace] = []
    lam_min = None
    inconclusive = False
    for sigma in xs[k - 1]:
        lk = xs.link_graph(sigma)
        if lk.n == 0:
            failing.append(FailingFace(sigma, "disconnected"))
            continue
        if any(nb == 0 for nb in lk.nbrs):
            failing.append(FailingFace(sigma, "isolated_vertex_in_link"))
            continue
        if not is_connected(lk):
            failing.append(FailingFace(sigma, "disconnected", 0.0))
            lam_min = 0.0 if lam_min is None else min(lam_min, 0.0)
            continue
        lam = float(laplacian_spectrum(lk)[1])
        lam_min = lam if lam_min is None else min(lam_min, lam)
        if lam <= threshold + TOL:
            if lam > threshold - TOL:
                inconclusive = True
            failing.append(FailingFace(sigma, "small_gap", lam))
    certified = purity_ok and not failing
    return GarlandCertificate(k, certified, purity_ok, tuple(failing), threshold, TOL,
                              lam_min, inconclusive, mode)


def garland_certify(x: SimplicialComplex, k: int) -> GarlandCertificate:
    """Sufficient condition for ``H^k(x; Q) = 0``.

    Certified when the (k+1)-skeleton is pure and every (k-1)-face has a
    connected link with ``lambda2 > k/(k+1)`` (plus a 1e-9 margin).
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    return _certify(x, k, k / (k + 1), "garland")


def zuk_certify(x: SimplicialComplex) -> GarlandCertificate:
    """Sufficient condition for property (T) of the fundamental group.

    Pure 2-dimensional 2-skeleton, every vertex link connected with
    ``lambda2 > 1/2``.
    """
    return _certify(x, 1, 0.5, "zuk")
