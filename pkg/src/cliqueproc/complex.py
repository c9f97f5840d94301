"""Clique complexes, links and maximal-face removal."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ._bits import bits, cliques, cliques_with_empty_extension, components, mask_of
from .errors import InvalidFace, InvalidParameter
from .process import Graph

Face = tuple  # strictly increasing tuple of vertex ids


def face(vertices: Iterable[int]) -> Face:
    vs = tuple(sorted(int(v) for v in vertices))
    if len(set(vs)) != len(vs):
        raise InvalidFace(f"repeated vertex in {vs}")
    return vs


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Faces by dimension, ``faces[d]`` sorted lexicographically.

    Only dimensions ``0..dim_cap`` are stored; the stored family is closed
    under taking codimension-1 subfaces.
    """

    n: int
    faces: tuple[tuple[Face, ...], ...]

    @property
    def dim_cap(self) -> int:
        return len(self.faces) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(fs) for fs in self.faces)

    def __getitem__(self, d: int) -> tuple[Face, ...]:
        if 0 <= d < len(self.faces):
            return self.faces[d]
        return ()

    @cached_property
    def _index(self) -> list[dict[Face, int]]:
        return [{f: i for i, f in enumerate(fs)} for fs in self.faces]

    def index(self, d: int) -> dict[Face, int]:
        return self._index[d] if 0 <= d < len(self.faces) else {}

    def __contains__(self, f) -> bool:
        f = tuple(f)
        return f in self.index(len(f) - 1)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.faces == other.faces

    def skeleton(self, d: int) -> "SimplicialComplex":
        return SimplicialComplex(self.n, self.faces[: d + 1])

    @cached_property
    def _cofaces(self) -> list[dict[Face, int]]:
        # number of (d+1)-faces containing each d-face
        out = []
        for d in range(len(self.faces)):
            cnt = dict.fromkeys(self.faces[d], 0)
            for big in self[d + 1]:
                for i in range(len(big)):
                    cnt[big[:i] + big[i + 1:]] += 1
            out.append(cnt)
        return out

    def coface_count(self, f: Face) -> int:
        return self._cofaces[len(f) - 1][f]

    def link_graph(self, tau: Face) -> Graph:
        """1-skeleton of the link of ``tau``; labels give original vertex ids."""
        tau = tuple(tau)
        if tau not in self:
            raise InvalidFace(f"{tau} is not a face")
        d = len(tau)
        verts = sorted(f[0] for f in (tuple(v for v in g if v not in tau) for g in self[d] if set(tau) <= set(g)))
        pos = {v: i for i, v in enumerate(verts)}
        edges = []
        for g in self[d + 1]:
            if set(tau) <= set(g):
                a, b = (v for v in g if v not in tau)
                edges.append((pos[a], pos[b]))
        return Graph.from_edges(len(verts), edges, labels=verts)


def from_faces(n: int, generators: Iterable[Iterable[int]], dim_cap: int | None = None) -> SimplicialComplex:
    """Downward closure of ``generators``, truncated at ``dim_cap``."""
    gens = [face(g) for g in generators]
    for g in gens:
        if not g:
            raise InvalidFace("empty face")
        if g[0] < 0 or g[-1] >= n:
            raise InvalidFace(f"face {g} has vertices outside [0, {n})")
    if dim_cap is None:
        dim_cap = max((len(g) - 1 for g in gens), default=0)
    if dim_cap < 0:
        raise InvalidParameter("dim_cap must be >= 0")
    layers: list[set[Face]] = [set() for _ in range(dim_cap + 1)]
    for g in gens:
        for size in range(1, min(len(g), dim_cap + 1) + 1):
            layers[size - 1].update(itertools.combinations(g, size))
    return SimplicialComplex(n, tuple(tuple(sorted(s)) for s in layers))


def clique_complex(g: Graph, dim_cap: int) -> SimplicialComplex:
    if dim_cap < 0:
        raise InvalidParameter("dim_cap must be >= 0")
    by_size = cliques(g.nbrs, (1 << g.n) - 1, dim_cap + 1)
    return SimplicialComplex(g.n, tuple(tuple(sorted(c)) for c in by_size))


def is_clique(g: Graph, sigma: Sequence[int]) -> bool:
    nb = g.nbrs
    return all(nb[a] >> b & 1 for a, b in itertools.combinations(sigma, 2))


def common_neighbours(g: Graph, sigma: Sequence[int]) -> int:
    m = (1 << g.n) - 1
    for v in sigma:
        m &= g.nbrs[v]
    return m


def link_graph(g: Graph, sigma: Sequence[int]) -> Graph:
    """Induced subgraph on the common neighbours of a clique ``sigma``."""
    sigma = face(sigma)
    if any(not 0 <= v < g.n for v in sigma) or not is_clique(g, sigma):
        raise InvalidFace(f"{sigma} is not a clique of the graph")
    return g.induced(bits(common_neighbours(g, sigma)))


def maximal_k_faces(g: Graph, k: int) -> list[Face]:
    """(k+1)-cliques of ``g`` with empty common neighbourhood."""
    if k < 0:
        raise InvalidParameter("k must be >= 0")
    return sorted(cliques_with_empty_extension(g.nbrs, (1 << g.n) - 1, k + 1))


def maximal_faces_of_complex(x: SimplicialComplex, k: int) -> list[Face]:
    """k-faces of ``x`` lying in no stored (k+1)-face."""
    if k > x.dim_cap:
        return []
    if k == x.dim_cap:
        return list(x[k])
    return [f for f in x[k] if x.coface_count(f) == 0]


def remove_maximal_k_faces(x: SimplicialComplex, k: int) -> SimplicialComplex:
    if x.dim_cap < k:
        raise InvalidParameter(f"dim_cap {x.dim_cap} < k={k}")
    sigma = set(maximal_faces_of_complex(x, k))
    layers = list(x.faces)
    layers[k] = tuple(f for f in x[k] if f not in sigma)
    return SimplicialComplex(x.n, tuple(layers))


def isolated_link_vertices(x: SimplicialComplex, k: int) -> set[int]:
    """Vertices isolated in the link of some (k-1)-face.

    ``w`` is isolated in ``lk(tau)`` exactly when ``tau + w`` is a k-face in
    no (k+1)-face, so the scan runs over k-faces directly.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if x.dim_cap < k + 1:
        raise InvalidParameter(f"need dim_cap >= {k + 1}, got {x.dim_cap}")
    out: set[int] = set()
    for tau in x[k - 1]:
        lk = x.link_graph(tau)
        for i in range(lk.n):
            if lk.nbrs[i] == 0:
                out.add(lk.label(i))
    return out


def graph_components(g: Graph) -> list[list[int]]:
    """Components of ``g`` as sorted lists of local vertex indices."""
    return [list(bits(c)) for c in components(g.nbrs, (1 << g.n) - 1)]


def one_skeleton(x: SimplicialComplex) -> Graph:
    return Graph.from_edges(x.n, x[1])


def parse_complex(text: str, dim_cap: int | None = None) -> SimplicialComplex:
    """Parse ``{"n": int, "faces": [[v, ...], ...]}``.

    Raises ``ValueError`` naming the offending field or line.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValueError("top level must be an object with fields 'n' and 'faces'")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("field 'n' must be a positive integer")
    fs = obj.get("faces")
    if not isinstance(fs, list):
        raise ValueError("field 'faces' must be a list of vertex lists")
    for i, f in enumerate(fs):
        if not isinstance(f, list) or not f or not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise ValueError(f"field 'faces[{i}]' must be a non-empty list of integers")
        if len(set(f)) != len(f):
            raise ValueError(f"field 'faces[{i}]' repeats a vertex")
        if min(f) < 0 or max(f) >= n:
            raise ValueError(f"field 'faces[{i}]' has a vertex outside [0, {n})")
    # isolated vertices are implicit members of the vertex set
    gens = [list(f) for f in fs] + [[v] for v in range(n)]
    return from_faces(n, gens, dim_cap)


def complex_to_json(x: SimplicialComplex) -> str:
    """Generating (maximal) faces only."""
    gens = []
    for d in range(x.dim_cap + 1):
        gens.extend(list(f) for f in maximal_faces_of_complex(x, d))
    return json.dumps({"n": x.n, "faces": gens})
