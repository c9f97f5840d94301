"""Edge-weight process on the complete graph and the critical-window time scale."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import InvalidParameter, OutOfRegime


@dataclass(frozen=True, eq=False)
class EdgeWeights:
    """Symmetric matrix of i.i.d. uniform weights, one per unordered pair.

    The diagonal holds ``+inf`` so that row-wise minima over "external"
    vertices never pick up a vertex itself and ``weights <= t`` never
    produces a self-loop.
    """

    n: int
    weights: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        self.weights.setflags(write=False)

    @cached_property
    def upper(self) -> np.ndarray:
        iu = np.triu_indices(self.n, k=1)
        return self.weights[iu]

    def to_json(self) -> str:
        # repr() of a float is the shortest string that round-trips; force
        # 17 significant digits anyway so the file format is fixed-width-ish.
        vals = ", ".join(format(float(x), ".17g") for x in self.upper)
        return '{"n": %d, "seed": %s, "weights": [%s]}' % (
            self.n, "null" if self.seed is None else str(int(self.seed)), vals)

    @classmethod
    def from_json(cls, text: str) -> "EdgeWeights":
        obj = json.loads(text)
        return from_upper_triangle(int(obj["n"]), obj["weights"], seed=obj.get("seed"))

    def __eq__(self, other):
        if not isinstance(other, EdgeWeights):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.weights, other.weights)


def from_upper_triangle(n: int, values: Iterable[float], seed: int | None = None) -> EdgeWeights:
    """Build weights from a row-major upper-triangle listing."""
    vals = np.asarray(list(values), dtype=np.float64)
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    if vals.shape != (n * (n - 1) // 2,):
        raise InvalidParameter(f"expected {n * (n - 1) // 2} weights for n={n}, got {vals.size}")
    if np.any(vals <= 0) or np.any(vals >= 1):
        raise InvalidParameter("weights must lie strictly inside (0, 1)")
    if np.unique(vals).size != vals.size:
        raise InvalidParameter("weights must be pairwise distinct")
    w = np.full((n, n), np.inf)
    iu = np.triu_indices(n, k=1)
    w[iu] = vals
    w[(iu[1], iu[0])] = vals
    return EdgeWeights(n, w, seed)


def weights_from_dict(n: int, pairs: dict[tuple[int, int], float]) -> EdgeWeights:
    """Convenience constructor from ``{(i, j): weight}`` covering every pair."""
    iu = np.triu_indices(n, k=1)
    vals = []
    for i, j in zip(*iu):
        key = (int(i), int(j))
        if key not in pairs and (key[1], key[0]) not in pairs:
            raise InvalidParameter(f"missing weight for pair {key}")
        vals.append(pairs.get(key, pairs.get((key[1], key[0]))))
    return from_upper_triangle(n, vals)


def generate_weights(n: int, seed: int) -> EdgeWeights:
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    m = n * (n - 1) // 2
    vals = rng.random(m)
    # Generator.random samples [0, 1); redraw zeros and any collisions until
    # the sample is strictly interior and tie-free.
    while True:
        bad = vals <= 0.0
        _, first = np.unique(vals, return_index=True)
        dup = np.ones(m, dtype=bool)
        dup[first] = False
        bad |= dup
        if not bad.any():
            break
        vals[bad] = rng.random(int(bad.sum()))
    return from_upper_triangle(n, vals, seed=seed)


def trial_seed(master_seed: int, index: int) -> int:
    """64-bit seed for one trial, independent of execution order."""
    ss = np.random.SeedSequence([int(master_seed) & (2**64 - 1), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)
    # labels[i] is the original vertex id of local vertex i (links, components)
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise InvalidParameter(f"bad edge {(i, j)} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Graph":
        es = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise InvalidParameter(f"self-loop at {i}")
            es.add((min(i, j), max(i, j)))
        return cls(n, frozenset(es), None if labels is None else tuple(labels))

    @cached_property
    def nbrs(self) -> list[int]:
        """Neighbourhoods as integer bitsets."""
        out = [0] * self.n
        for i, j in self.edges:
            out[i] |= 1 << j
            out[j] |= 1 << i
        return out

    def degree(self, v: int) -> int:
        return self.nbrs[v].bit_count()

    def label(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        es = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return Graph.from_edges(len(vs), es, labels=[self.label(v) for v in vs])


def graph_at(w: EdgeWeights, t: float) -> Graph:
    if not 0.0 <= t <= 1.0:
        raise InvalidParameter(f"t must lie in [0, 1], got {t}")
    iu, ju = np.nonzero(np.triu(w.weights <= t, k=1))
    return Graph(w.n, frozenset(zip(iu.tolist(), ju.tolist())))


@dataclass(frozen=True)
class EventSchedule:
    """Edges arriving in the window ``(t_lo, t_hi]``, ascending by weight."""

    u: np.ndarray
    v: np.ndarray
    times: np.ndarray
    window: tuple[float, float]

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        return zip(self.u.tolist(), self.v.tolist(), self.times.tolist())

    @property
    def events(self) -> list[tuple[tuple[int, int], float]]:
        return [((i, j), t) for i, j, t in self]


def event_schedule(w: EdgeWeights, t_lo: float = 0.0, t_hi: float = 1.0) -> EventSchedule:
    if not (0.0 <= t_lo < t_hi <= 1.0):
        raise InvalidParameter(f"need 0 <= t_lo < t_hi <= 1, got ({t_lo}, {t_hi})")
    iu, ju = np.triu_indices(w.n, k=1)
    vals = w.weights[iu, ju]
    keep = (vals > t_lo) & (vals <= t_hi)
    iu, ju, vals = iu[keep], ju[keep], vals[keep]
    order = np.argsort(vals, kind="stable")
    return EventSchedule(iu[order], ju[order], vals[order], (t_lo, t_hi))


def _offset(k: int, n: int) -> float:
    return (k / 2 + 1) * math.log(n) + (k / 2) * math.log(math.log(n))


def critical_time(k: int, n: int, c: float) -> float:
    """Edge threshold ``t_c`` indexed by the rescaled parameter ``c``."""
    if k < 1 or n < 3:
        raise InvalidParameter(f"need k >= 1 and n >= 3, got k={k}, n={n}")
    num = _offset(k, n) + c
    if not num > 0:
        raise OutOfRegime(f"c={c} gives non-positive numerator for k={k}, n={n}")
    t = (num / n) ** (1.0 / (k + 1))
    if t > 1.0:
        raise OutOfRegime(f"c={c} gives t_c={t} > 1 for k={k}, n={n}")
    return t


def rescale_time(t: float, k: int, n: int) -> float:
    """Inverse of :func:`critical_time`: ``n t^(k+1) - offset(k, n)``."""
    if not 0.0 <= t <= 1.0:
        raise InvalidParameter(f"t must lie in [0, 1], got {t}")
    if k < 1 or n < 3:
        raise InvalidParameter(f"need k >= 1 and n >= 3, got k={k}, n={n}")
    return n * t ** (k + 1) - _offset(k, n)
