"""Maximality intervals of (k+1)-cliques, face-count processes and hitting times.

A (k+1)-set is a maximal clique of ``G(n, s)`` exactly for ``s`` in
``[birth, death)`` where ``birth`` is its largest internal weight and
``death`` is the smallest, over outside vertices ``j``, of the largest weight
joining ``j`` to the set.
"""
from __future__ import annotations

import io
import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from ._bits import cliques_with_empty_extension
from .complex import Face, clique_complex
from .errors import InvalidParameter, OutOfRegime, WindowTooShort
from .homology import StepFunction
from .process import EdgeWeights, Graph, critical_time, event_schedule, rescale_time


@dataclass(frozen=True)
class MaximalityInterval:
    face: Face
    birth: float
    death: float


def _deaths(W: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """Row-wise death times for an ``(m, k+1)`` array of faces."""
    out = np.empty(len(faces))
    step = max(1, 2**20 // (W.shape[0] * faces.shape[1] + 1))
    for s in range(0, len(faces), step):
        blk = faces[s:s + step]
        # diagonal is +inf, so members of the face never win the min
        out[s:s + step] = W[blk].max(axis=1).min(axis=1)
    return out


def _births(W: np.ndarray, faces: np.ndarray) -> np.ndarray:
    k1 = faces.shape[1]
    if k1 < 2:
        return np.zeros(len(faces))
    pairs = list(itertools.combinations(range(k1), 2))
    return np.max(np.stack([W[faces[:, a], faces[:, b]] for a, b in pairs]), axis=0)


@dataclass(frozen=True)
class FaceCountProcess:
    """All maximality intervals alive after ``t_lo`` for one weight sample."""

    n: int
    k: int
    t_lo: float
    intervals: tuple[MaximalityInterval, ...]

    @cached_property
    def births(self) -> np.ndarray:
        return np.array([iv.birth for iv in self.intervals], dtype=float)

    @cached_property
    def deaths(self) -> np.ndarray:
        return np.array([iv.death for iv in self.intervals], dtype=float)

    def __len__(self):
        return len(self.intervals)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("face,birth,death\n")
        for iv in self.intervals:
            buf.write("%s,%.17g,%.17g\n" % ("-".join(map(str, iv.face)), iv.birth, iv.death))
        return buf.getvalue()

    @staticmethod
    def parse_csv(text: str) -> list[MaximalityInterval]:
        rows = text.strip().splitlines()
        if rows[0] != "face,birth,death":
            raise ValueError("expected header 'face,birth,death'")
        out = []
        for r in rows[1:]:
            f, b, d = r.split(",")
            out.append(MaximalityInterval(tuple(int(v) for v in f.split("-")), float(b), float(d)))
        return out


def maximality_intervals(w: EdgeWeights, k: int, t_lo: float = 0.0) -> FaceCountProcess:
    """Event sweep over the edge schedule.

    When edge ``uv`` arrives, the (k+1)-cliques it completes that are maximal
    right away are ``uv`` plus a (k-1)-clique of the common neighbourhood
    ``L`` with no common neighbour inside ``L``. A set that is never maximal
    at its birth is never maximal, so these are all candidates.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if not 0.0 <= t_lo < 1.0:
        raise InvalidParameter(f"t_lo must lie in [0, 1), got {t_lo}")
    n = w.n
    nb = [0] * n
    faces, births = [], []
    for u, v, t in event_schedule(w, 0.0, 1.0):
        L = nb[u] & nb[v]
        if k == 1:
            if not L:
                faces.append((u, v) if u < v else (v, u))
                births.append(t)
        elif L:
            for tau in cliques_with_empty_extension(nb, L, k - 1):
                faces.append(tuple(sorted((u, v) + tau)))
                births.append(t)
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    return _assemble(w, k, t_lo, faces, births)


def _assemble(w, k, t_lo, faces, births) -> FaceCountProcess:
    if not faces:
        return FaceCountProcess(w.n, k, t_lo, ())
    fa = np.array(faces, dtype=np.int64).reshape(len(faces), k + 1)
    deaths = _deaths(w.weights, fa)
    births = np.asarray(births, dtype=float)
    keep = (births < deaths) & (deaths > t_lo)
    ivs = tuple(MaximalityInterval(tuple(map(int, f)), float(b), float(d))
                for f, b, d in zip(fa[keep], births[keep], deaths[keep]))
    ivs = tuple(sorted(ivs, key=lambda iv: (iv.birth, iv.face)))
    return FaceCountProcess(w.n, k, t_lo, ivs)


def maximality_intervals_exhaustive(w: EdgeWeights, k: int, t_lo: float = 0.0) -> FaceCountProcess:
    """Scan every (k+1)-subset; reference route for small ``n``."""
    fa = np.array(list(itertools.combinations(range(w.n), k + 1)), dtype=np.int64).reshape(-1, k + 1)
    return _assemble(w, k, t_lo, [tuple(f) for f in fa], _births(w.weights, fa))


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise InvalidParameter(f"t must lie in [0, 1], got {t}")


def count_Nk(fc: FaceCountProcess, t: float) -> int:
    """Maximal (k+1)-cliques of ``G(n, t)``."""
    _check_t(t)
    return int(np.count_nonzero((fc.births <= t) & (t < fc.deaths)))


def count_Nk_star(fc: FaceCountProcess, t: float) -> int:
    """Sets maximal at some time ``s >= t``."""
    _check_t(t)
    return int(np.count_nonzero(fc.deaths > t))


def count_Nhat(fc: FaceCountProcess, t: float) -> int:
    """Sets that become maximal only after ``t``."""
    _check_t(t)
    return int(np.count_nonzero(fc.births > t))


def nk_process(fc: FaceCountProcess) -> StepFunction:
    """``N_k`` as a step function on ``[t_lo, 1]``."""
    delta: dict[float, int] = {}
    for b in fc.births[fc.births > fc.t_lo]:
        delta[b] = delta.get(b, 0) + 1
    for d in fc.deaths:
        delta[d] = delta.get(d, 0) - 1
    times = sorted(delta)
    vals, cur = [], count_Nk(fc, fc.t_lo)
    init = cur
    for t in times:
        cur += delta[t]
        vals.append(cur)
    return StepFunction.from_samples(fc.t_lo, init, times, vals)


def _window_time(c: float, k: int, n: int) -> float:
    if c == math.inf:
        return 1.0
    if c == -math.inf:
        return 0.0
    return critical_time(k, n, c)


def jump_count(fc: FaceCountProcess, a: float, b: float, k: int | None = None, n: int | None = None) -> int:
    """Births plus deaths in ``(t_c(a), t_c(b)]``, counted with multiplicity.

    ``a = -inf`` starts the window at the sweep start ``t_lo``; ``b = inf``
    ends it at 1.
    """
    k = fc.k if k is None else k
    n = fc.n if n is None else n
    if not a < b:
        raise InvalidParameter(f"need a < b, got ({a}, {b})")
    lo, hi = _window_time(a, k, n), _window_time(b, k, n)
    if a == -math.inf:
        lo = fc.t_lo
    elif lo < fc.t_lo:
        raise OutOfRegime(f"window start {lo} precedes the sweep start {fc.t_lo}")
    inside = lambda x: (x > lo) & (x <= hi)
    return int(np.count_nonzero(inside(fc.births)) + np.count_nonzero(inside(fc.deaths)))


def hitting_time_T_prime(fc: FaceCountProcess) -> float:
    """Time after which no maximal (k+1)-clique remains."""
    return float(fc.deaths.max()) if len(fc) else 0.0


def hitting_time_generalized(process: StepFunction | FaceCountProcess, m: int = 0) -> float:
    """Smallest time after which the process stays ``<= m``.

    Returns the window start when the process is ``<= m`` throughout.
    """
    if m < 0:
        raise InvalidParameter("m must be >= 0")
    if isinstance(process, FaceCountProcess):
        if m == 0:
            return hitting_time_T_prime(process)
        process = nk_process(process)
    sf = process
    if sf.terminal_value > m:
        raise WindowTooShort(f"process ends at {sf.terminal_value} > {m} inside the window")
    for i in range(len(sf.values) - 1, -1, -1):
        prev = sf.values[i - 1] if i else sf.initial_value
        if prev > m:
            return sf.jump_times[i]
    return sf.t_lo


def hitting_time_T(bp: StepFunction) -> float:
    """Time after which the Betti process stays at zero."""
    return hitting_time_generalized(bp, 0)


def vanished_before_window(bp: StepFunction, m: int = 0) -> bool:
    return bp.max_value() <= m


@dataclass(frozen=True)
class HittingTimes:
    T: float
    T_prime: float
    rescaled_T: float
    rescaled_T_prime: float
    equal: bool
    T_before_window: bool = False

    def to_json(self) -> str:
        return json.dumps({"T": self.T, "T_prime": self.T_prime, "c_T": self.rescaled_T,
                           "c_T_prime": self.rescaled_T_prime, "equal": self.equal,
                           "T_before_window": self.T_before_window})


def hitting_times(bp: StepFunction, fc: FaceCountProcess) -> HittingTimes:
    T = hitting_time_T(bp)
    Tp = hitting_time_T_prime(fc)
    return HittingTimes(T, Tp, rescale_time(T, fc.k, fc.n), rescale_time(Tp, fc.k, fc.n),
                        T == Tp, vanished_before_window(bp))


def count_R(w: EdgeWeights, k: int, m: int, t: float, star: bool = False) -> int:
    """(k-1)-faces lying in at most ``m`` k-faces.

    Without ``star``: faces of ``X(n, t)``. With ``star``: k-sets that are such
    a face of ``X(n, s)`` for some ``s >= t``; the coface count only grows in
    ``s``, so it suffices to look at ``s = max(birth, t)``.
    """
    if k < 1 or m < 0:
        raise InvalidParameter("need k >= 1 and m >= 0")
    _check_t(t)
    W = w.weights
    total = 0
    subsets = itertools.combinations(range(w.n), k)
    while True:
        chunk = list(itertools.islice(subsets, 4096))
        if not chunk:
            break
        fa = np.array(chunk, dtype=np.int64).reshape(-1, k)
        birth = _births(W, fa)
        conn = W[fa].max(axis=1)  # +inf at members
        if star:
            s = np.maximum(birth, t)
            total += int(np.count_nonzero((conn <= s[:, None]).sum(axis=1) <= m))
        else:
            ok = birth <= t
            total += int(np.count_nonzero(ok & ((conn <= t).sum(axis=1) <= m)))
    return total


def count_R_graph(g: Graph, k: int, m: int) -> int:
    """(k-1)-faces of the clique complex of ``g`` with at most ``m`` cofaces."""
    x = clique_complex(g, k)
    return sum(1 for f in x[k - 1] if x.coface_count(f) <= m)
