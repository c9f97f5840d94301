"""Exact Betti numbers of finite simplicial complexes and the Betti step process.

Ranks are computed by sparse column reduction, either modulo a prime or over
the rationals with fraction-free integer arithmetic. Floating point never
enters a rank computation.
"""
from __future__ import annotations

import bisect
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._bits import bits, cliques, components, mask_of
from .complex import SimplicialComplex, clique_complex
from .errors import InvalidParameter
from .process import EdgeWeights, Graph, event_schedule

DEFAULT_PRIME = 2147483647


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``p=None`` for the rationals, else GF(p)."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise InvalidParameter(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """``"rational"``, ``"prime"`` or ``"prime:<p>"``."""
        s = text.strip().lower()
        if s in ("rational", "q"):
            return cls(None)
        if s == "prime":
            return cls(DEFAULT_PRIME)
        if s.startswith("prime:"):
            return cls(int(s.split(":", 1)[1], 0))
        raise InvalidParameter(f"unknown field {text!r}")

    def __str__(self):
        return "rational" if self.p is None else f"prime:{self.p}"


RATIONAL = Field(None)
PRIME = Field(DEFAULT_PRIME)


class ColumnReducer:
    """Incremental rank of a set of sparse column vectors.

    Columns are ``{row: coefficient}`` dicts. Each stored column has a
    distinct lowest (largest-index) nonzero row, its pivot.
    """

    def __init__(self, field: Field = PRIME):
        self.p = field.p
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, col: dict[int, int]) -> bool:
        """Reduce ``col`` against the stored pivots; keep it if nonzero.

        Returns True when the rank went up.
        """
        p = self.p
        col = {r: v for r, v in col.items() if (v % p if p else v)}
        if p:
            col = {r: v % p for r, v in col.items()}
        pivots = self.pivots
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                break
            c = col[low]
            if p:
                for r, v in piv.items():
                    x = (col.get(r, 0) - c * v) % p
                    if x:
                        col[r] = x
                    else:
                        col.pop(r, None)
            else:
                a = piv[low]
                new = {r: a * v for r, v in col.items()}
                for r, v in piv.items():
                    x = new.get(r, 0) - c * v
                    if x:
                        new[r] = x
                    else:
                        new.pop(r, None)
                col = _primitive(new)
        if not col:
            return False
        low = max(col)
        if p:
            inv = pow(col[low], -1, p)
            col = {r: v * inv % p for r, v in col.items()}
        else:
            col = _primitive(col)
        pivots[low] = col
        return True


def _primitive(col: dict[int, int]) -> dict[int, int]:
    if not col:
        return col
    g = 0
    for v in col.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if col[max(col)] < 0:
        g = -g
    if g == 1:
        return col
    return {r: v // g for r, v in col.items()}


def rank(columns: Sequence[dict[int, int]], field: Field = PRIME) -> int:
    red = ColumnReducer(field)
    for c in columns:
        red.add(c)
    return red.rank


@dataclass(frozen=True)
class BoundaryMatrix:
    """Boundary map from d-faces (columns) to (d-1)-faces (rows)."""

    d: int
    rows: tuple
    cols: tuple
    columns: tuple  # sparse columns {row index: +-1}

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def to_dense(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=np.int64)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                m[i, j] = v
        return m

    def rank(self, field: Field = PRIME) -> int:
        return rank(self.columns, field)


def boundary_matrix(x: SimplicialComplex, d: int) -> BoundaryMatrix:
    """Alternating-sign incidence: ``d[v0..vd] = sum_i (-1)^i [.. v_i omitted ..]``."""
    if not 1 <= d <= x.dim_cap:
        raise InvalidParameter(f"d must lie in [1, {x.dim_cap}], got {d}")
    idx = x.index(d - 1)
    cols = []
    for f in x[d]:
        cols.append({idx[f[:i] + f[i + 1:]]: (-1) ** i for i in range(len(f))})
    return BoundaryMatrix(d, x[d - 1], x[d], tuple(cols))


def betti(x: SimplicialComplex, k: int, field: Field = PRIME) -> int:
    """Unreduced Betti number; ``betti(x, 0)`` counts components."""
    if k < 0:
        raise InvalidParameter("k must be >= 0")
    if x.dim_cap < k + 1:
        raise InvalidParameter(f"betti({k}) needs dim_cap >= {k + 1}, got {x.dim_cap}")
    r_k = boundary_matrix(x, k).rank(field) if k >= 1 else 0
    r_k1 = boundary_matrix(x, k + 1).rank(field)
    b = len(x[k]) - r_k - r_k1
    if b < 0:
        raise AssertionError(f"negative Betti number {b}: rank computation is broken")
    return b


def betti_numbers(x: SimplicialComplex, field: Field = PRIME) -> list[int]:
    """All Betti numbers of the stored complex, treating it as complete."""
    ranks = [0] + [boundary_matrix(x, d).rank(field) for d in range(1, x.dim_cap + 1)] + [0]
    return [len(x[d]) - ranks[d] - ranks[d + 1] for d in range(x.dim_cap + 1)]


def euler_check(x: SimplicialComplex, field: Field = PRIME) -> bool:
    fv = x.f_vector()
    chi_faces = sum((-1) ** d * f for d, f in enumerate(fv))
    chi_betti = sum((-1) ** d * b for d, b in enumerate(betti_numbers(x, field)))
    return chi_faces == chi_betti


# ---------------------------------------------------------------------------
# step functions


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous integer step function on ``[t_lo, 1]``.

    ``values[i]`` holds on ``[jump_times[i], jump_times[i+1])``;
    ``initial_value`` holds on ``[t_lo, jump_times[0])``.
    """

    t_lo: float
    initial_value: int
    jump_times: tuple[float, ...] = ()
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.jump_times) != len(self.values):
            raise InvalidParameter("jump_times and values differ in length")
        prev = self.initial_value
        for i, (t, v) in enumerate(zip(self.jump_times, self.values)):
            if v == prev:
                raise InvalidParameter(f"no change at jump {i} (t={t})")
            if i and not t > self.jump_times[i - 1]:
                raise InvalidParameter("jump times must be strictly increasing")
            prev = v

    @classmethod
    def from_samples(cls, t_lo: float, initial_value: int, times, vals) -> "StepFunction":
        """Collapse a (time, value) sample path into its jumps."""
        jt, jv = [], []
        prev = initial_value
        for t, v in zip(times, vals):
            if v != prev:
                jt.append(float(t))
                jv.append(int(v))
                prev = v
        return cls(float(t_lo), int(initial_value), tuple(jt), tuple(jv))

    def __call__(self, t: float) -> int:
        return self.value_at(t)

    def value_at(self, t: float) -> int:
        i = bisect.bisect_right(self.jump_times, t)
        return self.initial_value if i == 0 else self.values[i - 1]

    @property
    def terminal_value(self) -> int:
        return self.values[-1] if self.values else self.initial_value

    def max_value(self) -> int:
        return max((self.initial_value,) + self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,value\n")
        buf.write(f"{self.t_lo:.17g},{self.initial_value}\n")
        for t, v in zip(self.jump_times, self.values):
            buf.write(f"{t:.17g},{v}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "StepFunction":
        lines = [ln for ln in text.strip().splitlines() if ln and not ln.startswith("#")]
        if lines[0].strip() != "t,value":
            raise ValueError("expected header 't,value'")
        rows = [ln.split(",") for ln in lines[1:]]
        t_lo, v0 = float(rows[0][0]), int(rows[0][1])
        return cls(t_lo, v0, tuple(float(r[0]) for r in rows[1:]), tuple(int(r[1]) for r in rows[1:]))


# ---------------------------------------------------------------------------
# the Betti process


def _reduced_betti_of_link(nbrs: list[int], mask: int, j: int, field: Field) -> int:
    """Reduced Betti number ``j`` of the clique complex induced on ``mask``."""
    if mask == 0:
        return 1 if j == -1 else 0
    if j < 0:
        return 0
    if j == 0:
        return len(components(nbrs, mask)) - 1
    verts = list(bits(mask))
    pos = {v: i for i, v in enumerate(verts)}
    sub = Graph.from_edges(len(verts), [(pos[a], pos[b]) for a in verts for b in bits(nbrs[a] & mask) if a < b])
    return betti(clique_complex(sub, j + 1), j, field)


def _is_cone(nbrs: list[int], mask: int) -> bool:
    for v in bits(mask):
        if nbrs[v] & mask == mask & ~(1 << v):
            return True
    return False


def _born_maximal_edge_times(w: EdgeWeights) -> np.ndarray:
    """Weights of edges whose endpoints have no common earlier neighbour."""
    W = w.weights
    iu, ju = np.triu_indices(w.n, k=1)
    out = []
    for start in range(0, iu.size, 4096):
        a, b = iu[start:start + 4096], ju[start:start + 4096]
        death = np.maximum(W[a], W[b]).min(axis=1)
        birth = W[a, b]
        out.append(birth[birth < death])
    return np.concatenate(out) if out else np.empty(0)


def betti_process(w: EdgeWeights, k: int, t_lo: float = 0.0, field: Field = PRIME,
                  method: str = "auto", stop_when_settled: bool = True) -> StepFunction:
    """``t -> beta_k(X(n, t))`` on ``[t_lo, 1]`` as a step function.

    ``method="incremental"`` (k = 1 only, the default there) keeps a reduced
    basis of triangle boundaries and adds, per arriving edge ``uv``, one
    triangle for each component of the common neighbourhood of ``u`` and
    ``v``; any two triangles ``uvw``, ``uvw'`` with ``w ~ w'`` differ by a
    sum of older boundaries, so nothing else can change the rank.

    ``method="recompute"`` decides each event from the reduced homology of the
    common-neighbourhood link ``L``: the new complex is the old one with a cone
    attached along the suspension of ``L``. When ``H~_{k-1}(L)`` and
    ``H~_{k-2}(L)`` vanish nothing changes, and when only ``H~_{k-1}(L)`` is
    nonzero a zero Betti number stays zero. Remaining events recompute
    ``beta_k`` from scratch.

    With ``stop_when_settled`` the sweep ends once ``beta_k = 0`` and no later
    event can raise it again; the returned step function is the same.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if not 0.0 <= t_lo < 1.0:
        raise InvalidParameter(f"t_lo must lie in [0, 1), got {t_lo}")
    if method == "auto":
        method = "incremental" if k == 1 else "recompute"
    if method == "incremental":
        if k != 1:
            raise InvalidParameter("incremental method supports k = 1 only")
        times, vals, init = _sweep_incremental_k1(w, t_lo, field, stop_when_settled)
    elif method == "recompute":
        times, vals, init = _sweep_recompute(w, k, t_lo, field, stop_when_settled)
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    return StepFunction.from_samples(t_lo, init, times, vals)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _sweep_incremental_k1(w: EdgeWeights, t_lo: float, field: Field, stop: bool):
    n = w.n
    sched = event_schedule(w, 0.0, 1.0)
    settle_after = _born_maximal_edge_times(w).max(initial=0.0) if stop else math.inf
    nb = [0] * n
    uf = _UnionFind(n)
    red = ColumnReducer(field)
    eid: dict[tuple[int, int], int] = {}
    comps, n_edges = n, 0
    beta = 0
    init = 0
    times, vals = [], []
    for e, (u, v, t) in enumerate(sched):
        L = nb[u] & nb[v]
        eid[(u, v)] = e
        if L:
            # with beta_1 = 0 every extra component column is already a
            # boundary, so only the first one (new pivot at uv) is needed
            comps_L = components(nb, L) if beta else [L]
            for comp in comps_L:
                x = (comp & -comp).bit_length() - 1
                # boundary of the triangle on sorted (a, b, c): bc - ac + ab
                a, b, c = sorted((u, v, x))
                col = {eid[(b, c)]: 1, eid[(a, c)]: -1, eid[(a, b)]: 1}
                red.add(col)
        elif uf.union(u, v):
            comps -= 1
        nb[u] |= 1 << v
        nb[v] |= 1 << u
        n_edges += 1
        beta = n_edges - n + comps - red.rank
        if t <= t_lo:
            init = beta
        else:
            times.append(t)
            vals.append(beta)
        if beta == 0 and t >= settle_after and t > t_lo:
            break
    return times, vals, init


def _sweep_recompute(w: EdgeWeights, k: int, t_lo: float, field: Field, stop: bool):
    n = w.n
    sched = list(event_schedule(w, 0.0, 1.0))
    nb = [0] * n
    uf = _UnionFind(n)
    full = (1 << n) - 1

    def from_scratch():
        by_size = cliques(nb, full, k + 2)
        x = SimplicialComplex(n, tuple(tuple(sorted(c)) for c in by_size))
        return betti(x, k, field)

    # first pass: find the last event whose link has nonzero H~_{k-2}; after
    # it a vanished beta_k can no longer come back
    last_danger = -1
    if stop:
        tmp = [0] * n
        for i, (u, v, t) in enumerate(sched):
            L = tmp[u] & tmp[v]
            if k == 1:
                danger = L == 0
            elif L == 0 or _is_cone(tmp, L):
                danger = False
            else:
                danger = _reduced_betti_of_link(tmp, L, k - 2, field) != 0
            if danger:
                last_danger = i
            tmp[u] |= 1 << v
            tmp[v] |= 1 << u
    else:
        last_danger = len(sched)

    beta = 0
    init = 0
    times, vals = [], []
    for i, (u, v, t) in enumerate(sched):
        L = nb[u] & nb[v]
        joined = uf.union(u, v)
        nb[u] |= 1 << v
        nb[v] |= 1 << u
        if L == 0:
            if k == 1 and not joined:
                beta += 1
        elif _is_cone(nb, L):
            pass
        else:
            b = _reduced_betti_of_link(nb, L, k - 2, field)
            if not (b == 0 and beta == 0):
                a = _reduced_betti_of_link(nb, L, k - 1, field)
                if a or b:
                    beta = from_scratch()
        if t <= t_lo:
            init = beta
        else:
            times.append(t)
            vals.append(beta)
        if beta == 0 and i >= last_danger and t > t_lo:
            break
    return times, vals, init
