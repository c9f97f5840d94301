"""Seeded Monte Carlo campaigns and the statistics compared with the limit laws."""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .errors import BudgetExceeded, InvalidParameter
from .homology import Field, betti_process
from .maximal import (count_Nk, count_Nk_star, hitting_time_T, hitting_time_T_prime,
                      maximality_intervals, vanished_before_window)
from .process import critical_time, generate_weights, rescale_time, trial_seed


def mu(k: int, c: float) -> float:
    """Limit intensity ``(k/2+1)^(k/2) / (k+1)! * e^(-c)``; also its tail integral from c."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    return (k / 2 + 1) ** (k / 2) / math.factorial(k + 1) * math.exp(-c)


def gumbel_cdf(k: int, c: float) -> float:
    return math.exp(-mu(k, c))


def gumbel_quantile(k: int, u: float) -> float:
    """Inverse of :func:`gumbel_cdf`."""
    return math.log(mu(k, 0.0)) - math.log(-math.log(u))


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    k: int = 1
    c_grid: tuple[float, ...] = (0.0,)
    trials: int = 100
    master_seed: int = 0
    field: str = "prime"
    parallelism: int = 1
    compute_betti: bool = False
    # rescaled start of the stored Betti window; None sweeps from t = 0
    betti_c_lo: float | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        if self.trials < 1:
            raise InvalidParameter("trials must be >= 1")
        if not self.c_grid:
            raise InvalidParameter("c_grid must be non-empty")
        if list(self.c_grid) != sorted(self.c_grid):
            raise InvalidParameter("c_grid must be sorted")
        for c in self.c_grid:
            t = critical_time(self.k, self.n, c)
            if not 0.0 < t < 1.0:
                raise InvalidParameter(f"t_c({c}) = {t} outside (0, 1)")
        Field.parse(self.field)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c_grid"] = list(self.c_grid)
        return d

    def resolved(self) -> dict:
        """Config minus execution-only knobs, the part results depend on."""
        d = self.to_dict()
        d.pop("parallelism")
        d.pop("max_seconds")
        return d


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    seed: int
    T_prime: float
    c_T_prime: float
    # per c in the grid: {"c", "N", "N_star", "beta"}
    counts: tuple[dict, ...]
    # births and deaths of maximal faces after t_c(c_grid[0])
    jump_times: tuple[float, ...]
    T: float | None = None
    c_T: float | None = None
    equal: bool | None = None
    T_before_window: bool | None = None

    def to_json(self) -> str:
        return json.dumps({
            "trial_index": self.trial_index, "seed": self.seed,
            "T": self.T, "T_prime": self.T_prime, "c_T": self.c_T, "c_T_prime": self.c_T_prime,
            "equal": self.equal, "T_before_window": self.T_before_window,
            "counts": list(self.counts), "jump_times": list(self.jump_times),
        })

    @classmethod
    def from_json(cls, line: str) -> "TrialRecord":
        d = json.loads(line)
        return cls(d["trial_index"], d["seed"], d["T_prime"], d["c_T_prime"], tuple(d["counts"]),
                   tuple(d["jump_times"]), d["T"], d["c_T"], d["equal"], d["T_before_window"])

    def count(self, c: float, key: str = "N"):
        for row in self.counts:
            if row["c"] == c:
                return row[key]
        raise KeyError(f"no counts recorded at c={c}")


def run_trial(cfg: ExperimentConfig, index: int) -> TrialRecord:
    seed = trial_seed(cfg.master_seed, index)
    w = generate_weights(cfg.n, seed)
    fc = maximality_intervals(w, cfg.k, 0.0)
    ts = [critical_time(cfg.k, cfg.n, c) for c in cfg.c_grid]
    bp = None
    if cfg.compute_betti:
        t_lo = 0.0 if cfg.betti_c_lo is None else critical_time(cfg.k, cfg.n, cfg.betti_c_lo)
        bp = betti_process(w, cfg.k, t_lo, Field.parse(cfg.field))
    counts = tuple({"c": c, "N": count_Nk(fc, t), "N_star": count_Nk_star(fc, t),
                    "beta": None if bp is None else bp.value_at(t)}
                   for c, t in zip(cfg.c_grid, ts))
    lo = ts[0]
    jumps = np.sort(np.concatenate([fc.births[fc.births > lo], fc.deaths[fc.deaths > lo]]))
    Tp = hitting_time_T_prime(fc)
    rec = dict(trial_index=index, seed=seed, T_prime=Tp, c_T_prime=rescale_time(Tp, cfg.k, cfg.n),
               counts=counts, jump_times=tuple(float(x) for x in jumps))
    if bp is not None:
        T = hitting_time_T(bp)
        rec.update(T=T, c_T=rescale_time(T, cfg.k, cfg.n), equal=T == Tp,
                   T_before_window=vanished_before_window(bp))
    return TrialRecord(**rec)


def _run_chunk(args):
    cfg, indices = args
    return [run_trial(cfg, i) for i in indices]


def run_trials(cfg: ExperimentConfig, indices: Iterable[int] | None = None) -> list[TrialRecord]:
    """Run trials in index order.

    Output does not depend on ``parallelism``. Exceeding ``max_seconds``
    raises :class:`BudgetExceeded` carrying the records finished so far.
    """
    idx = list(range(cfg.trials)) if indices is None else list(indices)
    start = time.monotonic()
    out: list[TrialRecord] = []

    def over_budget():
        return cfg.max_seconds is not None and time.monotonic() - start > cfg.max_seconds

    if cfg.parallelism <= 1:
        for i in idx:
            out.append(run_trial(cfg, i))
            if over_budget() and len(out) < len(idx):
                raise BudgetExceeded(f"time budget {cfg.max_seconds}s exceeded after {len(out)} trials", out)
        return out
    size = max(1, len(idx) // (4 * cfg.parallelism))
    chunks = [(cfg, idx[s:s + size]) for s in range(0, len(idx), size)]
    with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
        for recs in pool.map(_run_chunk, chunks):
            out.extend(recs)
            if over_budget() and len(out) < len(idx):
                pool.shutdown(cancel_futures=True)
                raise BudgetExceeded(f"time budget {cfg.max_seconds}s exceeded after {len(out)} trials", out)
    return out


def records_to_jsonl(records: Sequence[TrialRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


# ---------------------------------------------------------------------------
# statistics


def _se(x: np.ndarray) -> float:
    return float(x.std(ddof=1) / math.sqrt(len(x))) if len(x) > 1 else float("nan")


def tv_to_poisson(samples: Sequence[int], mean: float) -> tuple[float, list[float], list[float]]:
    """Total-variation distance between the empirical law of ``samples`` and Poisson(mean)."""
    x = np.asarray(samples, dtype=int)
    top = int(x.max(initial=0))
    emp = np.bincount(x, minlength=top + 1) / len(x)
    tgt = stats.poisson.pmf(np.arange(top + 1), mean)
    tail = float(stats.poisson.sf(top, mean))
    tv = 0.5 * (float(np.abs(emp - tgt).sum()) + tail)
    return tv, emp.tolist(), tgt.tolist()


def poisson_gof(records: Sequence[TrialRecord], c: float, k: int) -> dict:
    m = mu(k, c)
    n_samples = [r.count(c, "N") for r in records]
    tv, emp, tgt = tv_to_poisson(n_samples, m)
    rep = {"c": c, "k": k, "mu": m, "sample_size": len(records),
           "empirical_pmf": emp, "target_pmf": tgt, "tv": tv}
    betas = [r.count(c, "beta") for r in records]
    if all(b is not None for b in betas):
        tvb, empb, tgtb = tv_to_poisson(betas, m)
        rep.update(empirical_pmf_beta=empb, target_pmf_beta=tgtb, tv_beta=tvb)
    return rep


def void_probability(records: Sequence[TrialRecord], a: float, b: float, k: int, n: int) -> dict:
    """Fraction of trials with no jump of ``N_k`` in ``(t_c(a), t_c(b)]``."""
    lo = critical_time(k, n, a)
    hi = 1.0 if b == math.inf else critical_time(k, n, b)
    empty = 0
    for r in records:
        if a < r.counts[0]["c"]:
            raise InvalidParameter(f"jumps were recorded only after c={r.counts[0]['c']}")
        js = np.asarray(r.jump_times)
        empty += not np.any((js > lo) & (js <= hi))
    target = math.exp(-(mu(k, a) - (0.0 if b == math.inf else mu(k, b))))
    return {"a": a, "b": b, "k": k, "sample_size": len(records),
            "empirical": empty / len(records), "target": target}


def ks_statistic(samples: Sequence[float], cdf) -> float:
    return float(stats.kstest(np.asarray(samples, dtype=float), cdf).statistic)


def gumbel_gof(records: Sequence[TrialRecord], k: int, n: int, which: str = "T_prime") -> dict:
    """KS distance between rescaled hitting times and ``c -> exp(-mu(k, c))``."""
    key = {"T_prime": "c_T_prime", "T": "c_T"}[which]
    xs = np.array([getattr(r, key) for r in records], dtype=float)
    cdf = np.vectorize(lambda c: gumbel_cdf(k, c))
    res = stats.kstest(xs, cdf)
    return {"k": k, "n": n, "which": which, "sample_size": len(xs),
            "ks": float(res.statistic), "p_value": float(res.pvalue)}


def hitting_agreement(records: Sequence[TrialRecord]) -> float:
    flags = [r.equal for r in records]
    if any(f is None for f in flags):
        raise InvalidParameter("records were produced without compute_betti")
    return sum(flags) / len(flags)


def nhat_curve(records: Sequence[TrialRecord], c_grid: Sequence[float]) -> list[dict]:
    rows = []
    for c in c_grid:
        x = np.array([r.count(c, "N_star") - r.count(c, "N") for r in records], dtype=float)
        rows.append({"c": c, "mean": float(x.mean()), "se": _se(x), "sample_size": len(x)})
    return rows


def falling_factorial(x: np.ndarray, r: int) -> np.ndarray:
    out = np.ones_like(x, dtype=float)
    for i in range(r):
        out *= x - i
    return out


def factorial_moments_of(samples: Sequence[int], r_max: int) -> list[dict]:
    if not 1 <= r_max <= 4:
        raise InvalidParameter("r_max must lie in 1..4")
    x = np.asarray(samples, dtype=float)
    rows = []
    for r in range(1, r_max + 1):
        f = falling_factorial(x, r)
        rows.append({"r": r, "moment": float(f.mean()), "se": _se(f)})
    return rows


def factorial_moments(records: Sequence[TrialRecord], c: float, r_max: int, k: int) -> list[dict]:
    rows = factorial_moments_of([r.count(c, "N") for r in records], r_max)
    m = mu(k, c)
    for row in rows:
        row["target"] = m ** row["r"]
    return rows


def summary(cfg: ExperimentConfig, records: Sequence[TrialRecord]) -> dict:
    out = {"config": cfg.resolved(), "trials": len(records),
           "nhat": nhat_curve(records, cfg.c_grid),
           "poisson": [poisson_gof(records, c, cfg.k) for c in cfg.c_grid],
           "gumbel_T_prime": gumbel_gof(records, cfg.k, cfg.n, "T_prime")}
    if cfg.compute_betti:
        out["agreement"] = hitting_agreement(records)
        out["gumbel_T"] = gumbel_gof(records, cfg.k, cfg.n, "T")
    return out
