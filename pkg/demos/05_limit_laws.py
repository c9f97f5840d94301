"""
Poisson and Gumbel limits
=========================

A small campaign: N_1(t_0) against Poisson(mu(1, 0)), rescaled T' against
exp(-mu(1, c)), and the mean of N^ at c = 0.
"""

from cliqueproc import ExperimentConfig, gumbel_gof, mu, nhat_curve, poisson_gof, run_trials
from cliqueproc.experiments import factorial_moments

cfg = ExperimentConfig(n=100, k=1, c_grid=(0.0,), trials=300, master_seed=5)
recs = run_trials(cfg)

p = poisson_gof(recs, 0.0, 1)
print(f"mu = {mu(1, 0):.4f}  TV = {p['tv']:.4f}")
for i, (e, t) in enumerate(zip(p["empirical_pmf"], p["target_pmf"])):
    print(f"  P(N = {i}): {e:.3f} vs {t:.3f}")

for row in factorial_moments(recs, 0.0, 3, 1):
    print(f"  r={row['r']}: {row['moment']:.3f} +- {row['se']:.3f}  target {row['target']:.3f}")

g = gumbel_gof(recs, 1, cfg.n)
print(f"KS(T') = {g['ks']:.4f}  p = {g['p_value']:.3f}")
print("mean N^(t_0):", nhat_curve(recs, [0.0])[0]["mean"])
