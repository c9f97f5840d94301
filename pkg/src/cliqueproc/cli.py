"""Command-line entry point: ``cliqueproc <subcommand> ...``.

Exit codes: 0 success, 1 runtime or budget failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from . import __version__
from .complex import parse_complex
from .errors import BudgetExceeded, InvalidParameter, OutOfRegime
from .experiments import (ExperimentConfig, factorial_moments, hitting_agreement, poisson_gof,
                          run_trials)
from .homology import Field, betti_process
from .maximal import count_Nk, count_Nk_star, maximality_intervals
from .process import event_schedule, generate_weights, rescale_time
from .spectral import garland_certify, zuk_certify


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal or 0x-hex integer: {text!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _field(text: str) -> str:
    try:
        return str(Field.parse(text))
    except (InvalidParameter, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _header(cmd: str, config: dict) -> dict:
    return {"tool": "cliqueproc", "version": __version__, "command": cmd, "config": config}


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_betti_curve(args) -> int:
    if not 0.0 <= args.t_lo < 1.0:
        raise UsageError(f"--t-lo must lie in [0, 1), got {args.t_lo}")
    config = {"n": args.n, "k": args.k, "seed": args.seed, "t_lo": args.t_lo, "field": args.field}
    w = generate_weights(args.n, args.seed)
    bp = betti_process(w, args.k, args.t_lo, Field.parse(args.field))
    fc = maximality_intervals(w, args.k, args.t_lo)
    rows = [args.t_lo] + event_schedule(w, args.t_lo, 1.0).times.tolist()
    with _output(args.out) as out:
        out.write("# " + json.dumps(_header("betti-curve", config)) + "\n")
        out.write("t,c,beta_k,N_k,N_k_star\n")
        for t in rows:
            out.write("%.17g,%.17g,%d,%d,%d\n" % (t, rescale_time(t, args.k, args.n), bp.value_at(t),
                                                 count_Nk(fc, t), count_Nk_star(fc, t)))
    return 0


def cmd_hitting(args) -> int:
    cfg = ExperimentConfig(n=args.n, k=args.k, trials=args.trials, master_seed=args.master_seed,
                           field=args.field, parallelism=args.parallelism, compute_betti=True,
                           max_seconds=args.max_seconds)
    status = 0
    with _output(args.out) as out:
        out.write(json.dumps({"header": _header("hitting", cfg.resolved())}) + "\n")
        try:
            records = run_trials(cfg)
        except BudgetExceeded as exc:
            records, status = exc.partial, 1
        for r in records:
            out.write(json.dumps({"trial_index": r.trial_index, "seed": r.seed, "T": r.T,
                                  "T_prime": r.T_prime, "c_T": r.c_T, "c_T_prime": r.c_T_prime,
                                  "equal": r.equal, "T_before_window": r.T_before_window}) + "\n")
        if status:
            out.write(json.dumps({"budget_exceeded": True, "completed": len(records)}) + "\n")
        else:
            out.write(json.dumps({"summary": {"trials": len(records),
                                              "agreement": hitting_agreement(records)}}) + "\n")
    return status


def cmd_poisson_test(args) -> int:
    cfg = ExperimentConfig(n=args.n, k=args.k, c_grid=(args.c,), trials=args.trials,
                           master_seed=args.master_seed, parallelism=args.parallelism,
                           max_seconds=args.max_seconds)
    try:
        records = run_trials(cfg)
        status = 0
    except BudgetExceeded as exc:
        records, status = exc.partial, 1
    rep = {"header": _header("poisson-test", cfg.resolved()),
           "poisson": poisson_gof(records, args.c, args.k) if records else None,
           "factorial_moments": factorial_moments(records, args.c, args.r_max, args.k) if records else None}
    if status:
        rep["budget_exceeded"] = True
    with _output(args.out) as out:
        out.write(json.dumps(rep) + "\n")
    return status


def cmd_certify(args) -> int:
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}")
    k = 1 if args.mode == "zuk" else args.k
    try:
        x = parse_complex(text, dim_cap=k + 1)
    except ValueError as exc:
        raise UsageError(f"{args.input}: {exc}")
    cert = zuk_certify(x) if args.mode == "zuk" else garland_certify(x, k)
    rep = {"header": _header("certify", {"input": args.input, "k": k, "mode": args.mode})}
    rep.update(cert.to_dict())
    with _output(args.out) as out:
        out.write(json.dumps(rep) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliqueproc", allow_abbrev=False,
                                description="Random clique complex process: simulation and checks.")
    p.add_argument("--version", action="version", version=f"cliqueproc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("betti-curve", allow_abbrev=False, help="beta_k, N_k, N_k* at every edge event")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--seed", type=_seed, required=True)
    b.add_argument("--t-lo", type=float, default=0.0)
    b.add_argument("--field", type=_field, default="prime")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_betti_curve)

    h = sub.add_parser("hitting", allow_abbrev=False, help="T and T' per trial, JSON lines")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--k", type=int, default=1)
    h.add_argument("--trials", type=int, required=True)
    h.add_argument("--master-seed", type=_seed, required=True)
    h.add_argument("--field", type=_field, default="prime")
    h.add_argument("--parallelism", type=int, default=1)
    h.add_argument("--max-seconds", type=float, default=None)
    h.add_argument("--out", default=None)
    h.set_defaults(func=cmd_hitting)

    q = sub.add_parser("poisson-test", allow_abbrev=False, help="N_k(t_c) against Poisson(mu(k, c))")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--c", type=float, default=0.0)
    q.add_argument("--trials", type=int, required=True)
    q.add_argument("--master-seed", type=_seed, required=True)
    q.add_argument("--r-max", type=int, default=3)
    q.add_argument("--parallelism", type=int, default=1)
    q.add_argument("--max-seconds", type=float, default=None)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_poisson_test)

    c = sub.add_parser("certify", allow_abbrev=False, help="Garland or Zuk certificate for a complex file")
    c.add_argument("--input", required=True)
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--mode", choices=("garland", "zuk"), default="garland")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_certify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParameter, OutOfRegime) as exc:
        print(f"cliqueproc: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except Exception as exc:  # noqa: BLE001 - report and map to exit code 1
        print(f"cliqueproc: runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
