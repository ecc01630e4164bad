"""Randomized test of the pointwise estimates, with slack statistics.

    python scripts/fuzz_run.py --p 1.5 2 4 --trials 1000 --seed 0 --jobs 4
"""
import argparse
from dataclasses import dataclass

from disksharp.verification import fuzz_inequalities


@dataclass(frozen=True)
class FuzzConfig:
    ps: tuple = ("1.5", "2", "4")
    trials: int = 1000
    seed: int = 0
    jobs: int = 1


def main(cfg: FuzzConfig) -> bool:
    ok = True
    for p in cfg.ps:
        counts = {}
        for n in sorted({max(1, cfg.trials // 10), cfg.trials}):
            rep = fuzz_inequalities(p, n, cfg.seed, jobs=cfg.jobs)
            counts[n] = rep
        rep = counts[cfg.trials]
        ok &= rep.passed
        print(f"p={p}: {len(rep.failures)} violations in {cfg.trials} trials")
        for n, r in counts.items():
            slack = ", ".join(f"{k} {v:.3g}" for k, v in r.grid["min_slack"].items())
            print(f"  min slack after {n:>5} trials: {slack}")
        for cell in rep.failures[:10]:
            print("  violation:", cell.params, cell.detail)
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", nargs="+", default=list(FuzzConfig.ps))
    ap.add_argument("--trials", type=int, default=FuzzConfig.trials)
    ap.add_argument("--seed", type=int, default=FuzzConfig.seed)
    ap.add_argument("--jobs", type=int, default=FuzzConfig.jobs)
    a = ap.parse_args()
    raise SystemExit(0 if main(FuzzConfig(tuple(a.p), a.trials, a.seed, a.jobs)) else 1)
