"""Ratio ladders of the extremal families against the sharp constants.

    python scripts/sharpness_study.py --p 1.5 2 3 5 --rhos 0.9 0.99 0.999 0.9999
"""
import argparse
import json
from dataclasses import dataclass

from disksharp.extremal import norm_limit_study, sharpness_study


@dataclass(frozen=True)
class StudyConfig:
    ps: tuple = (1.5, 2.0, 3.0, 5.0)
    rhos: tuple = (0.9, 0.99, 0.999)
    degree: int = 1


def main(cfg: StudyConfig) -> list[dict]:
    out = []
    for p in cfg.ps:
        for study in (
            sharpness_study(p, "gradient", cfg.rhos, cfg.degree),
            sharpness_study(p, "wirtinger", cfg.rhos, cfg.degree),
            norm_limit_study(p, cfg.rhos, cfg.degree),
        ):
            out.append(study.as_dict())
            print(f"p={study.p:<4} {study.kind:<10} target {study.target:.10f}  extrapolated {study.extrapolated:.10f}"
                  f"  rel err {study.relative_error:.2e}  raw {study.raw_relative_error:.2e}  monotone {study.monotone}")
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=float, nargs="+", default=list(StudyConfig.ps))
    ap.add_argument("--rhos", type=float, nargs="+", default=list(StudyConfig.rhos))
    ap.add_argument("--degree", type=int, default=StudyConfig.degree)
    ap.add_argument("--json", help="also write the studies to this file")
    a = ap.parse_args()
    res = main(StudyConfig(tuple(a.p), tuple(a.rhos), a.degree))
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(res, fh, indent=1)
