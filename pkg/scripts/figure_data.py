"""Tabulate the global constants C_p and c_p for 1 < p <= 20.

Writes one CSV per curve (p, value, method, error) and prints where each
curve attains its minimum.

    python scripts/figure_data.py --steps 400 --outdir results
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

from disksharp.cli import QuantitySpec, SweepSpec, render_rows, run_sweep


@dataclass(frozen=True)
class FigureConfig:
    p_min: float = 1.01
    p_max: float = 20.0
    steps: int = 400
    jobs: int = 1
    outdir: Path = Path("results")


def main(cfg: FigureConfig) -> None:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    for quantity, name in (("Cp_global", "gradient_constant.csv"), ("cp_global", "wirtinger_constant.csv")):
        spec = SweepSpec(QuantitySpec(quantity), cfg.p_min, cfg.p_max, cfg.steps)
        rows = run_sweep(spec, cfg.jobs)
        (cfg.outdir / name).write_text(render_rows(rows, "csv"), newline="")
        p_best, rep = min(rows, key=lambda row: row[1].value)
        print(f"{quantity}: min {rep.value:.10g} at p = {p_best:.6g}; p = {rows[-1][0]:g} -> {rows[-1][1].value:.10g}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-min", type=float, default=FigureConfig.p_min)
    ap.add_argument("--p-max", type=float, default=FigureConfig.p_max)
    ap.add_argument("--steps", type=int, default=FigureConfig.steps)
    ap.add_argument("--jobs", type=int, default=FigureConfig.jobs)
    ap.add_argument("--outdir", type=Path, default=FigureConfig.outdir)
    a = ap.parse_args()
    main(FigureConfig(a.p_min, a.p_max, a.steps, a.jobs, a.outdir))
