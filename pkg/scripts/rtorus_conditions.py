"""Cycle-condition residues of rhombic tori under gluing shifts and row shears."""
import argparse
import math
from dataclasses import dataclass

from isodirac import builders, dirac, homology


@dataclass
class Config:
    m: int = 6
    n: int = 6
    max_shift: int = 4
    shear: float = 0.1


def report(label, s):
    b = homology.cycle_basis(s)
    ok, res = dirac.condition_ii(s, b)
    print(f"{label:<28} (i)={dirac.condition_i(s)!s:<5} (ii)={ok!s:<5} "
          f"residues/pi={[round(r / math.pi, 6) for r in res]}")


def main(cfg: Config):
    for shift in range(cfg.max_shift + 1):
        report(f"R({cfg.m},{cfg.n}) shift={shift}", builders.rhombi_torus(cfg.m, cfg.n, shift=shift))
    angles = [math.pi / 3 if k % 2 == 0 else 2 * math.pi / 3 for k in range(cfg.m)]
    for k in range(cfg.m):
        sheared = list(angles)
        sheared[k] += cfg.shear
        report(f"R({cfg.m},{cfg.n}) row {k} +{cfg.shear}",
               builders.rhombi_torus(cfg.m, cfg.n, row_angles=sheared))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--max-shift", type=int, default=4)
    p.add_argument("--shear", type=float, default=0.1)
    main(Config(**vars(p.parse_args())))
