"""Run the solver cross-validation suites and print one summary line each.

    python scripts/solver_crosscheck.py --limit 243
"""

import argparse
import time
from dataclasses import dataclass

from quatring.oracle import acceptance_moduli, crosscheck_solver


@dataclass
class CrosscheckConfig:
    limit: int = 2187
    full_budget: int = 2_000_000
    max_s_square: int = 10
    max_s_sum: int = 12
    seed: int = 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in vars(CrosscheckConfig()).items():
        parser.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = CrosscheckConfig(**vars(parser.parse_args()))
    runs = [
        ("binary_form_odd", dict(moduli=acceptance_moduli(cfg.limit), full_budget=cfg.full_budget,
                                 seed=cfg.seed)),
        ("scalar_square_2adic", dict(max_s=cfg.max_s_square)),
        ("sum_two_squares_2adic", dict(max_s=cfg.max_s_sum)),
    ]
    bad = 0
    for kind, kwargs in runs:
        start = time.perf_counter()
        rep = crosscheck_solver(kind, **kwargs)
        bad += rep.mismatches
        print(f"{kind:<24} checked={rep.checked:>9} mismatches={rep.mismatches} "
              f"{time.perf_counter() - start:.1f}s")
        for r in rep.records:
            if "mode" in r:
                print(f"    {r['p']}^{r['s']:<2} mode={r['mode']:<6} checked={r['checked']}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
