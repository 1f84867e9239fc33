"""Build and verify witnesses for every unit pair over a range of moduli.

Reports per-n counts of each canonical tag, failures and wall time.

    python scripts/classification_sweep.py --max-n 128
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass
from math import gcd

from quatring.classify import build_witness, verify_witness


@dataclass
class SweepConfig:
    min_n: int = 2
    max_n: int = 64
    step: int = 1


def sweep(cfg: SweepConfig):
    for n in range(cfg.min_n, cfg.max_n + 1, cfg.step):
        units = [u for u in range(n) if gcd(u, n) == 1]
        tags, failures = Counter(), []
        start = time.perf_counter()
        for a in units:
            for b in units:
                w = build_witness(n, a, b)
                tags[w.tag] += 1
                report = verify_witness(w)
                if not report:
                    failures.append((a, b, report.failures))
        yield n, tags, failures, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-n", type=int, default=SweepConfig.min_n)
    parser.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    parser.add_argument("--step", type=int, default=SweepConfig.step)
    cfg = SweepConfig(**vars(parser.parse_args()))
    total_bad = 0
    for n, tags, failures, secs in sweep(cfg):
        total_bad += len(failures)
        print(f"n={n:>4}  HAMILTON={tags['HAMILTON']:>5}  ELL={tags['ELL']:>5}  "
              f"failures={len(failures)}  {secs:.2f}s")
        for a, b, msgs in failures[:3]:
            print(f"    ({a},{b}): {msgs}")
    raise SystemExit(1 if total_bad else 0)


if __name__ == "__main__":
    main()
