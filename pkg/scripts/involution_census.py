"""Invariant fingerprints of H(Z/n) and L(Z/n) side by side.

    python scripts/involution_census.py --max-n 12
"""

import argparse
import json
from dataclasses import asdict, dataclass

from quatring.oracle import census
from quatring.quat import ell, hamilton


@dataclass
class CensusConfig:
    max_n: int = 12
    as_json: bool = False


def run(cfg: CensusConfig) -> list[dict]:
    rows = []
    for n in range(2, cfg.max_n + 1):
        h, l = census(hamilton(n)), census(ell(n))
        rows.append({
            "n": n,
            "H": h.invariants(),
            "L": l.invariants(),
            "same": h.invariants() == l.invariants(),
        })
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=CensusConfig.max_n)
    parser.add_argument("--json", dest="as_json", action="store_true")
    cfg = CensusConfig(**vars(parser.parse_args()))
    rows = run(cfg)
    if cfg.as_json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, sort_keys=True))
        return
    print("invariants: (units, involutions, square-zero, idempotents, center)")
    for r in rows:
        flag = "" if r["same"] else "   <- differ"
        print(f"n={r['n']:>3}  H={r['H']}  L={r['L']}{flag}")


if __name__ == "__main__":
    main()
