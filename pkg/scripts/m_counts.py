"""Tabulate rank D_{k-1}(k) and the relabelling orbit count M(k) for small k.

    python scripts/m_counts.py --k-max 5 [--out results/m_counts.json]
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from milnorkit.lie import milnor_module, relabel_orbit_count
from milnorkit.witt import milnor_module_rank


@dataclass
class MCountConfig:
    k_min: int = 3
    k_max: int = 5
    out: str | None = None


def run(cfg: MCountConfig) -> list[dict]:
    rows = []
    for k in range(cfg.k_min, cfg.k_max + 1):
        start = time.perf_counter()
        mod = milnor_module(k, k - 1)
        oc = relabel_orbit_count(k)
        rows.append({"k": k, "n": k - 1, "rank": mod.rank, "formula_rank": milnor_module_rank(k, k - 1),
                     "M": oc.count, "flag": oc.flag, "orbit_sizes": list(oc.orbit_sizes),
                     "seconds": round(time.perf_counter() - start, 3)})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k-min", type=int, default=MCountConfig.k_min)
    ap.add_argument("--k-max", type=int, default=MCountConfig.k_max)
    ap.add_argument("--out")
    cfg = MCountConfig(**vars(ap.parse_args(argv)))
    rows = run(cfg)
    print(f"{'k':>2} {'rank':>6} {'M(k)':>6}  flag")
    for r in rows:
        print(f"{r['k']:>2} {r['rank']:>6} {r['M']:>6}  {r['flag']}  ({r['seconds']}s)")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "rows": rows}, indent=1) + "\n")


if __name__ == "__main__":
    main()
