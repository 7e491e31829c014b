"""Survey SL(2,Z) monodromies with small entries.

For every matrix with entries in [-r, r] the script records the three
conditions, the regime of the coinvariant normal form and, when the
conditions hold, the rank lower bound per level. Finite-order matrices also
get the three-label torsion example.

    python scripts/torus_bundle_survey.py --radius 3 --n-max 3 [--out results/survey.json]
"""
import argparse
import itertools
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from milnorkit.bundle import Monodromy, bundle_check
from milnorkit.report import _regime, cbar_rank_lower_bound, torsion_example


@dataclass
class SurveyConfig:
    radius: int = 3
    n_max: int = 3
    j_max: int = 50
    out: str | None = None


def matrices(r: int):
    for a, b, c, d in itertools.product(range(-r, r + 1), repeat=4):
        if a * d - b * c == 1:
            yield Monodromy(a, b, c, d)


def survey(cfg: SurveyConfig) -> list[dict]:
    rows = []
    for A in matrices(cfg.radius):
        rep = bundle_check(A, cfg.j_max)
        row = {"matrix": A.rows(), "trace": A.trace, "h1": rep.cond1.h1,
               "cond1": rep.cond1.holds, "cond2": str(rep.cond2), "cond3": rep.cond3.holds,
               "all_conditions": rep.all_conditions, "regime": _regime(A)[0]}
        if rep.all_conditions:
            row["bounds"] = {str(n): cbar_rank_lower_bound(A, n, cfg.j_max).bound
                             for n in range(2, cfg.n_max + 1)}
        if row["regime"] == "FINITE_ORDER":
            row["torsion_example"] = torsion_example(A)["normal_form"]["torsion"]
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--radius", type=int, default=SurveyConfig.radius)
    ap.add_argument("--n-max", type=int, default=SurveyConfig.n_max)
    ap.add_argument("--j-max", type=int, default=SurveyConfig.j_max)
    ap.add_argument("--out")
    cfg = SurveyConfig(**vars(ap.parse_args(argv)))
    start = time.perf_counter()
    rows = survey(cfg)
    print(f"{len(rows)} matrices with entries in [-{cfg.radius}, {cfg.radius}] "
          f"({time.perf_counter() - start:.1f}s)")
    print("regimes:", dict(Counter(r["regime"] for r in rows)))
    print("all conditions hold:", sum(r["all_conditions"] for r in rows))
    print("condition 2 status:", dict(Counter(r["cond2"].split("(")[0] for r in rows)))
    for r in rows:
        if "torsion_example" in r:
            print(f"  finite order {r['matrix']}: torsion example {r['torsion_example']['kind']}"
                  f"{'(' + str(r['torsion_example'].get('order')) + ')' if 'order' in r['torsion_example'] else ''}")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "rows": rows}, indent=1) + "\n")


if __name__ == "__main__":
    main()
