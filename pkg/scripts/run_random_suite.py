"""Tabulate identity and spectral-relation failures on the random corpus, split by weight.

    python3 scripts/run_random_suite.py --count 200 --out results/suite.json
"""

import argparse
import json
import time
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass

import numpy as np

from hodgehyper.chains import TrivialWeight, WeightedHypergraph, ZeroWeight, random_evaluation_weight
from hodgehyper.hodge import degree_report
from hodgehyper.hypergraph import random_hypergraph
from hodgehyper.spectra import verify_spectral_suite


@dataclass
class SuiteConfig:
    count: int = 200
    vertices: int = 6
    max_dim: int = 3
    p: float = 0.3
    seed: int = 0
    spectral: bool = True


def run(cfg: SuiteConfig) -> dict:
    fails: dict[str, Counter] = defaultdict(Counter)
    passes: dict[str, Counter] = defaultdict(Counter)
    skips: dict[str, Counter] = defaultdict(Counter)
    start = time.perf_counter()
    for k in range(cfg.count):
        h = random_hypergraph(cfg.vertices, cfg.max_dim, cfg.p, cfg.seed + k)
        rng = np.random.default_rng(cfg.seed + k)
        for name, phi in (("trivial", TrivialWeight()), ("evaluation", random_evaluation_weight(h, rng)),
                          ("zero", ZeroWeight())):
            wh = WeightedHypergraph(h, phi)
            for n in range(wh.top_dim + 1):
                for c in degree_report(wh, n).checks:
                    (passes if c.passed else fails)[name][c.name] += 1
                if cfg.spectral:
                    for r in verify_spectral_suite(wh, n):
                        bucket = {"pass": passes, "fail": fails, "skipped": skips}[r.status]
                        bucket[name][r.relation_name] += 1
    return {"config": asdict(cfg), "seconds": round(time.perf_counter() - start, 1),
            "failures": {w: dict(sorted(c.items())) for w, c in fails.items()},
            "passes": {w: dict(sorted(c.items())) for w, c in passes.items()},
            "skipped": {w: dict(sorted(c.items())) for w, c in skips.items()}}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--vertices", type=int, default=6)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--p", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-spectral", action="store_true")
    ap.add_argument("--out", default=None)
    a = ap.parse_args()
    result = run(SuiteConfig(a.count, a.vertices, a.max_dim, a.p, a.seed, not a.no_spectral))
    text = json.dumps(result, indent=2)
    if a.out:
        with open(a.out, "w") as f:
            f.write(text + "\n")
    for weight, table in result["failures"].items():
        for name, count in table.items():
            total = count + result["passes"].get(weight, {}).get(name, 0)
            print(f"{weight:10s} {name:55s} failed {count:4d} / {total}")
    print(f"{result['seconds']}s")


if __name__ == "__main__":
    main()
