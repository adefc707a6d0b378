"""Search small random hypergraphs for the smallest instance failing each check or relation."""

import argparse
import random

from hodgehyper.hodge import degree_report
from hodgehyper.hypergraph import format_hypergraph, random_hypergraph
from hodgehyper.spectra import verify_spectral_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tries", type=int, default=3000)
    ap.add_argument("--max-dim", type=int, default=2)
    a = ap.parse_args()
    best: dict[str, tuple] = {}
    for seed in range(a.tries):
        h = random_hypergraph(random.Random(seed).randint(3, 5), a.max_dim, 0.4, seed)
        for n in range(h.max_dim + 1):
            failed = [c.name for c in degree_report(h, n).checks if not c.passed]
            failed += [r.relation_name for r in verify_spectral_suite(h, n) if r.status == "fail"]
            for name in failed:
                if name not in best or len(h) < len(best[name][0]):
                    best[name] = (h, n)
    for name in sorted(best):
        h, n = best[name]
        edges = " | ".join(format_hypergraph(h).strip().splitlines())
        print(f"{name}\n    degree {n}: {edges}")


if __name__ == "__main__":
    main()
