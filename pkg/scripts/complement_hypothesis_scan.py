"""How often the complement-condition spectral identity holds under each reading of its hypothesis.

For each random hypergraph and degree n, the identity
    s(L_n on X) = quasi-s(up on X_n) U quasi-s(down on d X_{n+1})
is evaluated for X in {Inf, Sup}, and grouped by whether the complement
condition holds at n, at n+1, or at both.
"""

import argparse
from collections import Counter

from hodgehyper.chains import WeightedHypergraph, check_complement_condition
from hodgehyper.hypergraph import random_hypergraph
from hodgehyper.spectra import SpectraCache, circ_eq, circ_union


def identity_holds(wh: WeightedHypergraph, sp: SpectraCache, n: int, carrier: str) -> bool:
    space = wh.inf(n) if carrier == "inf" else wh.sup(n)
    lhs = sp.s(n, carrier)
    rhs = circ_union(sp.qs(n, "up", space), sp.qs(n, "down", sp.boundary_image(n + 1, carrier)))
    return circ_eq(lhs, rhs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    table = Counter()
    for k in range(a.count):
        wh = WeightedHypergraph(random_hypergraph(6, 3, 0.3, a.seed + k))
        sp = SpectraCache(wh)
        for n in range(wh.top_dim + 1):
            for carrier in ("inf", "sup"):
                at_n = check_complement_condition(wh, n, carrier)
                at_next = check_complement_condition(wh, n + 1, carrier)
                ok = identity_holds(wh, sp, n, carrier)
                for label, hyp in (("condition at n+1", at_next), ("condition at n", at_n),
                                   ("condition at n and n+1", at_n and at_next)):
                    if hyp:
                        table[(carrier, label, ok)] += 1
    for carrier in ("inf", "sup"):
        for label in ("condition at n+1", "condition at n", "condition at n and n+1"):
            print(f"{carrier:4s} {label:24s} holds {table[(carrier, label, True)]:4d}  "
                  f"fails {table[(carrier, label, False)]:4d}")


if __name__ == "__main__":
    main()
