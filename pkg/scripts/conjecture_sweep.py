"""Compare (I^2 : I^(2)) with F_1(I) over many random 2x3 linear matrices.

Nothing is asserted; the script tallies the observed relations and
flags any seed where F_2(I) fails to annihilate I^(2)/I^2.
"""

import argparse
from collections import Counter

from evolab.evolution import conjecture_explorer
from evolab.exactfield import parse_field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--field", default="GF(101)")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()

    F = parse_field(args.field)
    rel, erel = Counter(), Counter()
    bad = []
    for seed in range(args.start, args.start + args.seeds):
        r = conjecture_explorer(seed, args.d, F)
        rel[r.relation] += 1
        erel[r.entries_relation] += 1
        if r.fitting_containment is False:
            bad.append(seed)
        if args.verbose:
            print(f"seed {seed}: {r.relation}; entries: {r.entries_relation}; annihilator {r.annihilator}")
    print(f"{args.seeds} seeds over {F}, d = {args.d}")
    print("annihilator vs F_1(I)^(d//2):", dict(rel))
    print("annihilator vs entry ideal^(d//2):", dict(erel))
    if args.d == 2:
        print("F_2(I) annihilates I^(2)/I^2 on every seed" if not bad else f"F_2(I) containment FAILED on seeds {bad}")


if __name__ == "__main__":
    main()
