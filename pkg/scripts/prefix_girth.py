"""Measure the girth of prefixes of random full (g+s, o)-occultations.

For each (g, s, o) cell, reports how many seeds give a prefix host with girth
greater than g+2 and prints the smallest offending instance, if any.

    python3 scripts/prefix_girth.py --max-g 3 --max-s 3 --max-o 2 --seeds 10
"""
import argparse
from itertools import product

from occult.asterism import is_full_occultation, prefix
from occult.generators import random_full_occultation
from occult.graph import girth


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-g", type=int, default=3)
    ap.add_argument("--max-s", type=int, default=3)
    ap.add_argument("--max-o", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args(argv)
    for g_, s, o in product(range(args.max_g + 1), range(args.max_s + 1), range(1, args.max_o + 1)):
        good, worst = 0, None
        for seed in range(args.seeds):
            G, a = random_full_occultation(g_ + s, o, seed=seed)
            pre = prefix(a, s)
            host = G.induced_subgraph(pre.vertices())
            gi = girth(host)
            if is_full_occultation(pre, o) and gi > g_ + 2:
                good += 1
            elif worst is None or host.n < worst[1].n:
                worst = (seed, host, gi)
        line = f"g={g_} s={s} o={o}: {good}/{args.seeds}"
        if worst:
            seed, host, gi = worst
            line += f"  smallest failure: seed {seed}, {host.n} vertices, girth {gi}"
        print(line)


if __name__ == "__main__":
    main()
