"""Fuzz the multi-level (c >= 2) extraction path and count how often the
carving step has to hand over to the direct search.

Every outcome is re-validated by interrupted_to_occultation itself, so any
ExtractionError here is a real failure and is reported with its seed.

    python3 scripts/fuzz_carving.py --seeds 200 --s 2 3 --c 2 --o 1 2
"""
import argparse
import time
from collections import Counter
from itertools import product

from occult.extraction import ExtractionError, interrupted_to_occultation
from occult.generators import random_interrupted_asterism


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--s", nargs="+", type=int, default=[2])
    ap.add_argument("--c", nargs="+", type=int, default=[2])
    ap.add_argument("--o", nargs="+", type=int, default=[1, 2])
    ap.add_argument("--invade-prob", type=float, default=0.5)
    args = ap.parse_args(argv)
    for s, c, o in product(args.s, args.c, args.o):
        t0 = time.perf_counter()
        kinds, steps, errors = Counter(), Counter(), []
        for seed in range(args.seeds):
            g, a = random_interrupted_asterism(s ** c, seed=seed, invade_prob=args.invade_prob)
            try:
                out = interrupted_to_occultation(g, a, c, o, s)
            except ExtractionError as exc:
                errors.append((seed, str(exc)))
                continue
            kinds[out.kind] += 1
            steps.update(t["step"] for t in out.trace)
        print(f"s={s} c={c} o={o}: {dict(kinds)}, steps {dict(steps)}, errors {len(errors)}, "
              f"{time.perf_counter() - t0:.1f}s")
        for seed, msg in errors[:5]:
            print(f"  seed {seed}: {msg}")


if __name__ == "__main__":
    main()
