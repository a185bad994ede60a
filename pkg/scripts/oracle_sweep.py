#!/usr/bin/env python3
"""Compare Groebner membership with a Macaulay-matrix certificate search on random GF(p) ideals."""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracle import certificate_degree  # noqa: E402
from ringcheck.groebner import ideal_member  # noqa: E402
from ringcheck.poly import GF, PolyRing, monomials_up_to  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ideals", type=int, default=200)
    ap.add_argument("--prime", type=int, default=5)
    ap.add_argument("--cap", type=int, default=14, help="largest certificate degree tried")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    hist, bad = {}, 0
    t0 = time.perf_counter()
    for _ in range(args.ideals):
        n = rng.randint(1, 3)
        R = PolyRing(["x", "y", "z"][:n], GF(args.prime))
        monos = monomials_up_to(n, 3)

        def rp(d=3, terms=3):
            ms = [m for m in monos if sum(m) <= d]
            picks = rng.sample(ms, min(len(ms), rng.randint(1, terms)))
            return R.from_dict({m: rng.randint(1, args.prime - 1) for m in picks})

        gens = [rp() for _ in range(rng.randint(1, 3))]
        member = R.zero
        for g in gens:
            member = member + rp(1, 2) * g
        for f in (member, rp()):
            D = certificate_degree(f, gens, args.cap)
            hist[D] = hist.get(D, 0) + 1
            if ideal_member(f, gens) != (D is not None):
                bad += 1
                print("disagreement:", gens, f, D)
    print("certificate degree histogram:", dict(sorted(hist.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))))
    print(f"{bad} disagreements in {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
