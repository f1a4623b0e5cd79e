"""Fraction of random slots that yield a candidate, at k and at a few k below it.

Shows how the width of the beta window controls whether a slot can succeed.
"""

import argparse
import random
from fractions import Fraction

from ctsynth.approx import make_problem, random_candidate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=0.7853981633974483)
    ap.add_argument("--epsilon", default="0.1")
    ap.add_argument("--draws", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    eps = Fraction(args.epsilon)
    base = make_problem(args.theta, eps)
    rng = random.Random(args.seed)
    print("k\tcandidates\tdraws")
    for dk in (0, -1, -2, -3, -6):
        prob = base if dk == 0 else make_problem(args.theta, eps, k=base.k + dk)
        hits = sum(random_candidate(prob, rng) is not None for _ in range(args.draws))
        print(f"{prob.k}\t{hits}\t{args.draws}")


if __name__ == "__main__":
    main()
