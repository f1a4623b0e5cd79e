"""Count distinct operators reached by normal forms of T-count <= n, against 192(3*2^n - 2)."""

import argparse
import time

from ctsynth.exact import count_distinct_normal_forms


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-t", type=int, default=6)
    args = ap.parse_args()
    print("n\tforms\tdistinct\texpected\tseconds")
    for n in range(args.max_t + 1):
        t0 = time.perf_counter()
        total, distinct = count_distinct_normal_forms(n)
        print(f"{n}\t{total}\t{distinct}\t{192 * (3 * 2**n - 2)}\t{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
