"""Print a_n, floor(n^(n/2)) and enumeration timings for small n."""

import argparse
import time

from commcount.decgraph import ENUMERATION_CAP, count_subgroups, enumerate_subgroups, floor_half_power


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--enumerate-up-to", type=int, default=6)
    args = parser.parse_args()

    print(f"{'n':>3} {'a_n':>22} {'floor n^(n/2)':>22} {'enumerated':>11} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        a_n, lb = count_subgroups(n), floor_half_power(n)
        enumerated, seconds = "", ""
        if n <= min(args.enumerate_up_to, ENUMERATION_CAP):
            start = time.perf_counter()
            enumerated = str(len(enumerate_subgroups(n)))
            seconds = f"{time.perf_counter() - start:.2f}"
        print(f"{n:>3} {a_n:>22} {lb:>22} {enumerated:>11} {seconds:>8}")


if __name__ == "__main__":
    main()
