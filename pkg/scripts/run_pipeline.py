"""Run the full construction with a dataclass config and report stage timings."""

import argparse
import time
from fractions import Fraction
from pathlib import Path

from commcount.cli import RunConfig, pipeline


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("pipeline-out"))
    parser.add_argument("--n-cap", type=int, default=4)
    parser.add_argument("--volume", type=Fraction, default=Fraction(40))
    args = parser.parse_args()

    config = RunConfig(n_cap=args.n_cap, volume=args.volume, out_dir=args.out)
    start = time.perf_counter()
    for line in pipeline(config):
        print(line)
    print(f"done in {time.perf_counter() - start:.2f}s, report in {args.out}")


if __name__ == "__main__":
    main()
