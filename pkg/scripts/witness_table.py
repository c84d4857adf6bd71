"""Select d values for a form and tabulate the witness primes with their invariants."""

import argparse

from commcount.numfield import format_elem
from commcount.qforms import extend_form, load_form, local_invariants, select_d_values, verify_report


def _fmt(invariants) -> str:
    rank, disc_class, hasse = invariants
    return f"rank {rank} disc [{disc_class}] hasse {hasse:+d}"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--form", default="default")
    parser.add_argument("--count", type=int, default=6)
    parser.add_argument("--pool", type=int, default=50)
    parser.add_argument("--norms", type=int, default=2000)
    args = parser.parse_args()

    f = load_form(args.form)
    report = select_d_values(f, args.count, args.pool, args.norms)
    print("d values:", ", ".join(format_elem(d) for d in report.d_values))
    print(f"{'pair':>6} {'ideal':>12} {'norm':>6}  invariants, d_i | d_j")
    for (i, j), w in sorted(report.pair_witnesses.items()):
        qi = extend_form(f, report.d_values[i])
        qj = extend_form(f, report.d_values[j])
        inv_i, inv_j = (_fmt(local_invariants(q, w.ideal)) for q in (qi, qj))
        print(f"{i + 1:>3}-{j + 1:<2} {w.ideal.spec():>12} {w.ideal.residue_size:>6}  {inv_i} | {inv_j}")
    problems = verify_report(f, report)
    print("recheck:", "ok" if not problems else "; ".join(problems))


if __name__ == "__main__":
    main()
