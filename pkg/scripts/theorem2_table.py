"""Heisenberg-Weyl graph dimension against the closed form.

Columns: numerical Gram rank of {h_p}, the closed form, the shortest prefix
h_0..h_{m-1} reaching full rank, the prefix length the generator ranges
printed alongside the dimension formula would use, and the Gram eigen-gap.

    python scripts/theorem2_table.py --dim-max 16
"""
import argparse

from opgraphs.heisenberg_weyl import verify_theorem2


def stated_prefix(d):
    return (d - 1) // 2 + 2 if d % 2 else d // 2 + 2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim-min", type=int, default=2)
    ap.add_argument("--dim-max", type=int, default=16)
    args = ap.parse_args()
    print(f"{'d':>3} {'rank':>5} {'formula':>7} {'prefix':>6} {'stated':>6} {'gap':>10}  pairs")
    for d in range(args.dim_min, args.dim_max + 1):
        r = verify_theorem2(d)
        gap = "inf" if r.rank_gap == float("inf") else f"{r.rank_gap:.2e}"
        print(f"{d:>3} {r.computed_dim:>5} {r.formula_dim:>7} {r.minimal_generator_count:>6} "
              f"{min(stated_prefix(d), d):>6} {gap:>10}  {list(r.equal_pairs)}")


if __name__ == "__main__":
    main()
