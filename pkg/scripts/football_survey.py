"""Tabulate endpoint groups, Betti numbers and pi0(K) for intervals labeled (r, s)."""
import argparse
from math import gcd

from toricorb import WeightedPolytope, betti_numbers, build, structure_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6)
    args = ap.parse_args()
    print(f"{'r':>3} {'s':>3}  {'left':<6}{'right':<6}{'pi0(K)':<8}{'gcd':>4}  betti")
    mismatches = 0
    for r in range(1, args.max + 1):
        for s in range(1, args.max + 1):
            W = WeightedPolytope.from_data([(1,), (-1,)], [0, -1], [r, s])
            left, right = (str(structure_group(W, [i])) for i in (0, 1))
            K = build(W).component_group
            mismatches += K.order != gcd(r, s)
            print(f"{r:>3} {s:>3}  {left:<6}{right:<6}{str(K):<8}{gcd(r, s):>4}  {list(betti_numbers(W).b)}")
    print(f"pi0(K) != Z/gcd(r,s) in {mismatches} cases")


if __name__ == "__main__":
    main()
