"""One line per bundled polytope: size, singular faces, Betti numbers, pi0(K), sampled check."""
import argparse

from toricorb import betti_numbers, build, load_corpus, sample_moment_image, singular_locus_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, W in load_corpus().items():
        rep = singular_locus_report(W)
        D = build(W)
        check = sample_moment_image(D, W, args.samples, args.seed)
        sing = ", ".join(f"{list(r.face.active)}:{r.group}" for r in rep.singular) or "-"
        print(f"{name:<20} n={W.dim} N={W.base.n_facets} V={len(W.vertices):<3} b={list(betti_numbers(W).b)}"
              f"  pi0(K)={D.component_group}  sampled={'ok' if check.passed else 'FAIL'}  singular: {sing}")


if __name__ == "__main__":
    main()
