"""Incidence counts and degree fits over several primes, against the closed-form dimensions."""
import argparse

from invgen.census import degree_fit, expected_degree, incidence_table
from invgen.dimensions import strata


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--r-max", type=int, default=2)
    ap.add_argument("--q", default="3,5,7,11")
    ap.add_argument("--gram", choices=("standard", "split"), default="split")
    args = ap.parse_args()
    qs = [int(x) for x in args.q.split(",")]

    print("kind       n r d l  degree  dim  slope    residual")
    for kind in ("symmetric", "skew"):
        for n in range(2, args.n_max + 1):
            if kind == "skew" and n % 2:
                continue
            for r in range(1, args.r_max + 1):
                for k in strata(kind, n, r):
                    tab = incidence_table(kind, n, k.d, k.l, r, qs, gram=args.gram)
                    try:
                        fit = degree_fit(tab)
                    except ValueError as e:
                        print(f"{kind:10} {n} {r} {k.d} {k.l}  skipped: {e}")
                        continue
                    want = expected_degree(kind, n, k.d, k.l, r)
                    mark = "" if fit.degree == want else "  <-- differs"
                    print(f"{kind:10} {n} {r} {k.d} {k.l}  {fit.degree:6} {want:4}  "
                          f"{fit.slope:7.3f}  {fit.residual:.2e}{mark}")


if __name__ == "__main__":
    main()
