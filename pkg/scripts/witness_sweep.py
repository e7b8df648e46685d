"""Build witness tuples for every profile and report how often the six-set lattice comes out.

Skew profiles without a good basis use r >= 2 with filled block-form entries.
"""
import argparse
import time

from invgen.bilinear import BilinearSpace, subspace_with_profile
from invgen.dimensions import stratum_nonempty
from invgen.errors import EmptyStratum
from invgen.exactcore import FieldSpec
from invgen.generation import generates
from invgen.schema import parse_field
from invgen.witness import rho_invariant_lattice, six_set, skew_obstructed, witness_tuple


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="p=101")
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()
    F: FieldSpec = parse_field(args.field)

    print("kind       n d l  mode   six-set  nongen  secs")
    for kind in ("symmetric", "skew"):
        for n in range(2, args.n_max + 1):
            if kind == "skew" and n % 2:
                continue
            V = BilinearSpace.split(F, n, kind)
            for d in range(1, n):
                for l in range(min(d, n - d) + 1):
                    if not stratum_nonempty(kind, n, d, l):
                        continue
                    try:
                        W = subspace_with_profile(V, d, l)
                    except EmptyStratum:
                        continue
                    fill = kind == "skew" and skew_obstructed(n, d, l)
                    t0 = time.perf_counter()
                    hits = nongen = 0
                    for seed in range(args.seeds):
                        t = witness_tuple(V, W, r=2 if fill else 1, seed=seed, fill=fill)
                        hits += rho_invariant_lattice(t) == six_set(V, W)
                        nongen += not generates(t)
                    mode = "fill" if fill else "good"
                    print(f"{kind:10} {n} {d} {l}  {mode:5} {hits:4}/{args.seeds:<3} "
                          f"{nongen:4}/{args.seeds:<3} {time.perf_counter() - t0:5.2f}")


if __name__ == "__main__":
    main()
