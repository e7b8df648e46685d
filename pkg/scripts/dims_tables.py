"""Print extremal stratum dimensions for a range of n and r, next to the Lie-oracle codims."""
import argparse

from invgen.bilinear import BilinearSpace, subspace_with_profile
from invgen.dimensions import dim_grassmannian, extremal_dims, lie_codim_oracle, strata
from invgen.exactcore import FieldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--r-max", type=int, default=5)
    ap.add_argument("--oracle-n", type=int, default=6, help="largest n for the Lie oracle pass")
    args = ap.parse_args()

    for kind in ("symmetric", "skew"):
        print(f"# {kind}: max dim Z(l,d,r;V) (argmax)")
        print("n".rjust(3) + "".join(f"r={r}".rjust(32) for r in range(1, args.r_max + 1)))
        for n in range(2, args.n_max + 1):
            if kind == "skew" and n % 2:
                continue
            cells = []
            for r in range(1, args.r_max + 1):
                e = extremal_dims(kind, n, r)
                cells.append(f"{e.max_dim} {list(e.argmax)}".rjust(32))
            print(str(n).rjust(3) + "".join(cells))
        print()

    F = FieldSpec.prime(101)
    print("# Lie oracle over F_101: (kind, n, d, l) dim_g dim_h codim formula")
    for kind in ("symmetric", "skew"):
        for n in range(1, args.oracle_n + 1):
            if kind == "skew" and n % 2:
                continue
            V = BilinearSpace.split(F, n, kind)
            for k in strata(kind, n, fold=False):
                o = lie_codim_oracle(V, subspace_with_profile(V, k.d, k.l))
                want = dim_grassmannian(kind, n, k.d, k.l)
                flag = "" if o.codim == want else "  MISMATCH"
                print(f"{kind:9} {n} {k.d} {k.l}  {o.dim_g:3} {o.dim_h:3} {o.codim:3} {want:3}{flag}")


if __name__ == "__main__":
    main()
