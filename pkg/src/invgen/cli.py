"""invgen command line: check, witness, dims, census, reduce.

Exit codes: 0 success (or "generates" for check), 1 valid but non-generating
tuple, 2 any error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import census as cen
from . import dimensions as dm
from .bilinear import KINDS, BilinearSpace, decompose, iso_radical, nice_basis, subspace_with_profile
from .errors import (EigenvaluesNotDistinctOrNotRational, EmptyStratum, FieldTooSmall,
                     InvgenError, SchemaError)
from .exactcore import FieldSpec
from .generation import involution_closure, invariant_profile
from .schema import (parse_field, space_from_json, subspace_from_json,
                     tuple_from_json, tuple_to_json)
from .witness import eigenvalues, rho_invariant_lattice, six_set, witness_tuple


class CliError(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _space(args) -> BilinearSpace:
    F = parse_field(args.field)
    return BilinearSpace.split(F, args.n, args.form) if args.gram == "split" \
        else BilinearSpace.standard(F, args.n, args.form)


# -- subcommands ---------------------------------------------------------------

def _witnesses(t, cap):
    """Proper nonzero rho-invariant subspaces, sorted by (d, l, basis).

    When some A_i has n distinct eigenvalues in the field the search runs
    over sums of its eigenlines; otherwise every subspace of F_q^n is tried.
    """
    n = t.n
    for i, A in enumerate(t.mats):
        try:
            eigenvalues(A)
        except EigenvaluesNotDistinctOrNotRational:
            continue
        found = [(U.dim, iso_radical(t.space, U)[1], U) for U in rho_invariant_lattice(t, i)
                 if 0 < U.dim < n]
        return sorted(found, key=lambda x: (x[0], x[1], x[2].basis))
    prof = invariant_profile(t, cap=cap, full=True)
    return [(d, l, W) for (d, l), ws in prof.items() for W in ws]


def cmd_check(args):
    t = tuple_from_json(_read_json(args.input))
    rep = involution_closure(t)
    out = {"generates": rep.generates, "closure_dim": rep.dim, "witnesses": []}
    if args.search_witness and not rep.generates:
        out["witnesses"] = [{"d": d, "l": l, "basis": W.to_json()} for d, l, W in _witnesses(t, args.cap)]
        # over F_q a proper closure need not have a rational invariant subspace
        out["no_rational_witness"] = not out["witnesses"]
    text = [f"generates: {str(rep.generates).lower()}", f"closure_dim: {rep.dim}"]
    text += [f"witness d={w['d']} l={w['l']}: {w['basis']}" for w in out["witnesses"]]
    return out, text, None, 0 if rep.generates else 1


def cmd_witness(args):
    if not dm.stratum_nonempty(args.form, args.n, args.d, args.l):
        raise EmptyStratum(f"stratum (form={args.form}, n={args.n}, d={args.d}, l={args.l}) is empty")
    space = _space(args)
    if space.field.distinct_nonzero(args.n) is None:
        raise FieldTooSmall(f"{space.field} has fewer than {args.n} distinct nonzero eigenvalues")
    W = subspace_with_profile(space, args.d, args.l)
    t = witness_tuple(space, W, args.r, args.seed, fill=args.fill)
    lattice = rho_invariant_lattice(t)
    out = tuple_to_json(t)
    out["w_basis"] = W.to_json()
    out["profile"] = {"d": W.dim, "l": iso_radical(space, W)[1]}
    out["rho_invariant_count"] = len(lattice)
    out["six_set_verified"] = lattice == six_set(space, W)
    text = [f"W = {W.to_json()}  (d={W.dim}, l={out['profile']['l']})"]
    text += [f"A_{i + 1} = {A.to_json()}" for i, A in enumerate(t.mats)]
    text.append(f"rho-invariant subspaces: {len(lattice)} (six-set: {out['six_set_verified']})")
    return out, text, None, 0


def cmd_dims(args):
    rows = []
    for k in dm.strata(args.form, args.n, args.r):
        g = dm.dim_grassmannian(k.kind, k.n, k.d, k.l)
        z = dm.dim_zwr(k.n, k.d, k.l, k.r)
        comps = 2 if (k.kind == "symmetric" and k.l == k.d and 2 * k.d == k.n) else 1
        rows.append({"d": k.d, "l": k.l, "dimGr": g, "dimZWr": z, "dimZ": g + z, "components": comps})
    census = dm.component_census(args.form, args.n, args.r)
    ext = dm.extremal_dims(args.form, args.n, args.r)
    out = {"form": args.form, "n": args.n, "r": args.r}
    if args.table in ("strata", "all"):
        out["strata"] = rows
    if args.table in ("components", "all"):
        out["components"] = census.to_json()["components"]
    out["extremal"] = {"max_dim": ext.max_dim, "argmax": [list(x) for x in ext.argmax],
                       "codim": ext.codim}
    text = []
    if "strata" in out:
        text.append(f"{'d':>3} {'l':>3} {'dimGr':>6} {'dimZWr':>7} {'dimZ':>6} {'comp':>5}")
        text += [f"{r['d']:>3} {r['l']:>3} {r['dimGr']:>6} {r['dimZWr']:>7} {r['dimZ']:>6} "
                 f"{r['components']:>5}" for r in rows]
    if "components" in out:
        text += [f"{c['label']}: dim {c['dim']}, components {c['component_count']}"
                 for c in out["components"]]
    text.append(f"max dim {ext.max_dim} at {list(ext.argmax)}; codim {ext.codim}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["form", "n", "r", "d", "l", "dimGr", "dimZWr", "dimZ", "components"])
    for r in rows:
        w.writerow([args.form, args.n, args.r, r["d"], r["l"], r["dimGr"], r["dimZWr"],
                    r["dimZ"], r["components"]])
    return out, text, buf.getvalue(), 0


def _census_space(args, q):
    F = FieldSpec.prime(q)
    return BilinearSpace.split(F, args.n, args.form) if args.gram == "split" \
        else BilinearSpace.standard(F, args.n, args.form)


def cmd_census(args):
    qs = args.q
    if args.mode == "incidence":
        if args.d is not None:
            keys = [(args.d, l) for l in ([args.l] if args.l is not None else range(args.d + 1))
                    if dm.stratum_nonempty(args.form, args.n, args.d, l)]
        else:
            keys = [(k.d, k.l) for k in dm.strata(args.form, args.n, args.r)]
        tables, text, csv_parts = [], [], []
        for d, l in keys:
            tab = cen.CountTable(args.form, args.n, args.r, d, l)
            for q in qs:
                tab.counts[q] = cen.incidence_count(_census_space(args, q), d, l, args.r, args.cap)
            entry = tab.to_json()
            entry["dim_stratum"] = dm.dim_stratum(dm.StratumKey(args.form, args.n, d, l, args.r))
            fit = None
            if len([c for c in tab.counts.values() if c > 0]) >= 3:
                fit = cen.degree_fit(tab)
                entry["degree"] = fit.degree
                entry["residual"] = round(fit.residual, 6)
            tables.append(entry)
            csv_parts.append(tab.to_csv(fit))
            text.append(f"d={d} l={l} counts={ {q: c for q, c in tab.counts.items()} } "
                        f"dim={entry['dim_stratum']}" + (f" fit={fit.degree}" if fit else ""))
        head, *rest = csv_parts or [""]
        csv_text = head + "".join(p.split("\n", 1)[1] for p in rest)
        return {"mode": "incidence", "tables": tables}, text, csv_text, 0

    rows, text = [], []
    for q in qs:
        space = _census_space(args, q)
        if args.mode == "exhaustive":
            count = cen.exhaustive_nongenerating_count(space, args.r, args.cap, args.workers)
            total = q ** (args.r * args.n * args.n)
            rows.append({"q": q, "nongenerating": str(count), "total": str(total)})
            text.append(f"q={q}: {count} of {total} tuples do not generate")
        else:
            rate = cen.monte_carlo_rate(space, args.r, args.samples, args.seed, args.workers)
            rows.append({"q": q, "samples": args.samples, "generating": rate.numerator * args.samples
                         // rate.denominator, "rate": float(rate)})
            text.append(f"q={q}: generation rate {float(rate):.6f} over {args.samples} samples")
    out = {"mode": args.mode, "form": args.form, "n": args.n, "r": args.r, "rows": rows}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(["kind", "n", "r"] + list(rows[0]))
        for row in rows:
            w.writerow([args.form, args.n, args.r] + list(row.values()))
    return out, text, buf.getvalue(), 0


def cmd_reduce(args):
    obj = _read_json(args.input)
    if not isinstance(obj, dict) or "space" not in obj or "subspace" not in obj:
        raise SchemaError("reduce input needs 'space' and 'subspace' keys")
    space = space_from_json(obj["space"])
    W = subspace_from_json(space, obj["subspace"])
    ob = nice_basis(space, W, layout=args.layout, strict=not args.weak)
    dec = decompose(space, W)
    out = {"basis": ob.basis.to_json(), "gram": ob.gram.to_json(), "w_index": list(ob.w_index),
           "profile": {"d": W.dim, "l": dec.iso.dim}, "standard": ob.standard, "weak": args.weak}
    text = [f"profile d={W.dim} l={dec.iso.dim}", f"basis {out['basis']}", f"gram {out['gram']}"]
    if not ob.standard:
        text.append("weak mode: middle block is diagonal but not the identity")
    return out, text, None, 0


# -- parser --------------------------------------------------------------------

def _common(p, top):
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    env_seed = os.environ.get("INVGEN_SEED")
    p.add_argument("--seed", type=int, default=d(int(env_seed) if env_seed else 0),
                   help="random seed (default: $INVGEN_SEED or 0)")
    p.add_argument("--format", choices=("json", "text", "csv"), default=d("json"))
    p.add_argument("--output", default=d(None), help="write here instead of stdout")


def _space_args(p, r_default=1):
    p.add_argument("--form", choices=KINDS, default="symmetric")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=r_default)


def build_parser():
    ap = argparse.ArgumentParser(prog="invgen", description=__doc__.splitlines()[0])
    _common(ap, True)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="closure dimension and generation test for a tuple")
    _common(p, False)
    p.add_argument("input", help="tuple JSON file, or - for stdin")
    p.add_argument("--search-witness", action="store_true",
                   help="brute-force rho-invariant subspaces (prime fields only)")
    p.add_argument("--cap", type=int, default=10**7)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", help="tuple whose rho-invariant lattice is the six-set of W")
    _common(p, False)
    _space_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--field", default="p=101")
    p.add_argument("--gram", choices=("standard", "split"), default="standard")
    p.add_argument("--fill", action="store_true", help="fill A_2..A_r from the block form")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("dims", help="stratum dimensions, components and extremal summary")
    _common(p, False)
    _space_args(p)
    p.add_argument("--table", choices=("strata", "components", "all"), default="all")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("census", help="point counts and generation rates over F_q")
    _common(p, False)
    _space_args(p)
    p.add_argument("--q", type=_int_list, default=[3, 5, 7])
    p.add_argument("--mode", choices=("incidence", "exhaustive", "montecarlo"), default="incidence")
    p.add_argument("--d", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--gram", choices=("standard", "split"), default="split")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap (default 1e7 / 1e8)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("reduce", help="standard basis for a subspace of a bilinear space")
    _common(p, False)
    p.add_argument("input", help="JSON with 'space' and 'subspace', or - for stdin")
    p.add_argument("--weak", action="store_true", help="allow a diagonal middle block")
    p.add_argument("--layout", choices=("blocked", "interleaved"), default="blocked")
    p.set_defaults(func=cmd_reduce)
    return ap


def _emit(args, out, text, csv_text):
    if args.format == "json":
        body = json.dumps(out, indent=2) + "\n"
    elif args.format == "text":
        body = "\n".join(text) + "\n"
    else:
        if csv_text is None:
            raise CliError(f"--format csv is not available for '{args.command}'")
        body = csv_text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "census" and args.cap is None:
        args.cap = 10**8 if args.mode == "exhaustive" else 10**7
    try:
        out, text, csv_text, code = args.func(args)
        _emit(args, out, text, csv_text)
    except (InvgenError, CliError, ValueError, OSError) as e:
        print(f"invgen: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
