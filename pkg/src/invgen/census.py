"""Point counts over F_q: Grassmannian strata, incidence pairs, nongenerating tuples."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bilinear import BilinearSpace, iso_radical, perp
from .dimensions import StratumKey, dim_stratum, stratum_nonempty
from .errors import AllZeroCounts, EnumerationTooLarge, FieldNotFinite, InsufficientData
from .exactcore import FieldSpec, Matrix, enumerate_subspaces, gaussian_binomial, kernel
from .generation import GeneratorTuple, generates
from .witness import zwr_free_count

__all__ = [
    "CountTable", "DegreeFit", "enumerate_subspaces", "isotropy_counts", "incidence_count",
    "direct_pair_count", "exhaustive_nongenerating_count", "monte_carlo_rate", "degree_fit",
    "incidence_table",
]

COLUMNS = ("kind", "n", "r", "d", "l", "q", "count")


def _q(space):
    if not space.field.is_finite:
        raise FieldNotFinite("point counts need a prime field")
    return space.field.p


@dataclass
class CountTable:
    """Exact counts keyed by q for one (kind, n, r, d, l); d and l are None for whole-space counts."""

    kind: str
    n: int
    r: int
    d: int | None = None
    l: int | None = None
    counts: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        return [{"kind": self.kind, "n": self.n, "r": self.r, "d": self.d, "l": self.l,
                 "q": q, "count": c} for q, c in sorted(self.counts.items())]

    def to_json(self) -> dict:
        # counts can exceed 2^53, so they travel as strings
        return {"kind": self.kind, "n": self.n, "r": self.r, "d": self.d, "l": self.l,
                "counts": {str(q): str(c) for q, c in sorted(self.counts.items())}}

    def to_csv(self, fit: DegreeFit | None = None) -> str:
        buf = io.StringIO()
        cols = list(COLUMNS) + (["degree", "residual"] if fit else [])
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in self.rows():
            vals = [("" if row[c] is None else row[c]) for c in COLUMNS]
            if fit:
                vals += [fit.degree, f"{fit.residual:.6g}"]
            w.writerow(vals)
        return buf.getvalue()


def isotropy_counts(space: BilinearSpace, d: int, cap: int = 10**7) -> dict:
    """Number of d-dimensional subspaces of each isotropy rank (every admissible l is a key)."""
    _q(space)
    n = space.n
    out = {l: 0 for l in range(min(d, n - d) + 1) if stratum_nonempty(space.kind, n, d, l)}
    for W in enumerate_subspaces(space.field, n, d, cap):
        out[iso_radical(space, W)[1]] += 1
    return out


def incidence_count(space: BilinearSpace, d: int, l: int, r: int, cap: int = 10**7) -> int:
    """|{(A_1..A_r, W)}| with W of profile (d, l) rho-invariant, via the affine fibre size."""
    q = _q(space)
    if not stratum_nonempty(space.kind, space.n, d, l):
        return 0
    grass = isotropy_counts(space, d, cap).get(l, 0)
    return grass * q ** (r * zwr_free_count(space.n, d, l))


def _annihilator(field, n, S):
    if S.dim == n:
        return np.zeros((0, n), dtype=np.int64)
    if S.dim == 0:
        return np.eye(n, dtype=np.int64)
    return np.array(kernel(S.basis_matrix()).basis, dtype=np.int64).reshape(-1, n)


def _fixing_count_literal(space, W, mats, q):
    """How many of the stacked matrices ``mats`` (shape (N, n, n)) map W into W and W-perp into W-perp."""
    n = space.n
    ok = np.ones(len(mats), dtype=bool)
    for S in (W, perp(space, W)):
        if S.dim in (0, n):
            continue
        C = _annihilator(space.field, n, S)
        B = np.array(S.basis, dtype=np.int64)
        # C A B^T == 0 mod q for every matrix
        prod = (C @ ((mats @ B.T) % q)) % q
        ok &= ~prod.reshape(len(mats), -1).any(axis=1)
    return int(ok.sum())


def _fixing_count_linear(space, W, q):
    """Same count from the nullity of the linear conditions on A's n^2 entries."""
    F, n = space.field, space.n
    rows = []
    for S in (W, perp(space, W)):
        if S.dim in (0, n):
            continue
        ann = kernel(S.basis_matrix())
        for c in ann.basis:
            for w in S.basis:
                rows.append([F.norm(c[a] * w[b]) for a in range(n) for b in range(n)])
    rank = Matrix._raw(F, rows, n * n).rank() if rows else 0
    return q ** (n * n - rank)


def direct_pair_count(space: BilinearSpace, d: int, l: int, r: int,
                      literal_cap: int = 2 * 10**6, cap: int = 10**7) -> int:
    """Count pairs without the block form: sum over W of (#A fixing W and W-perp)^r.

    The per-W count enumerates every n x n matrix when q^(n^2) <= literal_cap,
    and otherwise solves the defining linear system.
    """
    q = _q(space)
    n = space.n
    if not stratum_nonempty(space.kind, n, d, l):
        return 0
    literal = q ** (n * n) <= literal_cap
    mats = None
    if literal:
        idx = np.arange(q ** (n * n), dtype=np.int64)[:, None]
        mats = (idx // q ** np.arange(n * n, dtype=np.int64) % q).reshape(-1, n, n)
    total = 0
    for W in enumerate_subspaces(space.field, n, d, cap):
        if iso_radical(space, W)[1] != l:
            continue
        k = _fixing_count_literal(space, W, mats, q) if literal else _fixing_count_linear(space, W, q)
        total += k ** r
    return total


# -- nongenerating tuples ------------------------------------------------------

def _tuple_from_index(space, r, idx):
    q, n = space.field.p, space.n
    digits = []
    for _ in range(r * n * n):
        idx, x = divmod(idx, q)
        digits.append(x)
    mats = [Matrix._raw(space.field, [digits[k * n * n + i * n:k * n * n + (i + 1) * n]
                                      for i in range(n)], n) for k in range(r)]
    return GeneratorTuple(space, mats)


def _count_range(args):
    space, r, lo, hi = args
    return sum(1 for i in range(lo, hi) if not generates(_tuple_from_index(space, r, i)))


def _shards(total, parts):
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def exhaustive_nongenerating_count(space: BilinearSpace, r: int, cap: int = 10**8,
                                   workers: int = 1) -> int:
    """Exact number of r-tuples over F_q that do not generate, by testing all of them."""
    q = _q(space)
    total = q ** (r * space.n * space.n)
    if total > cap:
        raise EnumerationTooLarge(total, cap)
    if workers <= 1:
        return _count_range((space, r, 0, total))
    jobs = [(space, r, lo, hi) for lo, hi in _shards(total, 4 * workers)]
    with ProcessPoolExecutor(workers) as ex:
        return sum(ex.map(_count_range, jobs))


def sample_tuple(space: BilinearSpace, r: int, seed: int, index: int) -> GeneratorTuple:
    """Uniform tuple number ``index`` of the stream keyed by ``seed``."""
    q, n = space.field.p, space.n
    rng = np.random.default_rng([seed, index])
    vals = rng.integers(0, q, size=(r, n, n), dtype=np.int64).tolist()
    return GeneratorTuple(space, [Matrix._raw(space.field, m, n) for m in vals])


def _mc_range(args):
    space, r, seed, lo, hi = args
    return sum(1 for i in range(lo, hi) if generates(sample_tuple(space, r, seed, i)))


def monte_carlo_rate(space: BilinearSpace, r: int, samples: int, seed: int = 0,
                     workers: int = 1) -> Fraction:
    """Fraction of uniform random tuples that generate; independent of ``workers``."""
    _q(space)
    if samples < 1:
        raise ValueError("samples must be positive")
    if workers <= 1:
        hits = _mc_range((space, r, seed, 0, samples))
    else:
        jobs = [(space, r, seed, lo, hi) for lo, hi in _shards(samples, 4 * workers)]
        with ProcessPoolExecutor(workers) as ex:
            hits = sum(ex.map(_mc_range, jobs))
    return Fraction(hits, samples)


# -- degree fits ---------------------------------------------------------------

@dataclass(frozen=True)
class DegreeFit:
    degree: int
    slope: float
    residual: float


def degree_fit(table) -> DegreeFit:
    """Rounded least-squares slope of log(count) against log(q)."""
    counts = table.counts if isinstance(table, CountTable) else dict(table)
    if counts and all(c == 0 for c in counts.values()):
        raise AllZeroCounts("every count is zero")
    pts = sorted((q, c) for q, c in counts.items() if c > 0)
    if len(pts) < 3:
        raise InsufficientData(f"need at least 3 values of q with positive counts, got {len(pts)}")
    x = np.array([math.log(q) for q, _ in pts])
    y = np.array([math.log(c) for _, c in pts])
    slope, icept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + icept)) ** 2)))
    return DegreeFit(int(round(slope)), float(slope), resid)


def incidence_table(kind: str, n: int, d: int, l: int, r: int, qs, gram: str = "split",
                    cap: int = 10**7) -> CountTable:
    tab = CountTable(kind, n, r, d, l)
    for q in qs:
        F = FieldSpec.prime(q)
        sp = BilinearSpace.split(F, n, kind) if gram == "split" else BilinearSpace.standard(F, n, kind)
        tab.counts[q] = incidence_count(sp, d, l, r, cap)
    return tab


def expected_degree(kind: str, n: int, d: int, l: int, r: int) -> int:
    return dim_stratum(StratumKey(kind, n, d, l, r))


def grassmannian_total(space: BilinearSpace, d: int) -> int:
    return gaussian_binomial(space.n, d, _q(space))

