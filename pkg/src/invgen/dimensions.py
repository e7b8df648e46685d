"""Closed-form stratum dimensions and a linear-algebra oracle for the Grassmannian ones."""
from __future__ import annotations

from dataclasses import dataclass, field

from .bilinear import SKEW, SYMMETRIC, BilinearSpace, iso_radical
from .errors import EmptyStratum
from .exactcore import Matrix, Subspace, kernel


@dataclass(frozen=True)
class StratumKey:
    kind: str
    n: int
    d: int
    l: int
    r: int = 1

    def __post_init__(self):
        if self.kind not in (SYMMETRIC, SKEW):
            raise ValueError(f"unknown form kind {self.kind!r}")
        if self.r < 1:
            raise ValueError("r must be at least 1")

    def folded(self) -> StratumKey:
        """Same stratum with d replaced by min(d, n - d)."""
        return StratumKey(self.kind, self.n, min(self.d, self.n - self.d), self.l, self.r)


def stratum_nonempty(kind: str, n: int, d: int, l: int) -> bool:
    if not (0 <= d <= n and 0 <= l <= min(d, n - d)):
        return False
    if kind == SKEW:
        return n % 2 == 0 and (d - l) % 2 == 0
    return True


def _require(kind, n, d, l):
    if not stratum_nonempty(kind, n, d, l):
        raise EmptyStratum(f"stratum (kind={kind}, n={n}, d={d}, l={l}) is empty")


def dim_grassmannian(kind: str, n: int, d: int, l: int) -> int:
    _require(kind, n, d, l)
    drop = (l * l + l) // 2 if kind == SYMMETRIC else (l * l - l) // 2
    return d * (n - d) - drop


def dim_zwr(n: int, d: int, l: int, r: int) -> int:
    if not (0 <= d <= n and 0 <= l <= min(d, n - d)):
        raise EmptyStratum(f"no subspace of dimension {d} with isotropy rank {l} in dimension {n}")
    return r * ((n - d) ** 2 + d ** 2 + l ** 2)


def dim_stratum(key: StratumKey) -> int:
    return dim_grassmannian(key.kind, key.n, key.d, key.l) + dim_zwr(key.n, key.d, key.l, key.r)


def strata(kind: str, n: int, r: int = 1, fold: bool = True) -> list[StratumKey]:
    """All nonempty strata with 1 <= d (<= n/2 when folding)."""
    top = n // 2 if fold else n - 1
    return [StratumKey(kind, n, d, l, r) for d in range(1, top + 1) for l in range(d + 1)
            if stratum_nonempty(kind, n, d, l)]


@dataclass(frozen=True)
class ComponentRecord:
    label: str
    l: int
    d: int
    dim: int
    component_count: int


@dataclass
class ComponentCensus:
    kind: str
    n: int
    r: int
    records: list = field(default_factory=list)

    @property
    def max_dim(self) -> int:
        return max(rec.dim for rec in self.records)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "r": self.r,
                "components": [vars(rec) for rec in self.records]}


def component_census(kind: str, n: int, r: int) -> ComponentCensus:
    """One record per closed piece of the cover: Z(d,d,r) and the closures of Z(0,d,r)."""
    if n < 2 or (kind == SKEW and n % 2):
        raise ValueError("need n >= 2 (and even for skew forms)")
    out = ComponentCensus(kind, n, r)
    for d in range(1, n // 2 + 1):
        count = 2 if kind == SYMMETRIC and 2 * d == n else 1
        out.records.append(ComponentRecord(f"Z({d},{d},{r})", d, d,
                                           dim_stratum(StratumKey(kind, n, d, d, r)), count))
    for d in range(1, n // 2 + 1):
        if kind == SKEW and d % 2:
            continue
        out.records.append(ComponentRecord(f"closure Z(0,{d},{r})", 0, d,
                                           dim_stratum(StratumKey(kind, n, d, 0, r)), 1))
    return out


@dataclass(frozen=True)
class Extremal:
    max_dim: int
    argmax: tuple     # sorted (l, d) pairs
    codim: int


def extremal_dims(kind: str, n: int, r: int) -> Extremal:
    """Largest stratum dimension over every nonempty (l, d) with d <= n/2, by brute force."""
    keys = strata(kind, n, r)
    if not keys:
        raise ValueError(f"no nonempty strata for kind={kind}, n={n}")
    dims = {(k.l, k.d): dim_stratum(k) for k in keys}
    best = max(dims.values())
    arg = tuple(sorted(ld for ld, v in dims.items() if v == best))
    return Extremal(best, arg, r * n * n - best)


# -- Lie algebra oracle --------------------------------------------------------

@dataclass(frozen=True)
class LieCodim:
    dim_g: int
    dim_h: int
    codim: int
    d: int
    l: int


def _lie_equations(space: BilinearSpace) -> list:
    """Rows of X^T Q + Q X = 0 in the n^2 unknowns X[a][b] (row-major)."""
    F, n, Q = space.field, space.n, space.gram
    rows = []
    for i in range(n):
        for j in range(n):
            row = [F.zero] * (n * n)
            for k in range(n):
                # (X^T Q)[i][j] = sum_k X[k][i] Q[k][j]
                row[k * n + i] = F.norm(row[k * n + i] + Q[k, j])
                # (Q X)[i][j] = sum_k Q[i][k] X[k][j]
                row[k * n + j] = F.norm(row[k * n + j] + Q[i, k])
            rows.append(row)
    return rows


def _stabilizer_equations(field_, n, W: Subspace) -> list:
    """Rows of c . X w = 0 for c spanning the annihilator of W and w in W."""
    if W.dim in (0, n):
        return []
    ann = kernel(W.basis_matrix())
    rows = []
    for c in ann.basis:
        for w in W.basis:
            rows.append([field_.norm(c[a] * w[b]) for a in range(n) for b in range(n)])
    return rows


def lie_codim_oracle(space: BilinearSpace, W: Subspace) -> LieCodim:
    """Dimensions of the isometry Lie algebra g, the stabilizer h of W, and dim g - dim h."""
    space.check(W)
    F, n = space.field, space.n
    g_rows = _lie_equations(space)
    nn = n * n
    dim_g = nn - Matrix._raw(F, g_rows, nn).rank()
    h_rows = g_rows + _stabilizer_equations(F, n, W)
    dim_h = nn - Matrix._raw(F, h_rows, nn).rank()
    l = iso_radical(space, W)[1]
    return LieCodim(dim_g, dim_h, dim_g - dim_h, W.dim, l)
