"""Algebra-with-involution closure, the generation test and rho-invariant subspaces."""
from __future__ import annotations

from dataclasses import dataclass

from .bilinear import BilinearSpace, adjoint, iso_radical, perp
from .errors import AmbientMismatch, FieldNotFinite
from .exactcore import Matrix, SpanBuilder, Subspace, enumerate_subspaces


@dataclass(frozen=True)
class GeneratorTuple:
    space: BilinearSpace
    mats: tuple

    def __post_init__(self):
        n, field = self.space.n, self.space.field
        for A in self.mats:
            if A.shape != (n, n) or A.field != field:
                raise AmbientMismatch(f"tuple entries must be {n}x{n} over {field}")
        object.__setattr__(self, "mats", tuple(self.mats))

    @property
    def r(self) -> int:
        return len(self.mats)

    @property
    def n(self) -> int:
        return self.space.n

    def adjoints(self) -> list:
        return [adjoint(self.space, A) for A in self.mats]

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "tuple": [A.to_json() for A in self.mats]}


@dataclass(frozen=True)
class ClosureReport:
    dim: int
    basis: tuple      # flattened n x n matrices, canonical RREF rows
    generates: bool

    def matrices(self, field, n) -> list:
        return [Matrix.from_flat(field, b, n) for b in self.basis]


def involution_closure(t: GeneratorTuple) -> ClosureReport:
    """Smallest unital subalgebra containing every A_i and rho(A_i)."""
    field, n = t.space.field, t.n
    gens = [A for A in t.mats if not A.is_zero()]
    gens += [B for B in (adjoint(t.space, A) for A in gens)]
    span = SpanBuilder(field, n * n)
    queue = []
    for M in [Matrix.identity(field, n)] + gens:
        if span.add(M.flat()):
            queue.append(M)
    # every word is a left product of generators applied to a seed, so
    # left multiplication of new elements is enough to reach a fixed point
    while queue and len(span) < n * n:
        M = queue.pop()
        for G in gens:
            P = G @ M
            if span.add(P.flat()):
                queue.append(P)
                if len(span) == n * n:
                    break
    S = span.subspace()
    return ClosureReport(S.dim, S.basis, S.dim == n * n)


def generates(t: GeneratorTuple) -> bool:
    return involution_closure(t).generates


def _check_sub(t, W):
    t.space.check(W)


def is_rho_invariant(t: GeneratorTuple, W: Subspace) -> bool:
    """A_i W in W and A_i W-perp in W-perp for every i."""
    _check_sub(t, W)
    Wp = perp(t.space, W)
    return all(W.is_invariant(A) and Wp.is_invariant(A) for A in t.mats)


def is_rho_invariant_direct(t: GeneratorTuple, W: Subspace) -> bool:
    """Same test phrased with the adjoints: A_i W in W and rho(A_i) W in W."""
    _check_sub(t, W)
    return all(W.is_invariant(A) and W.is_invariant(B) for A, B in zip(t.mats, t.adjoints()))


def _all_maps(t):
    return list(t.mats) + t.adjoints()


def rho_invariant_subspaces(t: GeneratorTuple, d: int, cap: int = 10**7) -> list:
    """Every d-dimensional rho-invariant subspace, by exhaustive enumeration over F_q."""
    field = t.space.field
    if not field.is_finite:
        raise FieldNotFinite("brute-force subspace search needs a prime field")
    maps = [A for A in _all_maps(t) if not A.is_zero()]
    out = []
    for W in enumerate_subspaces(field, t.n, d, cap):
        if all(W.is_invariant(A) for A in maps):
            out.append(W)
    return out


def invariant_profile(t: GeneratorTuple, d_max: int | None = None, cap: int = 10**7,
                      full: bool = False) -> dict:
    """Map (d, l) -> sorted list of proper nonzero rho-invariant subspaces.

    Only d <= n/2 is enumerated. With ``full`` the dual dimensions are filled
    in from W -> W-perp, which preserves rho-invariance and isotropy rank.
    """
    n = t.n
    top = n // 2 if d_max is None else min(d_max, n // 2)
    found = {}
    for d in range(1, top + 1):
        for W in rho_invariant_subspaces(t, d, cap):
            l = iso_radical(t.space, W)[1]
            found.setdefault((d, l), set()).add(W)
            if full and 2 * d != n:
                found.setdefault((n - d, l), set()).add(perp(t.space, W))
    return {k: sorted(v, key=lambda S: S.basis) for k, v in sorted(found.items())}


def all_rho_invariant(t: GeneratorTuple, cap: int = 10**7) -> set:
    """Every rho-invariant subspace including 0 and V (prime fields only)."""
    n, field = t.n, t.space.field
    out = {Subspace.zero(field, n), Subspace.full(field, n)}
    for ws in invariant_profile(t, cap=cap, full=True).values():
        out.update(ws)
    return out
