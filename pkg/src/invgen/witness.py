"""Tuples with a prescribed rho-invariant lattice.

A_1 is diagonal with distinct eigenvalues in a "good" basis: one in which the
only subspaces U with both U and U-perp spanned by basis vectors are the six
subspaces 0, Iso(W), W, W-perp, W + W-perp and V. Such an A_1 has exactly
those six rho-invariant subspaces.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import sympy

from .bilinear import SKEW, BilinearSpace, OrderedBasis, decompose, iso_radical, perp
from .errors import EigenvaluesNotDistinctOrNotRational, FieldTooSmall
from .exactcore import Matrix, Subspace, kernel
from .generation import GeneratorTuple

MAX_ENUM_N = 20


class GoodBasisNotFound(FieldTooSmall):
    """Rejection sampling ran out of budget while building a good basis."""


def six_set(space: BilinearSpace, W: Subspace) -> set:
    Wp = perp(space, W)
    iso = W & Wp
    return {Subspace.zero(space.field, space.n), iso, W, Wp, W + Wp,
            Subspace.full(space.field, space.n)}


@dataclass(frozen=True)
class GoodBasis:
    """Rows are B_0, B_1, B_2, B_3 in that order; ``stages`` holds their sizes."""

    basis: OrderedBasis
    stages: tuple

    @property
    def w_index(self) -> tuple:
        return tuple(range(self.stages[0] + self.stages[1]))

    @property
    def rows(self) -> tuple:
        return self.basis.basis.rows

    def stage_rows(self, k: int) -> tuple:
        start = sum(self.stages[:k])
        return self.rows[start:start + self.stages[k]]


# -- eigenvalue machinery ------------------------------------------------------

def _charpoly(A: Matrix):
    x = sympy.Symbol("x")
    field = A.field
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if field.p is None else v
                       for v in row] for row in A.rows])
    expr = M.charpoly(x).as_expr()
    if field.p is None:
        return sympy.Poly(expr, x, domain=sympy.QQ)
    return sympy.Poly(expr, x, modulus=field.p)


def eigenvalues(A: Matrix) -> list:
    """The n distinct eigenvalues of ``A`` in its field, or an error."""
    field, n = A.field, A.nrows
    f = _charpoly(A)
    if sympy.gcd(f, f.diff()).degree() > 0:
        raise EigenvaluesNotDistinctOrNotRational("characteristic polynomial has a repeated factor")
    roots = f.ground_roots()
    if len(roots) != n:
        raise EigenvaluesNotDistinctOrNotRational(
            f"only {len(roots)} of {n} eigenvalues lie in {field}")
    out = []
    for root in roots:
        if field.p is None:
            out.append(field(sympy.Rational(root).p) / sympy.Rational(root).q)
        else:
            out.append(field(int(root)))
    return sorted(out)


def eigenlines(A: Matrix) -> list:
    field, n = A.field, A.nrows
    lines = []
    for lam in eigenvalues(A):
        K = kernel(A - Matrix.identity(field, n).scale(lam))
        assert K.dim == 1
        lines.append(K.basis[0])
    return lines


def eig_invariant_subspaces(A: Matrix) -> list:
    """All 2^n sums of eigenlines; these are exactly the A-invariant subspaces."""
    field, n = A.field, A.nrows
    lines = eigenlines(A)
    out = []
    for k in range(n + 1):
        for combo in itertools.combinations(lines, k):
            out.append(Subspace.span(field, combo, n))
    return out


def rho_invariant_lattice(t: GeneratorTuple, which: int = 0) -> set:
    """All rho-invariant subspaces when ``mats[which]`` has distinct eigenvalues in the field.

    Works over any supported field, since every invariant subspace of that
    matrix is a sum of its eigenlines.
    """
    maps = [M for M in list(t.mats) + t.adjoints() if not M.is_zero()]
    return {U for U in eig_invariant_subspaces(t.mats[which])
            if all(U.is_invariant(M) for M in maps)}


# -- good bases ----------------------------------------------------------------

def _zero_masks(gram_rows, k):
    return [sum(1 << j for j in range(k) if not gram_rows[i][j]) for i in range(k)]


def _bad_subsets(space, rows, allowed, very_good_in=None, iso_mask=0):
    """First subset mask violating goodness (or very-goodness), else None.

    ``allowed`` is the set of subspaces U may equal when U-perp is also
    subordinate. For very-goodness ``very_good_in`` is W and ``iso_mask``
    the bitmask of B_0.
    """
    field, n = space.field, space.n
    k = len(rows)
    G = space.gram_of(rows).rows
    zm = _zero_masks(G, k)
    full = (1 << k) - 1
    for mask in range(1, 1 << k):
        size = bin(mask).count("1")
        T = full
        m = mask
        while m:
            low = m & -m
            T &= zm[low.bit_length() - 1]
            m ^= low
        members = [rows[i] for i in range(k) if mask >> i & 1]
        if bin(T).count("1") == n - size:
            if Subspace.span(field, members, n) not in allowed:
                return mask
        if very_good_in is not None and mask & iso_mask == iso_mask:
            U = Subspace.span(field, members, n)
            if U in allowed:
                continue
            X = perp(space, U) & very_good_in
            inside = [rows[i] for i in range(k) if T >> i & 1]
            if X.dim == len(inside):
                return mask
    return None


def _random_in(S: Subspace, rng):
    field = S.field
    coeffs = [field.random_element(rng) for _ in S.basis]
    out = [field.zero] * S.ambient
    for c, b in zip(coeffs, S.basis):
        if c:
            out = [x + c * y for x, y in zip(out, b)]
    return tuple(field.norm(x) for x in out)


def skew_obstructed(n: int, d: int, l: int) -> bool:
    """True when no good basis can exist for a skew form.

    If W_a (or W_b) is a symplectic plane, every A diagonal in a stage basis
    has an eigenline L in it, and Iso(W) + L is rho-invariant because the
    adjoint on a symplectic plane is tr(A) - A. For n = 2 every line is its
    own perp.
    """
    return n == 2 or d - l == 2 or n - d - l == 2


def good_basis(space: BilinearSpace, W: Subspace, seed: int = 0, tries: int = 64,
               restarts: int = 8, fail_fast: bool = True) -> GoodBasis:
    """Extend a basis of Iso(W) through W, then W-perp, then V, keeping it good.

    Each new vector is drawn at random from the stage space and kept only if
    the enlarged set passes the goodness check (very-goodness in the first
    stage). ``tries`` bounds the draws per vector; a dead end restarts the
    whole construction.
    """
    space.check(W)
    field, n = space.field, space.n
    if n > MAX_ENUM_N:
        raise ValueError(f"good-basis checks enumerate 2^n subsets; n is capped at {MAX_ENUM_N}")
    rng = random.Random(seed)
    Wp = perp(space, W)
    iso = W & Wp
    if fail_fast and space.kind == SKEW and skew_obstructed(n, W.dim, iso.dim):
        raise GoodBasisNotFound(
            f"skew profile (d={W.dim}, l={iso.dim}) in dimension {n} admits no good basis; "
            "use r >= 2 with fill")
    six = six_set(space, W)
    b0 = list(iso.basis)
    iso_mask = (1 << len(b0)) - 1
    targets = [(W, True), (W + Wp, False), (Subspace.full(field, n), False)]
    stage_space = [W, Wp, Subspace.full(field, n)]
    for _ in range(restarts):
        rows = list(b0)
        sizes = [len(b0)]
        stuck = False
        for (goal, vg), src in zip(targets, stage_space):
            start = len(rows)
            while Subspace.span(field, rows, n).dim < goal.dim:
                acc = Subspace.span(field, rows, n)
                for _ in range(tries):
                    w = _random_in(src, rng)
                    if acc.contains(w):
                        continue
                    cand = rows + [w]
                    bad = _bad_subsets(space, cand, six, very_good_in=W if vg else None,
                                       iso_mask=iso_mask)
                    if bad is None:
                        rows = cand
                        break
                else:
                    stuck = True
                    break
            if stuck:
                break
            sizes.append(len(rows) - start)
        if not stuck:
            B = Matrix._raw(field, rows, n)
            ob = OrderedBasis(basis=B, gram=space.gram_of(rows),
                              w_index=tuple(range(W.dim)), standard=False)
            return GoodBasis(ob, tuple(sizes))
    raise GoodBasisNotFound(
        f"no good basis found over {field} after {restarts} restarts of {tries} draws per vector; "
        "use a larger field")


def _span(field, rows, n):
    return Subspace.span(field, rows, n)


def is_good_basis(space: BilinearSpace, gb, W: Subspace) -> bool:
    """Check the stage structure and that every U with U and U-perp subordinate is one of six.

    ``gb`` may be a GoodBasis or a plain list of basis rows; for plain rows
    only the requirement that Iso(W), W and W-perp be subordinate is checked
    in place of the stage layout.
    """
    space.check(W)
    field, n = space.field, space.n
    if n > MAX_ENUM_N:
        raise ValueError(f"n is capped at {MAX_ENUM_N}")
    rows = list(gb.rows) if isinstance(gb, GoodBasis) else [tuple(r) for r in gb]
    if len(rows) != n or _span(field, rows, n).dim != n:
        return False
    Wp = perp(space, W)
    iso = W & Wp
    if isinstance(gb, GoodBasis):
        b0, b1, b2 = gb.stage_rows(0), gb.stage_rows(1), gb.stage_rows(2)
        if (_span(field, b0, n) != iso or _span(field, b0 + b1, n) != W
                or _span(field, b0 + b2, n) != Wp):
            return False
    else:
        for S in (iso, W, Wp):
            if _span(field, [r for r in rows if S.contains(r)], n) != S:
                return False
    return _bad_subsets(space, rows, six_set(space, W)) is None


# -- tuples --------------------------------------------------------------------

def zwr_free_count(n: int, d: int, l: int) -> int:
    return (n - d) ** 2 + d ** 2 + l ** 2


def _zwr_slots(n, d, l):
    """Free (row, col) positions of the block form in the decomposition basis."""
    iso = range(0, l)
    wa = range(l, d)
    wb = range(d, n - l)
    c = range(n - l, n)
    pattern = [(iso, (iso, wa, wb, c)), (wa, (wa, c)), (wb, (wb, c)), (c, (c,))]
    slots = []
    for rows, cols in pattern:
        for i in rows:
            for block in cols:
                slots.extend((i, j) for j in block)
    return sorted(slots)


def decomposition_basis(space: BilinearSpace, W: Subspace) -> Matrix:
    dec = decompose(space, W)
    return Matrix._raw(space.field, dec.ordered_rows(), space.n)


def zwr_matrix(space: BilinearSpace, W: Subspace, entries, basis: Matrix | None = None) -> Matrix:
    """The endomorphism with the given free block entries, in standard coordinates."""
    field, n = space.field, space.n
    rad, l = iso_radical(space, W)
    slots = _zwr_slots(n, W.dim, l)
    entries = list(entries)
    if len(entries) != len(slots):
        raise ValueError(f"expected {len(slots)} free entries, got {len(entries)}")
    B = basis if basis is not None else decomposition_basis(space, W)
    M = [[field.zero] * n for _ in range(n)]
    for (i, j), x in zip(slots, entries):
        M[i][j] = field(x)
    P = B.T   # columns are the basis vectors
    return P @ Matrix._raw(field, M, n) @ P.inverse()


def sample_zwr(space: BilinearSpace, W: Subspace, r: int, seed: int = 0) -> GeneratorTuple:
    """Random tuple for which W is rho-invariant, drawn from the block form."""
    rng = random.Random(seed)
    l = iso_radical(space, W)[1]
    k = zwr_free_count(space.n, W.dim, l)
    B = decomposition_basis(space, W)
    mats = [zwr_matrix(space, W, [space.field.random_element(rng) for _ in range(k)], B)
            for _ in range(r)]
    return GeneratorTuple(space, mats)


def diagonal_in_basis(basis: Matrix, values) -> Matrix:
    """A with A b_i = values[i] b_i for the rows b_i of ``basis``."""
    P = basis.T
    return P @ Matrix.diag(basis.field, values) @ P.inverse()


def witness_tuple(space: BilinearSpace, W: Subspace, r: int = 1, seed: int = 0,
                  fill: bool = False) -> GeneratorTuple:
    """(A_1, 0, ..., 0) with A_1 diagonal in a good basis.

    With ``fill`` the trailing entries come from ``sample_zwr`` instead of
    zeros, and when no good basis exists A_1 is taken diagonal in a plain
    stage basis. The six-subspace lattice then only holds generically, so
    callers should verify it (``rho_invariant_lattice``).
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    field, n = space.field, space.n
    vals = field.distinct_nonzero(n)
    if vals is None:
        raise FieldTooSmall(f"{field} has fewer than {n} distinct nonzero elements")
    try:
        B = good_basis(space, W, seed).basis.basis
    except GoodBasisNotFound:
        if not (fill and r > 1):
            raise
        B = stage_basis(space, W, seed)
    A1 = diagonal_in_basis(B, vals)
    if fill and r > 1:
        rest = list(sample_zwr(space, W, r - 1, seed + 1).mats)
    else:
        rest = [Matrix.zeros(field, n)] * (r - 1)
    return GeneratorTuple(space, [A1] + rest)


def stage_basis(space: BilinearSpace, W: Subspace, seed: int = 0) -> Matrix:
    """A random basis with the stage layout but no goodness requirement."""
    field, n = space.field, space.n
    rng = random.Random(seed)
    Wp = perp(space, W)
    rows = list((W & Wp).basis)
    for goal, src in ((W, W), (W + Wp, Wp), (Subspace.full(field, n), Subspace.full(field, n))):
        while _span(field, rows, n).dim < goal.dim:
            w = _random_in(src, rng)
            if not _span(field, rows, n).contains(w):
                rows.append(w)
    return Matrix._raw(field, rows, n)
