"""Bilinear spaces, perps, isotropic radicals and standard-basis reductions.

Convention used everywhere: ``<v, w> = v^T Q w`` with ``Q`` the Gram matrix,
subspace bases are rows, and the adjoint involution is
``rho(A) = Q^{-1} A^T Q`` so that ``<rho(A) v, w> = <v, A w>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    AmbientMismatch,
    EmptyStratum,
    FormMismatch,
    NonSquareScalar,
    NotTotallyIsotropic,
    ProfileMismatch,
)
from .exactcore import FieldSpec, Matrix, Subspace, kernel, solve

SYMMETRIC = "symmetric"
SKEW = "skew"
KINDS = (SYMMETRIC, SKEW)


def standard_skew(field: FieldSpec, n: int) -> Matrix:
    """Block diagonal of Omega_2 = [[0, -1], [1, 0]]."""
    if n % 2:
        raise ValueError("skew forms need even dimension")
    rows = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        rows[k][k + 1] = -1
        rows[k + 1][k] = 1
    return Matrix.of(field, rows, n)


def split_symmetric(field: FieldSpec, n: int) -> Matrix:
    """Anti-diagonal ones: the symmetric form of maximal Witt index."""
    return Matrix.of(field, [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)], n)


@dataclass(frozen=True)
class BilinearSpace:
    field: FieldSpec
    n: int
    kind: str
    gram: Matrix

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.gram.shape != (self.n, self.n) or self.gram.field != self.field:
            raise AmbientMismatch("gram must be an n x n matrix over the space's field")
        sign = 1 if self.kind == SYMMETRIC else -1
        if self.gram.T != self.gram.scale(sign):
            raise ValueError(f"gram is not {self.kind}")
        if self.kind == SKEW and self.n % 2:
            raise ValueError("skew forms need even dimension")
        if not self.gram.is_invertible():
            raise ValueError("gram: singular")

    @classmethod
    def standard(cls, field: FieldSpec, n: int, kind: str = SYMMETRIC) -> BilinearSpace:
        """Identity Gram (symmetric) or Omega_n (skew)."""
        gram = Matrix.identity(field, n) if kind == SYMMETRIC else standard_skew(field, n)
        return cls(field, n, kind, gram)

    @classmethod
    def split(cls, field: FieldSpec, n: int, kind: str = SYMMETRIC) -> BilinearSpace:
        """Anti-diagonal Gram (symmetric) or Omega_n (skew); hyperbolic over any field."""
        gram = split_symmetric(field, n) if kind == SYMMETRIC else standard_skew(field, n)
        return cls(field, n, kind, gram)

    @cached_property
    def gram_inv(self) -> Matrix:
        return self.gram.inverse()

    def form(self, v, w):
        Qw = self.gram.apply(w)
        return self.field.norm(sum((a * b for a, b in zip(v, Qw)), self.field.zero))

    def gram_of(self, rows) -> Matrix:
        """Gram matrix [<b_i, b_j>] of a list of row vectors."""
        B = Matrix._raw(self.field, rows, self.n)
        return B @ self.gram @ B.T

    def check(self, W: Subspace):
        if W.field != self.field or W.ambient != self.n:
            raise AmbientMismatch(f"subspace of {W.field}^{W.ambient} used in {self.field}^{self.n}")

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "form": self.kind,
                "gram": self.gram.to_json()}


@dataclass(frozen=True)
class OrderedBasis:
    """Rows of ``basis`` are the basis vectors; ``gram`` is B Q B^T.

    ``w_index`` lists the rows spanning the reduced subspace; ``standard`` is
    False when weak mode had to leave a non-identity diagonal middle block.
    """

    basis: Matrix
    gram: Matrix
    w_index: tuple
    standard: bool = True


@dataclass(frozen=True)
class Decomposition:
    """V = Iso(W) + W_a + W_b + C with the ordered bases that realize it.

    ``iso_basis[i]`` and ``c_basis[j]`` pair to the Kronecker delta.
    """

    iso: Subspace
    wa: Subspace
    wb: Subspace
    c: Subspace
    iso_basis: tuple
    wa_basis: tuple
    wb_basis: tuple
    c_basis: tuple

    @property
    def dims(self) -> tuple:
        return (self.iso.dim, self.wa.dim, self.wb.dim, self.c.dim)

    def ordered_rows(self) -> list:
        return list(self.iso_basis) + list(self.wa_basis) + list(self.wb_basis) + list(self.c_basis)


def perp(space: BilinearSpace, W: Subspace) -> Subspace:
    space.check(W)
    if not W.basis:
        return Subspace.full(space.field, space.n)
    return kernel(W.basis_matrix() @ space.gram)


def iso_radical(space: BilinearSpace, W: Subspace) -> tuple[Subspace, int]:
    """Iso(W) = W meet W-perp and its dimension, the isotropy rank."""
    rad = W & perp(space, W)
    l = rad.dim
    if space.kind == SKEW and (W.dim - l) % 2:
        raise AssertionError("restricted alternating form has odd rank")
    return rad, l


def profile(space: BilinearSpace, W: Subspace) -> tuple[int, int]:
    """(dimension, isotropy rank) of ``W``."""
    return W.dim, iso_radical(space, W)[1]


def adjoint(space: BilinearSpace, A: Matrix) -> Matrix:
    if A.shape != (space.n, space.n) or A.field != space.field:
        raise AmbientMismatch("matrix does not act on this space")
    return space.gram_inv @ A.T @ space.gram


def _combine(field, coeffs, vecs, n):
    norm = field.norm
    out = [field.zero] * n
    for c, v in zip(coeffs, vecs):
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return tuple(norm(x) for x in out)


def hyperbolic_partners(space: BilinearSpace, b_rows, within: Subspace | None = None) -> list:
    """Vectors c_1..c_d with <b_i, c_j> = delta_ij and <c_i, c_j> = 0.

    ``b_rows`` must span a totally isotropic subspace; the c_j are taken
    from ``within`` when given.
    """
    field, n = space.field, space.n
    S = within if within is not None else Subspace.full(field, n)
    Sb = list(S.basis)
    cs = []
    for i, b in enumerate(b_rows):
        # unknown coefficients y with c' = y . Sb
        conds = [tuple(space.form(bj, s) for s in Sb) for bj in b_rows]
        conds += [tuple(space.form(cj, s) for s in Sb) for cj in cs]
        rhs = [field.one if j == i else field.zero for j in range(len(b_rows))]
        rhs += [field.zero] * len(cs)
        y = solve(Matrix._raw(field, conds, len(Sb)), rhs)
        cprime = _combine(field, y, Sb, n)
        lam = space.form(cprime, cprime) * field.inv(field(2))
        c = tuple(field.norm(a - lam * x) for a, x in zip(cprime, b))
        cs.append(c)
    return cs


def hyperbolic_complement(space: BilinearSpace, W: Subspace) -> Subspace:
    """Totally isotropic C paired perfectly with a totally isotropic W."""
    space.check(W)
    if iso_radical(space, W)[1] != W.dim:
        raise NotTotallyIsotropic("hyperbolic complement needs a totally isotropic subspace")
    return Subspace.span(space.field, hyperbolic_partners(space, W.basis), space.n)


def decompose(space: BilinearSpace, W: Subspace) -> Decomposition:
    space.check(W)
    field, n = space.field, space.n
    Wp = perp(space, W)
    iso = W & Wp
    wa_basis = iso.extend_from(W.basis)
    wb_basis = iso.extend_from(Wp.basis)
    wa = Subspace.span(field, wa_basis, n)
    wb = Subspace.span(field, wb_basis, n)
    within = perp(space, wa + wb)
    c_basis = hyperbolic_partners(space, iso.basis, within)
    return Decomposition(
        iso=iso, wa=wa, wb=wb, c=Subspace.span(field, c_basis, n),
        iso_basis=tuple(iso.basis), wa_basis=tuple(wa_basis),
        wb_basis=tuple(wb_basis), c_basis=tuple(c_basis),
    )


def _project_out(space, v, norm_v, rows):
    """Remove the v-component from each row (v anisotropic); returns spanning rows."""
    field = space.field
    inv = field.inv(norm_v)
    out = []
    for x in rows:
        t = space.form(v, x) * inv
        out.append(tuple(field.norm(a - t * b) for a, b in zip(x, v)))
    return list(Subspace.span(field, out, space.n).basis)


def orthogonal_basis(space: BilinearSpace, rows) -> list:
    """Diagonalize a symmetric form on the nondegenerate span of ``rows``.

    Returns ``[(vector, norm), ...]`` with pairwise orthogonal vectors.
    """
    field = space.field
    rem = list(Subspace.span(field, rows, space.n).basis)
    out = []
    while rem:
        v = next((x for x in rem if space.form(x, x)), None)
        if v is None:
            v = next((tuple(field.norm(a + b) for a, b in zip(x, y))
                      for i, x in enumerate(rem) for y in rem[i + 1:] if space.form(x, y)), None)
        if v is None:
            raise ValueError("form is degenerate on the given span")
        a = space.form(v, v)
        out.append((v, a))
        rem = _project_out(space, v, a, rem)
    return out


def _represent(field: FieldSpec, a1, a2, c):
    """Some (x, y) with a1 x^2 + a2 y^2 = c over F_p, or None."""
    if not field.is_finite:
        return None
    inv2 = field.inv(a2)
    for x in range(field.p):
        t = (c - a1 * x * x) * inv2 % field.p
        s = field.sqrt(t)
        if s is not None:
            return x, s
    return None


def orthonormal_basis(space: BilinearSpace, rows, strict: bool = True):
    """Orthogonal basis of the span of ``rows`` with as many unit norms as possible.

    Over F_p two-dimensional pieces always represent 1, so normalization only
    fails when the discriminant is wrong; over Q each norm must be a square.
    Returns ``(vectors, norms)``; in strict mode a non-unit norm raises.
    """
    field = space.field
    rem = list(Subspace.span(field, rows, space.n).basis)
    vecs, norms = [], []
    while rem:
        diag = orthogonal_basis(space, rem)
        pick = None
        for u, a in diag:
            s = field.sqrt(a)
            if s is not None:
                si = field.inv(s)
                pick = tuple(field.norm(si * x) for x in u)
                break
        if pick is None and len(diag) >= 2:
            (u1, a1), (u2, a2) = diag[0], diag[1]
            xy = _represent(field, a1, a2, field.one)
            if xy is not None:
                pick = _combine(field, xy, (u1, u2), space.n)
        if pick is None:
            if strict:
                raise NonSquareScalar(f"norm {diag[0][1]} has no square root in {field}")
            pick, a = diag[0]
            vecs.append(pick)
            norms.append(a)
        else:
            vecs.append(pick)
            norms.append(field.one)
        rem = _project_out(space, pick, norms[-1], rem)
    return vecs, norms


def symplectic_pairs(space: BilinearSpace, rows) -> list:
    """Pairs (u, v) with <u, v> = -1 spanning a nondegenerate skew subspace."""
    field = space.field
    rem = list(Subspace.span(field, rows, space.n).basis)
    pairs = []
    while rem:
        u = rem[0]
        w = next((x for x in rem[1:] if space.form(u, x)), None)
        if w is None:
            raise ValueError("form is degenerate on the given span")
        s = field.neg(field.inv(space.form(u, w)))
        w = tuple(field.norm(s * x) for x in w)
        pairs.append((u, w))
        out = []
        for x in rem:
            beta = space.form(u, x)
            alpha = field.neg(space.form(w, x))
            out.append(tuple(field.norm(a + alpha * b + beta * c) for a, b, c in zip(x, u, w)))
        rem = list(Subspace.span(field, out, space.n).basis)
    return pairs


def _identity_block(field, k):
    return [[field.one if i == j else field.zero for j in range(k)] for i in range(k)]


def nice_basis(space: BilinearSpace, W: Subspace, layout: str = "blocked",
               strict: bool = True) -> OrderedBasis:
    """Ordered basis putting the inclusion W in V into standard form.

    ``blocked`` gives Gram [[0, 0, eI], [0, M, 0], [I, 0, 0]] with the first
    d rows spanning W (e = 1, M = I for symmetric; e = -1, M = Omega for
    skew). ``interleaved`` (skew only) gives [[0, -I_m], [I_m, 0]] with W
    spanned by rows 0..l+t-1 and m..m+t-1, where t = (d - l) / 2.
    """
    space.check(W)
    field, n = space.field, space.n
    if layout not in ("blocked", "interleaved"):
        raise ValueError("layout must be 'blocked' or 'interleaved'")
    if layout == "interleaved" and space.kind != SKEW:
        raise ValueError("interleaved layout needs a skew form")
    dec = decompose(space, W)
    l, d = dec.iso.dim, W.dim
    iso = list(dec.iso_basis)
    cs = list(dec.c_basis)
    if space.kind == SKEW:
        cs = [tuple(field.neg(x) for x in c) for c in cs]
    standard = True

    if space.kind == SYMMETRIC:
        wa, na = orthonormal_basis(space, dec.wa_basis, strict)
        wb, nb = orthonormal_basis(space, dec.wb_basis, strict)
        middle = wa + wb
        mid_norms = na + nb
        standard = all(x == field.one for x in mid_norms)
        rows = iso + middle + cs
        w_index = tuple(range(d))
    else:
        pa = symplectic_pairs(space, dec.wa_basis)
        pb = symplectic_pairs(space, dec.wb_basis)
        if layout == "blocked":
            rows = iso + [x for pr in pa for x in pr] + [x for pr in pb for x in pr] + cs
            w_index = tuple(range(d))
        else:
            m, t = n // 2, len(pa)
            xs = [u for u, _ in pa] + iso + [u for u, _ in pb]
            ys = [v for _, v in pa] + cs + [v for _, v in pb]
            rows = xs + ys
            w_index = tuple(range(l + t)) + tuple(range(m, m + t))

    gram = space.gram_of(rows)
    basis = Matrix._raw(field, rows, n)
    if standard:
        target = standard_gram(field, space.kind, n, l, layout)
        if gram != target:
            raise AssertionError("standard basis construction missed its target Gram")
    return OrderedBasis(basis=basis, gram=gram, w_index=w_index, standard=standard)


def standard_gram(field: FieldSpec, kind: str, n: int, l: int, layout: str = "blocked") -> Matrix:
    """The target Gram matrix of ``nice_basis`` for isotropy rank ``l``."""
    rows = [[field.zero] * n for _ in range(n)]
    if layout == "interleaved":
        m = n // 2
        for i in range(m):
            rows[i][m + i] = field(-1)
            rows[m + i][i] = field.one
        return Matrix._raw(field, rows, n)
    e = field.one if kind == SYMMETRIC else field(-1)
    for i in range(l):
        rows[i][n - l + i] = e
        rows[n - l + i][i] = field.one
    k = n - 2 * l
    if kind == SYMMETRIC:
        for i in range(k):
            rows[l + i][l + i] = field.one
    else:
        for i in range(0, k, 2):
            rows[l + i][l + i + 1] = field(-1)
            rows[l + i + 1][l + i] = field.one
    return Matrix._raw(field, rows, n)


def transporter(space: BilinearSpace, U: Subspace, W: Subspace) -> Matrix:
    """An isometry g with gU = W (and so gU-perp = W-perp)."""
    space.check(U)
    space.check(W)
    if profile(space, U) != profile(space, W):
        raise ProfileMismatch(f"profiles differ: {profile(space, U)} vs {profile(space, W)}")
    bu = nice_basis(space, U, strict=True)
    bw = nice_basis(space, W, strict=True)
    if bu.gram != bw.gram:
        raise FormMismatch("standard Grams differ over this field")
    # g b_i = c_i  <=>  g B^T = C^T
    return bw.basis.T @ bu.basis.T.inverse()


def witt_basis(space: BilinearSpace, search: int = 12):
    """Hyperbolic pairs (x, y) with <x, y> = 1 plus an anisotropic orthogonal rest.

    Over F_p the split is complete. Over Q isotropic vectors are found only
    through square ratios of diagonal norms or a bounded integer search, so
    the anisotropic remainder may hide further pairs.
    """
    field, n = space.field, space.n
    rem = list(Subspace.full(field, n).basis)
    pairs = []
    while rem:
        v = _find_isotropic(space, rem, search)
        if v is None:
            break
        (y,) = hyperbolic_partners(space, [v], Subspace.span(field, rem, n))
        pairs.append((v, y))
        rem = list((perp(space, Subspace.span(field, [v, y], n))
                    & Subspace.span(field, rem, n)).basis)
    aniso = [u for u, _ in orthogonal_basis(space, rem)] if rem else []
    return pairs, aniso


def _find_isotropic(space, rows, search):
    field, n = space.field, space.n
    if space.kind == SKEW:
        return rows[0] if len(rows) >= 2 else None
    if len(rows) < 2:
        return None
    diag = orthogonal_basis(space, rows)
    for i, (ui, ai) in enumerate(diag):
        for uj, aj in diag[i + 1:]:
            s = field.sqrt(field.neg(aj) * field.inv(ai))
            if s is not None:
                return _combine(field, (s, field.one), (ui, uj), n)
    if len(diag) >= 3:
        (u1, a1), (u2, a2), (u3, a3) = diag[:3]
        if field.is_finite:
            x, y = _represent(field, a1, a2, field.neg(a3))
            return _combine(field, (x, y, field.one), (u1, u2, u3), n)
        for x in range(-search, search + 1):
            for y in range(-search, search + 1):
                for z in range(1, search + 1):
                    if a1 * x * x + a2 * y * y + a3 * z * z == 0:
                        return _combine(field, (field(x), field(y), field(z)), (u1, u2, u3), n)
    return None


def subspace_with_profile(space: BilinearSpace, d: int, l: int) -> Subspace:
    """A deterministic subspace of dimension d and isotropy rank l, from the Witt basis."""
    field, n = space.field, space.n
    if not (0 <= l <= d <= n and l <= n - d):
        raise EmptyStratum(f"no subspace of dimension {d} with isotropy rank {l} in dimension {n}")
    if space.kind == SKEW and (d - l) % 2:
        raise EmptyStratum("skew forms need d and l of equal parity")
    pairs, aniso = witt_basis(space)
    if l > len(pairs):
        raise EmptyStratum(
            f"form over {field} has only {len(pairs)} hyperbolic pairs; isotropy rank {l} unreachable"
        )
    vecs = [x for x, _ in pairs[:l]]
    k = d - l
    rest = [v for pr in pairs[l:] for v in pr] + list(aniso)
    if k:
        if space.kind == SKEW:
            vecs += [v for pr in symplectic_pairs(space, rest)[:k // 2] for v in pr]
        else:
            # unit vectors first, so that W_a is isometric to I whenever possible
            vecs += orthonormal_basis(space, rest, strict=False)[0][:k]
    W = Subspace.span(field, vecs, n)
    assert profile(space, W) == (d, l)
    return W


def random_isometry(space: BilinearSpace, rng, steps: int = 6) -> Matrix:
    """Product of random reflections (symmetric) or transvections (skew)."""
    field, n = space.field, space.n
    g = Matrix.identity(field, n)
    Q = space.gram
    done = 0
    while done < steps:
        v = tuple(field.random_element(rng) for _ in range(n))
        # x -> x + a <v, x> v  has matrix I + a v (Q^T v)^T ... written via rows of v^T Q
        vq = Matrix._raw(field, [v], n) @ Q
        outer = Matrix._raw(field, [[field.norm(vi * wj) for wj in vq.rows[0]] for vi in v], n)
        if space.kind == SYMMETRIC:
            nv = space.form(v, v)
            if not nv:
                continue
            a = field.neg(field(2) * field.inv(nv))
        else:
            if not any(v):
                continue
            a = field.random_element(rng) or field.one
        g = (Matrix.identity(field, n) + outer.scale(a)) @ g
        done += 1
    return g
