import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, spaces, subspaces
from invgen.bilinear import BilinearSpace, adjoint, iso_radical, perp
from invgen.errors import AmbientMismatch, FieldNotFinite
from invgen.exactcore import FieldSpec, Matrix, Subspace, enumerate_subspaces, gaussian_binomial
from invgen.generation import (GeneratorTuple, all_rho_invariant, generates, invariant_profile,
                               involution_closure, is_rho_invariant, is_rho_invariant_direct,
                               rho_invariant_subspaces)

F3, F5, QQ = FieldSpec.prime(3), FieldSpec.prime(5), FieldSpec.rational()


def E(F, n, i, j):
    M = [[0] * n for _ in range(n)]
    M[i][j] = 1
    return Matrix.of(F, M)


def naive_closure_dim(t):
    """Span of I, A_i, rho(A_i), then close the whole span under products until stable."""
    F, n = t.space.field, t.n
    gens = [Matrix.identity(F, n)] + list(t.mats) + t.adjoints()
    S = Subspace.span(F, [g.flat() for g in gens], n * n)
    while True:
        mats = [Matrix.from_flat(F, b, n) for b in S.basis]
        T = Subspace.span(F, list(S.basis) + [(X @ Y).flat() for X in mats for Y in mats], n * n)
        if T == S:
            return S.dim
        S = T


def test_closure_examples():
    V = BilinearSpace.standard(F3, 2)
    I = Matrix.identity(F3, 2)
    assert involution_closure(GeneratorTuple(V, [I])).dim == 1
    rep = involution_closure(GeneratorTuple(V, [E(F3, 2, 0, 1)]))
    assert rep.dim == 4 and rep.generates
    S = BilinearSpace.standard(F3, 2, "skew")
    assert involution_closure(GeneratorTuple(S, [E(F3, 2, 0, 1)])).dim == 2
    D = Matrix.diag(QQ, [1, 2])
    assert involution_closure(GeneratorTuple(BilinearSpace.standard(QQ, 2), [D])).dim == 2


def test_tuple_shape_checked():
    V = BilinearSpace.standard(F3, 2)
    with pytest.raises(AmbientMismatch):
        GeneratorTuple(V, [Matrix.identity(F3, 3)])
    with pytest.raises(AmbientMismatch):
        GeneratorTuple(V, [Matrix.identity(F5, 2)])


def test_rho_invariant_examples():
    V = BilinearSpace.standard(F5, 2)
    t = GeneratorTuple(V, [Matrix.diag(F5, [1, 2])])
    e1 = Subspace.of(F5, [[1, 0]])
    assert is_rho_invariant(t, e1)
    assert not is_rho_invariant(t, Subspace.of(F5, [[1, 1]]))
    with pytest.raises(AmbientMismatch):
        is_rho_invariant(t, Subspace.of(F5, [[1, 0, 0]]))
    with pytest.raises(FieldNotFinite):
        rho_invariant_subspaces(GeneratorTuple(BilinearSpace.standard(QQ, 2),
                                               [Matrix.identity(QQ, 2)]), 1)


def test_identity_tuple_profile_matches_isotropy_counts():
    # every subspace is invariant under I, so the profile is the isotropy census
    for kind, n in (("symmetric", 3), ("symmetric", 4), ("skew", 4)):
        V = BilinearSpace.split(F3, n, kind)
        t = GeneratorTuple(V, [Matrix.identity(F3, n)])
        prof = invariant_profile(t)
        for d in range(1, n // 2 + 1):
            total = sum(len(ws) for (dd, _), ws in prof.items() if dd == d)
            assert total == gaussian_binomial(n, d, 3)
            for (dd, l), ws in prof.items():
                assert all(iso_radical(V, W)[1] == l and W.dim == dd for W in ws)


def test_all_rho_invariant_includes_trivial():
    V = BilinearSpace.standard(F5, 2)
    t = GeneratorTuple(V, [Matrix.diag(F5, [1, 2])])
    inv = all_rho_invariant(t)
    assert Subspace.zero(F5, 2) in inv and Subspace.full(F5, 2) in inv
    assert len(inv) == 4


def _all_matrices(F, n):
    q = F.p
    for flat in itertools.product(range(q), repeat=n * n):
        yield Matrix.from_flat(F, flat, n)


def test_burnside_direction_exhaustive_f3():
    # generating forces no proper nonzero rho-invariant subspace
    for kind in ("symmetric", "skew"):
        V = BilinearSpace.standard(F3, 2, kind)
        nongen = 0
        for A in _all_matrices(F3, 2):
            t = GeneratorTuple(V, [A])
            if generates(t):
                assert len(all_rho_invariant(t)) == 2
            else:
                nongen += 1
        assert nongen == (33 if kind == "symmetric" else 81)


# -- properties ----------------------------------------------------------------

@given(spaces(max_n=3), st.data())
def test_closure_matches_naive_oracle(V, data):
    r = data.draw(st.integers(1, 2))
    t = GeneratorTuple(V, [data.draw(matrices(V.field, V.n)) for _ in range(r)])
    rep = involution_closure(t)
    assert rep.dim == naive_closure_dim(t)
    assert rep.generates == (rep.dim == V.n ** 2)


@given(spaces(max_n=3), st.data())
def test_closure_is_a_star_algebra(V, data):
    t = GeneratorTuple(V, [data.draw(matrices(V.field, V.n))])
    rep = involution_closure(t)
    F, n = V.field, V.n
    S = Subspace.span(F, rep.basis, n * n)
    mats = rep.matrices(F, n)
    assert S.contains(Matrix.identity(F, n).flat())
    for X in mats:
        assert S.contains(adjoint(V, X).flat())
        for Y in mats:
            assert S.contains((X @ Y).flat())


@given(spaces(max_n=3), st.data())
def test_closure_is_monotone(V, data):
    A, B = data.draw(matrices(V.field, V.n)), data.draw(matrices(V.field, V.n))
    one = involution_closure(GeneratorTuple(V, [A]))
    two = involution_closure(GeneratorTuple(V, [A, B]))
    S2 = Subspace.span(V.field, two.basis, V.n ** 2)
    assert all(S2.contains(b) for b in one.basis)


@given(spaces(), st.data())
def test_invariance_formulations_agree(V, data):
    t = GeneratorTuple(V, [data.draw(matrices(V.field, V.n)) for _ in range(2)])
    W = data.draw(subspaces(V.field, V.n))
    assert is_rho_invariant(t, W) == is_rho_invariant_direct(t, W)
    assert is_rho_invariant(t, W) == is_rho_invariant(t, perp(V, W))


@given(spaces(max_n=3, field=F3), st.data())
def test_generating_tuples_have_no_invariant_subspace(V, data):
    t = GeneratorTuple(V, [data.draw(matrices(V.field, V.n)) for _ in range(2)])
    if not generates(t):
        return
    for d in range(1, V.n):
        for W in enumerate_subspaces(F3, V.n, d):
            assert not is_rho_invariant(t, W)
