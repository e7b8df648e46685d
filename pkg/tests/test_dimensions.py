import pytest
from hypothesis import given
from hypothesis import strategies as st

from claims import extremal_claim
from invgen.bilinear import BilinearSpace, subspace_with_profile
from invgen.dimensions import (StratumKey, component_census, dim_grassmannian, dim_stratum,
                               dim_zwr, extremal_dims, lie_codim_oracle, stratum_nonempty, strata)
from invgen.errors import EmptyStratum
from invgen.exactcore import FieldSpec

F101 = FieldSpec.prime(101)


def test_grassmannian_examples():
    assert dim_grassmannian("symmetric", 4, 2, 0) == 4
    assert dim_grassmannian("symmetric", 4, 2, 2) == 1
    assert dim_grassmannian("skew", 4, 2, 2) == 3
    with pytest.raises(EmptyStratum):
        dim_grassmannian("skew", 4, 2, 1)


def test_zwr_examples():
    assert dim_zwr(2, 1, 0, 1) == 2
    assert dim_zwr(2, 1, 1, 1) == 3
    assert dim_zwr(4, 2, 2, 3) == 36
    with pytest.raises(EmptyStratum):
        dim_zwr(4, 1, 2, 1)


def test_stratum_examples():
    for r in range(1, 6):
        assert dim_stratum(StratumKey("symmetric", 4, 2, 2, r)) == 12 * r + 1
    for n in range(2, 9):
        for r in range(1, 4):
            assert dim_stratum(StratumKey("symmetric", n, 1, 1, r)) == n - 2 + r * (n * n - 2 * n + 3)
    assert dim_stratum(StratumKey("skew", 6, 3, 3, 1)) == 33


def test_nonempty_examples():
    assert not stratum_nonempty("skew", 4, 2, 1)
    assert stratum_nonempty("symmetric", 2, 1, 1)
    assert not stratum_nonempty("symmetric", 4, 1, 2)
    assert not stratum_nonempty("skew", 3, 1, 1)


def test_component_census_examples():
    c = component_census("symmetric", 4, 2)
    got = {(rec.label, rec.dim, rec.component_count) for rec in c.records}
    assert got == {("Z(1,1,2)", 24, 1), ("Z(2,2,2)", 25, 2),
                   ("closure Z(0,1,2)", 23, 1), ("closure Z(0,2,2)", 20, 1)}
    c = component_census("skew", 4, 1)
    assert {(rec.label, rec.dim) for rec in c.records} == {
        ("Z(1,1,1)", 14), ("Z(2,2,1)", 15), ("closure Z(0,2,1)", 12)}
    c = component_census("symmetric", 3, 1)
    assert {rec.d for rec in c.records} == {1} and c.max_dim == 7


def test_extremal_examples():
    e = extremal_dims("symmetric", 4, 1)
    assert e.max_dim == 13 and set(e.argmax) == {(0, 1), (1, 1), (2, 2)}
    e = extremal_dims("skew", 8, 1)
    assert e.max_dim == 58 and set(e.argmax) == {(1, 1), (4, 4)}
    assert extremal_dims("skew", 2, 1).codim == 0
    assert extremal_dims("symmetric", 3, 2).codim == 5


@pytest.mark.parametrize("kind", ["symmetric", "skew"])
def test_extremal_matches_case_table(kind):
    for n in range(2, 13):
        if kind == "skew" and n % 2:
            continue
        for r in range(1, 6):
            e = extremal_dims(kind, n, r)
            best, arg = extremal_claim(kind, n, r)
            assert (e.max_dim, set(e.argmax)) == (best, arg), (n, r)


@pytest.mark.parametrize("kind", ["symmetric", "skew"])
def test_extremal_matches_component_census(kind):
    for n in range(2, 13):
        if kind == "skew" and n % 2:
            continue
        for r in range(1, 6):
            assert extremal_dims(kind, n, r).max_dim == component_census(kind, n, r).max_dim


def test_lie_oracle_examples():
    V = BilinearSpace.split(F101, 4)
    o = lie_codim_oracle(V, subspace_with_profile(V, 2, 2))
    assert (o.dim_g, o.dim_h, o.codim) == (6, 5, 1)
    S = BilinearSpace.split(F101, 4, "skew")
    o = lie_codim_oracle(S, subspace_with_profile(S, 2, 2))
    assert (o.dim_g, o.dim_h, o.codim) == (10, 7, 3)


@pytest.mark.parametrize("kind", ["symmetric", "skew"])
def test_lie_oracle_agrees_with_formula(kind):
    for n in range(1, 7):
        if kind == "skew" and n % 2:
            continue
        V = BilinearSpace.split(F101, n, kind)
        for d in range(n + 1):
            for l in range(min(d, n - d) + 1):
                if not stratum_nonempty(kind, n, d, l):
                    continue
                o = lie_codim_oracle(V, subspace_with_profile(V, d, l))
                assert (o.d, o.l) == (d, l)
                assert o.codim == dim_grassmannian(kind, n, d, l)


# -- properties ----------------------------------------------------------------

keys = st.builds(lambda kind, n, r: (kind, n, r), st.sampled_from(["symmetric", "skew"]),
                 st.integers(2, 40), st.integers(1, 8))


@given(keys)
def test_dimension_decreases_in_d(key):
    kind, n, r = key
    for l in range(0, n // 2 + 1):
        ds = [d for d in range(max(l, 1), n // 2 + 1) if stratum_nonempty(kind, n, d, l)]
        vals = [dim_stratum(StratumKey(kind, n, d, l, r)) for d in ds]
        assert all(a > b for a, b in zip(vals, vals[1:])), (l, vals)


@given(keys)
def test_inclusion_inequality(key):
    kind, n, r = key
    for k in strata(kind, n, r):
        if k.l >= 1:
            assert dim_stratum(k) <= dim_stratum(StratumKey(kind, n, k.l, k.l, r))


@given(keys)
def test_duality(key):
    kind, n, r = key
    for k in strata(kind, n, r, fold=False):
        dual = StratumKey(kind, n, n - k.d, k.l, r)
        assert dim_stratum(k) == dim_stratum(dual) == dim_stratum(k.folded())


@given(keys)
def test_stratum_is_sum_of_parts(key):
    kind, n, r = key
    for k in strata(kind, n, r):
        assert dim_stratum(k) == dim_grassmannian(kind, n, k.d, k.l) + dim_zwr(n, k.d, k.l, r)
        assert 0 <= dim_stratum(k) <= r * n * n + n * n
