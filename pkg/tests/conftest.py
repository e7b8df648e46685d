import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from invgen.bilinear import BilinearSpace
from invgen.exactcore import FieldSpec, Matrix, Subspace

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("INVGEN_HYPOTHESIS", "default"))

PRIMES = (3, 5, 7, 11, 101)
FIELDS = [FieldSpec.prime(p) for p in PRIMES] + [FieldSpec.rational()]

fields = st.sampled_from(FIELDS)
small = st.integers(-6, 6)


@st.composite
def vectors(draw, field, n):
    return tuple(field(draw(small)) for _ in range(n))


@st.composite
def matrices(draw, field, m, n=None):
    n = m if n is None else n
    return Matrix.of(field, [[draw(small) for _ in range(n)] for _ in range(m)], n)


@st.composite
def subspaces(draw, field, n, max_gens=None):
    k = draw(st.integers(0, n if max_gens is None else max_gens))
    return Subspace.span(field, [draw(vectors(field, n)) for _ in range(k)], n)


@st.composite
def spaces(draw, kinds=("symmetric", "skew"), max_n=5, field=None):
    F = draw(fields) if field is None else field
    kind = draw(st.sampled_from(kinds))
    if kind == "skew":
        n = draw(st.sampled_from([k for k in range(2, max_n + 1, 2)]))
    else:
        n = draw(st.integers(1, max_n))
    which = draw(st.sampled_from(["standard", "split", "random"]))
    if which == "standard":
        return BilinearSpace.standard(F, n, kind)
    if which == "split":
        return BilinearSpace.split(F, n, kind)
    # random invertible congruence of the standard Gram
    base = BilinearSpace.standard(F, n, kind).gram
    while True:
        P = draw(matrices(F, n))
        if P.is_invertible():
            return BilinearSpace(F, n, kind, P.T @ base @ P)
