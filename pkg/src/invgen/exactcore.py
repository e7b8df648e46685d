"""Exact fields and dense exact linear algebra.

Two fields are supported: prime fields F_p (p odd, p < 2**62) whose elements
are plain ints in ``range(p)``, and the rationals, whose elements are
``fractions.Fraction``. Vectors are tuples of field elements; matrices act on
column vectors, while subspaces store their basis as rows in reduced
row-echelon form.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import AmbientMismatch, EnumerationTooLarge, FieldNotFinite, NoSolution

PRIME_LIMIT = 1 << 62


@dataclass(frozen=True)
class FieldSpec:
    """Either F_p (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("p must be an int")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.p < 3 or self.p >= PRIME_LIMIT or not isprime(self.p):
            raise ValueError(f"p must be an odd prime below 2**62, got {self.p}")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or string ("3", "-3/7") into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} to F_{self.p}")

    def norm(self, x):
        return x % self.p if self.p is not None else x

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def sqrt(self, a):
        """Some square root of ``a`` in the field, or None when none exists."""
        if self.p is not None:
            a %= self.p
            if a == 0:
                return 0
            return sqrt_mod(a, self.p)
        if a < 0:
            return None
        num, den = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if num * num == a.numerator and den * den == a.denominator:
            return Fraction(num, den)
        return None

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def elements(self):
        if self.p is None:
            raise FieldNotFinite("the rationals cannot be enumerated")
        return range(self.p)

    def distinct_nonzero(self, k: int):
        """The first ``k`` distinct nonzero elements 1, 2, ..., k (None if too few)."""
        if self.p is not None and self.p - 1 < k:
            return None
        return [self(i) for i in range(1, k + 1)]

    def random_element(self, rng, bound: int = 20):
        """Uniform on F_p; over Q a small random integer in [-bound, bound]."""
        if self.p is not None:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    def __str__(self):
        return "QQ" if self.p is None else f"F_{self.p}"


def _clean_rows(field: FieldSpec, rows) -> list[list]:
    return [[field(x) for x in row] for row in rows]


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix; ``rows`` is a tuple of row tuples."""

    field: FieldSpec
    rows: tuple
    ncols: int

    @classmethod
    def of(cls, field: FieldSpec, data, ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(r) for r in _clean_rows(field, data))
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(field, rows, ncols)

    @classmethod
    def _raw(cls, field, rows, ncols) -> Matrix:
        return cls(field, tuple(tuple(r) for r in rows), ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int | None = None) -> Matrix:
        n = m if n is None else n
        return cls._raw(field, [[field.zero] * n for _ in range(m)], n)

    @classmethod
    def diag(cls, field: FieldSpec, entries) -> Matrix:
        entries = [field(x) for x in entries]
        n = len(entries)
        return cls._raw(
            field, [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_flat(cls, field: FieldSpec, flat, n: int) -> Matrix:
        flat = list(flat)
        return cls._raw(field, [flat[i * n:(i + 1) * n] for i in range(len(flat) // n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, list(zip(*self.rows)) if self.rows else
                           [[] for _ in range(self.ncols)], self.nrows)

    def _check(self, other: Matrix):
        if self.field != other.field:
            raise AmbientMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise AmbientMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        p = self.field.p
        z = self.field.zero
        out = []
        for row in self.rows:
            if p is None:
                out.append([sum((a * b for a, b in zip(row, c)), z) for c in cols])
            else:
                out.append([sum(a * b for a, b in zip(row, c)) % p for c in cols])
        return Matrix._raw(self.field, out, other.ncols)

    def apply(self, v) -> tuple:
        """Matrix times column vector ``v``."""
        p = self.field.p
        if p is None:
            return tuple(sum((a * b for a, b in zip(row, v)), self.field.zero) for row in self.rows)
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.rows)

    def _zip(self, other: Matrix, op) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise AmbientMismatch(f"shape mismatch {self.shape} vs {other.shape}")
        norm = self.field.norm
        return Matrix._raw(
            self.field,
            [[norm(op(a, b)) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __add__(self, other: Matrix) -> Matrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: Matrix) -> Matrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        norm = self.field.norm
        return Matrix._raw(self.field, [[norm(c * a) for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def trace(self):
        return self.field.norm(sum((self.rows[i][i] for i in range(self.nrows)), self.field.zero))

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = [list(r) + [self.field.one if i == j else self.field.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, pivots = _rref_rows(self.field, aug, 2 * n)
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return Matrix._raw(self.field, [r[n:] for r in red], n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def to_json(self) -> list:
        return [[self.field.to_str(x) for x in r] for r in self.rows]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def _rref_rows(field: FieldSpec, rows: list[list], ncols: int):
    """In-place style RREF on a list of row lists; returns (nonzero rows, pivots)."""
    p = field.p
    rows = [list(r) for r in rows]
    pivots = []
    prow = 0
    nrows = len(rows)
    for col in range(ncols):
        if prow == nrows:
            break
        sel = None
        for i in range(prow, nrows):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow]
        inv = field.inv(piv[col])
        if p is None:
            piv = [x * inv for x in piv]
        else:
            piv = [x * inv % p for x in piv]
        rows[prow] = piv
        for i in range(nrows):
            if i == prow:
                continue
            f = rows[i][col]
            if f:
                r = rows[i]
                if p is None:
                    rows[i] = [a - f * b for a, b in zip(r, piv)]
                else:
                    rows[i] = [(a - f * b) % p for a, b in zip(r, piv)]
        pivots.append(col)
        prow += 1
    return rows[:prow], pivots


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivoting takes the leftmost column with a nonzero entry and the topmost
    such row, so the result is fully deterministic. Zero rows are kept at the
    bottom so ``R`` has the shape of ``M``.
    """
    red, pivots = _rref_rows(M.field, M.rows, M.ncols)
    zero_rows = [[M.field.zero] * M.ncols for _ in range(M.nrows - len(red))]
    return Matrix._raw(M.field, red + zero_rows, M.ncols), len(pivots), pivots


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^ambient with its canonical RREF row basis."""

    field: FieldSpec
    ambient: int
    basis: tuple
    pivots: tuple = dc_field(compare=False, repr=False, default=())

    @classmethod
    def span(cls, field: FieldSpec, vectors, ambient: int) -> Subspace:
        vecs = [list(v) for v in vectors]
        if any(len(v) != ambient for v in vecs):
            raise AmbientMismatch("vector length differs from ambient dimension")
        red, pivots = _rref_rows(field, vecs, ambient)
        return cls(field, ambient, tuple(tuple(r) for r in red), tuple(pivots))

    @classmethod
    def of(cls, field: FieldSpec, vectors, ambient: int | None = None) -> Subspace:
        """Like ``span`` but coerces entries (ints, strings) into the field first."""
        vecs = _clean_rows(field, vectors)
        if ambient is None:
            if not vecs:
                raise ValueError("ambient dimension required for an empty spanning set")
            ambient = len(vecs[0])
        return cls.span(field, vecs, ambient)

    @classmethod
    def _canonical(cls, field, ambient, rows, pivots) -> Subspace:
        return cls(field, ambient, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> Subspace:
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> Subspace:
        return cls.span(field, Matrix.identity(field, n).rows, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    rank = dim

    def basis_matrix(self) -> Matrix:
        return Matrix._raw(self.field, self.basis, self.ambient)

    def _check(self, other: Subspace):
        if self.field != other.field or self.ambient != other.ambient:
            raise AmbientMismatch(
                f"subspaces live in {self.field}^{self.ambient} and {other.field}^{other.ambient}"
            )

    def reduce(self, v) -> list:
        """Remainder of ``v`` after elimination against the basis."""
        v = list(v)
        p = self.field.p
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                if p is None:
                    v = [a - c * b for a, b in zip(v, row)]
                else:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch("vector length differs from ambient dimension")
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        return self.dim <= other.dim and all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return lattice(self, other)[0]

    def __and__(self, other: Subspace) -> Subspace:
        return lattice(self, other)[1]

    def image(self, A: Matrix) -> Subspace:
        """Span of ``A w`` for ``w`` in this subspace."""
        return Subspace.span(self.field, [A.apply(b) for b in self.basis], A.nrows)

    def is_invariant(self, A: Matrix) -> bool:
        return all(self.contains(A.apply(b)) for b in self.basis)

    def extend_from(self, candidates) -> list:
        """Greedily pick vectors from ``candidates`` that extend this basis.

        Returns the chosen vectors in order; used to build complements.
        """
        chosen = []
        acc = self
        for v in candidates:
            if not acc.contains(v):
                chosen.append(tuple(v))
                acc = Subspace.span(self.field, list(acc.basis) + [v], self.ambient)
        return chosen

    def to_json(self) -> list:
        return [[self.field.to_str(x) for x in r] for r in self.basis]

    def __str__(self):
        return f"<{', '.join('(' + ','.join(map(str, r)) + ')' for r in self.basis)}>"


def kernel(M: Matrix) -> Subspace:
    """Null space {x : M x = 0} of ``M`` acting on column vectors."""
    field = M.field
    red, pivots = _rref_rows(field, M.rows, M.ncols)
    pivset = set(pivots)
    vecs = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [field.zero] * M.ncols
        v[free] = field.one
        for row, piv in zip(red, pivots):
            v[piv] = field.neg(row[free])
        vecs.append(v)
    return Subspace.span(field, vecs, M.ncols)


def lattice(W1: Subspace, W2: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection of two subspaces."""
    W1._check(W2)
    field, n = W1.field, W1.ambient
    total = Subspace.span(field, list(W1.basis) + list(W2.basis), n)
    if not W1.basis or not W2.basis:
        return total, Subspace.zero(field, n)
    # coefficients (a, b) with a.B1 = b.B2 give the intersection as a.B1
    stacked = Matrix._raw(field, list(W1.basis) + list(W2.basis), n)
    rel = kernel(stacked.T)
    k = W1.dim
    vecs = []
    for c in rel.basis:
        a = c[:k]
        vecs.append([field.norm(sum((a[i] * W1.basis[i][j] for i in range(k)), field.zero))
                     for j in range(n)])
    return total, Subspace.span(field, vecs, n)


def solve(M: Matrix, b) -> tuple:
    """Some x with M x = b, free variables set to zero; raises NoSolution."""
    if len(b) != M.nrows:
        raise AmbientMismatch("right-hand side length differs from row count")
    field = M.field
    aug = [list(r) + [field(x)] for r, x in zip(M.rows, b)]
    red, pivots = _rref_rows(field, aug, M.ncols + 1)
    if pivots and pivots[-1] == M.ncols:
        raise NoSolution("inconsistent linear system")
    x = [field.zero] * M.ncols
    for row, piv in zip(red, pivots):
        x[piv] = row[M.ncols]
    return tuple(x)


class SpanBuilder:
    """Incremental echelon basis with membership-on-insert.

    Rows are kept with a unit pivot and zeros at earlier pivots, which is
    enough for independence testing; ``subspace()`` canonicalizes.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: list[list] = []
        self._pivots: list[int] = []

    def __len__(self):
        return len(self._rows)

    def add(self, v) -> bool:
        p = self.field.p
        v = list(v)
        for row, piv in zip(self._rows, self._pivots):
            c = v[piv]
            if c:
                if p is None:
                    v = [a - c * b for a, b in zip(v, row)]
                else:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
        for j, x in enumerate(v):
            if x:
                inv = self.field.inv(x)
                self._rows.append([self.field.norm(y * inv) for y in v])
                self._pivots.append(j)
                return True
        return False

    def subspace(self) -> Subspace:
        return Subspace.span(self.field, self._rows, self.ncols)


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^n."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(field: FieldSpec, n: int, d: int, cap: int = 10**7):
    """Yield every d-dimensional subspace of F_q^n exactly once.

    Subspaces are produced directly in canonical form by running over RREF
    pivot patterns and all fillings of the free positions.
    """
    if not field.is_finite:
        raise FieldNotFinite("subspace enumeration needs a prime field")
    total = gaussian_binomial(n, d, field.p)
    if total > cap:
        raise EnumerationTooLarge(total, cap)
    return _iter_subspaces(field, n, d)


def _iter_subspaces(field, n, d):
    q = field.p
    for pivots in itertools.combinations(range(n), d):
        pivset = set(pivots)
        slots = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        for values in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(d)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), x in zip(slots, values):
                rows[i][j] = x
            yield Subspace._canonical(field, n, rows, pivots)
