"""JSON (de)serialization of fields, spaces, tuples and subspaces."""
from __future__ import annotations

from .bilinear import KINDS, SKEW, SYMMETRIC, BilinearSpace, split_symmetric, standard_skew
from .errors import SchemaError
from .exactcore import FieldSpec, Matrix, Subspace
from .generation import GeneratorTuple

GRAM_NAMES = ("identity", "standard_skew", "split")


def parse_field(text: str) -> FieldSpec:
    """'p=101', '101', 'Q' or 'rational'."""
    t = text.strip()
    if t.lower() in ("q", "qq", "rational"):
        return FieldSpec.rational()
    if t.lower().startswith("p="):
        t = t[2:]
    try:
        return FieldSpec.prime(int(t))
    except ValueError as e:
        raise SchemaError(f"bad field {text!r}: {e}") from None


def field_from_json(obj) -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("field must be an object with a 'kind' key")
    if obj["kind"] == "rational":
        return FieldSpec.rational()
    if obj["kind"] == "prime":
        try:
            return FieldSpec.prime(int(obj["p"]))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad prime field: {e}") from None
    raise SchemaError(f"unknown field kind {obj['kind']!r}")


def matrix_from_json(field: FieldSpec, data, n: int | None = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix must be a list of rows")
    try:
        M = Matrix.of(field, data, n if not data else None)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad matrix: {e}") from None
    if n is not None and M.shape != (n, n):
        raise SchemaError(f"expected a {n}x{n} matrix, got {M.shape[0]}x{M.shape[1]}")
    return M


def named_gram(field: FieldSpec, name: str, n: int, kind: str) -> Matrix:
    if name == "identity":
        return Matrix.identity(field, n)
    if name == "standard_skew":
        return standard_skew(field, n)
    if name == "split":
        return split_symmetric(field, n) if kind == SYMMETRIC else standard_skew(field, n)
    raise SchemaError(f"unknown gram name {name!r}; expected one of {GRAM_NAMES}")


def space_from_json(obj) -> BilinearSpace:
    if not isinstance(obj, dict):
        raise SchemaError("space must be an object")
    missing = {"field", "n", "form"} - obj.keys()
    if missing:
        raise SchemaError(f"space is missing {sorted(missing)}")
    field = field_from_json(obj["field"])
    n, kind = obj["n"], obj["form"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    if kind not in KINDS:
        raise SchemaError(f"form must be one of {KINDS}")
    g = obj.get("gram", "identity" if kind == SYMMETRIC else "standard_skew")
    gram = named_gram(field, g, n, kind) if isinstance(g, str) else matrix_from_json(field, g, n)
    return BilinearSpace(field, n, kind, gram)


def space_to_json(space: BilinearSpace) -> dict:
    out = {"field": space.field.to_json(), "n": space.n, "form": space.kind}
    if space.kind == SYMMETRIC and space.gram == Matrix.identity(space.field, space.n):
        out["gram"] = "identity"
    elif space.kind == SKEW and space.gram == standard_skew(space.field, space.n):
        out["gram"] = "standard_skew"
    else:
        out["gram"] = space.gram.to_json()
    return out


def tuple_from_json(obj) -> GeneratorTuple:
    if not isinstance(obj, dict) or "space" not in obj or "tuple" not in obj:
        raise SchemaError("tuple input needs 'space' and 'tuple' keys")
    space = space_from_json(obj["space"])
    mats = obj["tuple"]
    if not isinstance(mats, list) or not mats:
        raise SchemaError("'tuple' must be a nonempty list of matrices")
    return GeneratorTuple(space, [matrix_from_json(space.field, m, space.n) for m in mats])


def tuple_to_json(t: GeneratorTuple) -> dict:
    return {"space": space_to_json(t.space), "tuple": [A.to_json() for A in t.mats]}


def subspace_from_json(space: BilinearSpace, rows) -> Subspace:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("subspace must be a list of basis rows")
    if any(len(r) != space.n for r in rows):
        raise SchemaError(f"subspace rows must have length {space.n}")
    try:
        return Subspace.of(space.field, rows, space.n)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad subspace: {e}") from None
