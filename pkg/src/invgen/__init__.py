"""Exact computations with matrix algebras with involution."""
from .bilinear import BilinearSpace, adjoint, decompose, iso_radical, nice_basis, perp, transporter
from .exactcore import FieldSpec, Matrix, Subspace, kernel, lattice, rref, solve
from .generation import GeneratorTuple, generates, involution_closure, is_rho_invariant

__version__ = "0.1.0"

__all__ = [
    "BilinearSpace", "adjoint", "decompose", "iso_radical", "nice_basis", "perp", "transporter",
    "FieldSpec", "Matrix", "Subspace", "kernel", "lattice", "rref", "solve",
    "GeneratorTuple", "generates", "involution_closure", "is_rho_invariant",
]
