"""SU(N) irreps from irreducible Schwinger bosons, and the coherent states built on them."""

from .fock import Amplitude, ModeIndex, StateVector, annihilate, create, inner, plet_number, vacuum
from .isb import IrrepLabel, irrep_basis, isb_create, monomial_state, weyl_dimension
from .liealg import apply_constraint, apply_generator, build_gell_mann, matrix_rep
from .manifold import ManifoldPoint, assemble_unitary, haar_sample, rotate_point, wedge_complement
from .coherent import coherent_state, covariance_check, identity_resolution, structure_function

__version__ = "0.1.0"

__all__ = [
    "Amplitude", "ModeIndex", "StateVector", "annihilate", "create", "inner", "plet_number", "vacuum",
    "IrrepLabel", "irrep_basis", "isb_create", "monomial_state", "weyl_dimension",
    "apply_constraint", "apply_generator", "build_gell_mann", "matrix_rep",
    "ManifoldPoint", "assemble_unitary", "haar_sample", "rotate_point", "wedge_complement",
    "coherent_state", "covariance_check", "identity_resolution", "structure_function",
]
