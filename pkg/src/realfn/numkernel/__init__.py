"""Arithmetic of binary forms in exact (Q(i)) and floating modes."""

from .forms import (BinaryForm, compose_forms, divide_forms, eval_form,
                    gcd_forms, proportional, resultant, squarefree_decomposition,
                    squarefree_part, vector_residual, wronskian_forms)
from .points import SpherePoint, chordal_distance
from .roots import RootEntry, roots_with_multiplicities
from .scalar import DEFAULT_TOL, I, ONE, ZERO, GaussianRational, Mode

__all__ = [
    "BinaryForm", "GaussianRational", "Mode", "SpherePoint", "RootEntry",
    "DEFAULT_TOL", "ONE", "ZERO", "I",
    "chordal_distance", "compose_forms", "divide_forms", "eval_form",
    "gcd_forms", "proportional", "resultant", "roots_with_multiplicities",
    "squarefree_decomposition", "squarefree_part", "vector_residual",
    "wronskian_forms",
]
