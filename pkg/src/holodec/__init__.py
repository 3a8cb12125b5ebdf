"""Holonomy decomposition of finite transformation semigroups.

Build a semigroup from generators, compute its subset skeleton and holonomy
groups, lift the action to maximal subset chains, encode the chains into a
cascade of permutation-reset components, and verify by replay that the
cascade emulates the original action.
"""

from ._kernels import backend as kernel_backend
from .cascade import CascadeTransformation, Coordinates, HolonomyCascade, decompose
from .chains import (Lift, alpha, apply_lift_word, dominate, eta,
                     is_maximal_chain, lift_generator, maximal_chains,
                     position, unposition)
from .errors import BudgetExceededError, DecodeError, InvariantViolation
from .holonomy import (CONST_STAR, IDENTITY, STAR, ComponentElement,
                       HolonomyComponent, HolonomyDecomposition, HolonomyGroup,
                       PermutatorGroup, permutator_group)
from .skeleton import Skeleton
from .transformation import (Transformation, TransformationSemigroup, Word,
                             evaluate_word, mask_from_points, mask_str,
                             points_from_mask)

__all__ = [
    "BudgetExceededError",
    "CascadeTransformation",
    "ComponentElement",
    "CONST_STAR",
    "Coordinates",
    "DecodeError",
    "HolonomyCascade",
    "HolonomyComponent",
    "HolonomyDecomposition",
    "HolonomyGroup",
    "IDENTITY",
    "InvariantViolation",
    "Lift",
    "PermutatorGroup",
    "STAR",
    "Skeleton",
    "Transformation",
    "TransformationSemigroup",
    "Word",
    "alpha",
    "apply_lift_word",
    "decompose",
    "dominate",
    "eta",
    "evaluate_word",
    "is_maximal_chain",
    "kernel_backend",
    "lift_generator",
    "mask_from_points",
    "mask_str",
    "maximal_chains",
    "permutator_group",
    "points_from_mask",
    "position",
    "unposition",
]

__version__ = "0.1.0"
