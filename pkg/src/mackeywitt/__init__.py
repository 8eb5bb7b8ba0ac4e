"""Exact twisted Hochschild homology for Green functors over cyclic groups.

Computes box products, norms of trivial-action rings, twisted cyclic
nerves and their homology, geometric fixed points with the cyclotomic
comparison, algebraic TR towers, Witt vectors for Green functors, and
pointed-monoid splittings: all in exact integer arithmetic, verified
against classical Witt-vector calculus.
"""

from .fgab import AbHom, FgAbGroup, homology, snf, tensor
from .green import box, box_power, quotient_by_green_ideal
from .geomfix import phi, tilde_ef, tr_tower
from .hochschild import edgewise_subdivision, hh, hh0_oracle, twisted_cyclic_nerve
from .mackey import (
    GreenFunctor,
    GroupContext,
    MackeyFunctor,
    burnside,
    check_axioms,
    fixed_point_mackey,
    representable,
    restrict,
)
from .norm import external_norm_element, norm_trivial_ring
from .wittcore import BaseRing, TruncationSet, WittVector, frobenius, ghost, teichmuller, verschiebung
from .wittgreen import ghost_coordinate, teichmuller_green, witt_green

__all__ = [
    "AbHom",
    "BaseRing",
    "FgAbGroup",
    "GreenFunctor",
    "GroupContext",
    "MackeyFunctor",
    "TruncationSet",
    "WittVector",
    "box",
    "box_power",
    "burnside",
    "check_axioms",
    "edgewise_subdivision",
    "external_norm_element",
    "fixed_point_mackey",
    "frobenius",
    "ghost",
    "ghost_coordinate",
    "hh",
    "hh0_oracle",
    "homology",
    "norm_trivial_ring",
    "phi",
    "quotient_by_green_ideal",
    "representable",
    "restrict",
    "snf",
    "teichmuller",
    "teichmuller_green",
    "tensor",
    "tilde_ef",
    "tr_tower",
    "twisted_cyclic_nerve",
    "verschiebung",
    "witt_green",
]

__version__ = "0.1.0"
