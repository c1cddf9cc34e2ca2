"""Exact rational algebra: adjacency algebras, coherent closures, projections."""

from thetalg.exactalg.rational import (
    DenominatorOverflow,
    RationalMatrix,
    gram_schmidt,
    inner,
    is_zero,
    to_rational,
)
from thetalg.exactalg.adjacency import (
    AlgebraBasis,
    OneWalkReport,
    adjacency_algebra_basis,
    is_one_walk_regular,
)
from thetalg.exactalg.coherent import (
    AxiomReport,
    CoherentConfiguration,
    check_coherent_axioms,
    is_homogeneous,
    wl_closure,
)
from thetalg.exactalg.projection import basis_matrices, project

__all__ = [
    "AlgebraBasis",
    "AxiomReport",
    "CoherentConfiguration",
    "DenominatorOverflow",
    "OneWalkReport",
    "RationalMatrix",
    "adjacency_algebra_basis",
    "basis_matrices",
    "check_coherent_axioms",
    "gram_schmidt",
    "inner",
    "is_homogeneous",
    "is_one_walk_regular",
    "is_zero",
    "project",
    "to_rational",
    "wl_closure",
]
