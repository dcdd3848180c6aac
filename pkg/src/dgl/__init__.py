"""
Differential graded Lie algebras, morphisms and degree-bounded checks.
"""

from .checks import CheckReport, Violation, check_chain_map, check_d_squared, check_minimal
from .dgl import Dgl
from .homology import (
    HomologyReport,
    QuasiIsoReport,
    check_quasi_iso,
    homology_dims,
    preimage_in_kernel,
)
from .morphism import DglMorphism, DirectProduct, ProductElement, compose, identity, inclusion

__all__ = [
    "CheckReport", "Dgl", "DglMorphism", "DirectProduct", "HomologyReport", "ProductElement",
    "QuasiIsoReport", "Violation", "check_chain_map", "check_d_squared", "check_minimal",
    "check_quasi_iso", "compose", "homology_dims", "identity", "inclusion", "preimage_in_kernel",
]
