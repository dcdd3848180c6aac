"""
Model constructions: products, powers, diagonals, fat wedges and cofibration
replacements.
"""

from .beta import Pairing, beta
from .diagonal import CopyPairing, diagonal_model
from .fatwedge import FatWedgeModel, MapModel, fat_wedge_model
from .invariants import ProductInvariantReport, check_product_invariants
from .naming import PowerGenerator, as_power_generator, parse_power_id, power_id
from .product import ProductModel, binary_product, power_model
from .replacement import Replacement, cofibration_replacement

__all__ = [
    "CopyPairing", "FatWedgeModel", "MapModel", "Pairing", "PowerGenerator", "ProductInvariantReport",
    "ProductModel", "Replacement", "as_power_generator", "beta", "binary_product",
    "check_product_invariants", "cofibration_replacement", "diagonal_model", "fat_wedge_model",
    "parse_power_id", "power_id", "power_model",
]
