"""
Free graded Lie algebras over Q and the exact linear algebra behind them.
"""

from .basis import LieBasis, is_lie, lie_basis, lie_coordinates, render_element, to_lie_expr
from .expr import Bracket, GenLeaf, LieExpr, Scaled, Sum, expand, is_zero, left_normed, render
from .parser import parse
from .tensor import Generator, TensorElement, bracket

__all__ = [
    "Bracket", "GenLeaf", "Generator", "LieBasis", "LieExpr", "Scaled", "Sum",
    "TensorElement", "bracket", "expand", "is_lie", "is_zero", "left_normed",
    "lie_basis", "lie_coordinates", "parse", "render", "render_element", "to_lie_expr",
]
