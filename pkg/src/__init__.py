"""
Quillen Sectional Category Toolkit

Exact rational dgl models of products, diagonals and fat wedges, and
certified upper bounds for sectional category, LS category and topological
complexity.
"""

__version__ = "1.0.0"
