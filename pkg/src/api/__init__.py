"""
Quillen Sectional Category API

FastAPI application exposing model constructions and certificate searches.
"""
