"""
API Routes

Model construction and certificate endpoints.
"""
