"""
Pydantic Models for API Requests

Request bodies carry model files as text (the same format the CLI reads).
Responses reuse CommandReport from the certifier.
"""

from typing import Optional

from pydantic import BaseModel, Field

from ..secat.problem import SearchOptions


# ============================================================================
# Model Requests
# ============================================================================

class ModelRequest(BaseModel):
    """
    A single model file

    Used by /models/check and /models/homology.
    """
    model: str = Field(..., description="Model file text")
    max_degree: Optional[int] = Field(None, ge=1, description="Degree bound N (default from settings)")

    class Config:
        json_schema_extra = {
            "example": {
                "model": "name CP2\ngenerator x 1\ngenerator y 3\nd y = [x,x]\n",
                "max_degree": 8,
            }
        }


class ProductRequest(BaseModel):
    left: str = Field(..., description="Model file text of the first factor")
    right: str = Field(..., description="Model file text of the second factor")
    max_degree: Optional[int] = Field(None, ge=1)


class PowerRequest(ModelRequest):
    copies: int = Field(..., ge=1, description="Number of factors")
    check: bool = Field(False, description="Run the product-model invariant checks")


class DiagonalRequest(ModelRequest):
    copies: int = Field(2, ge=1, description="Number of factors")


class FatWedgeRequest(ModelRequest):
    n: int = Field(..., ge=0, description="Fat-wedge index (n + 1 copies)")


# ============================================================================
# Certificate Requests
# ============================================================================

class CertifyRequest(ModelRequest):
    """
    cat / tc request

    Omitted search options fall back to the SEARCH_* settings.
    """
    max_n: Optional[int] = Field(None, ge=0, description="Largest n to try")
    options: Optional[SearchOptions] = None

    class Config:
        json_schema_extra = {
            "example": {
                "model": "name S3\ngenerator w 2\n",
                "max_degree": 8,
                "max_n": 3,
                "options": {"strategy": "backtrack", "seed": 0, "budget": 256, "restarts": 4},
            }
        }


class SecatRequest(CertifyRequest):
    n: Optional[int] = Field(None, ge=0, description="Candidate bound to test (alone: only this n)")


# ============================================================================
# Health Models
# ============================================================================

class HealthResponse(BaseModel):
    """
    Health check response

    Reports the API version and the limits requests are checked against.
    """
    status: str = Field(..., description="Overall health status: 'healthy' or 'unhealthy'")
    api_version: str = Field(..., description="API version")
    limits: dict = Field(..., description="Degree and search limits in effect")

    class Config:
        json_schema_extra = {
            "example": {
                "status": "healthy",
                "api_version": "1.0.0",
                "limits": {"default_max_degree": 8, "max_degree_limit": 16, "search_budget": 256},
            }
        }
