"""
Sectional category certificates: search, verification, cat / tc wrappers and
the model file format.
"""

from .certify import SecatResult, cat, secat_upper_bound, tc
from .modelfile import parse_model, read_model, save_model, write_model
from .problem import SearchOptions, SecatProblem, SolveRecord
from .search import Certificate, NoCertificate, find_alpha
from .verify import VerificationReport, verify_certificate

__all__ = [
    "Certificate", "NoCertificate", "SearchOptions", "SecatProblem", "SecatResult", "SolveRecord",
    "VerificationReport", "cat", "find_alpha", "parse_model", "read_model", "save_model",
    "secat_upper_bound", "tc", "verify_certificate", "write_model",
]
