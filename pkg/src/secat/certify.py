"""
Sectional Category Upper Bounds

secat_upper_bound tries n = 0, 1, ... and stops at the first certificate.
cat is the bound for the base-point inclusion 0 ↪ L; tc replaces the diagonal
model L -> L x L by a free extension first.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from ..dgl.dgl import Dgl
from ..errors import InputError, InvariantViolation
from ..models.diagonal import diagonal_model
from ..models.fatwedge import MapModel, fat_wedge_model
from ..models.replacement import Replacement, cofibration_replacement
from .problem import SearchOptions, SecatProblem
from .search import Certificate, Outcome, find_alpha
from .verify import VerificationReport, verify_certificate

logger = logging.getLogger(__name__)


@dataclass
class SecatResult:
    """
    Attributes:
        map_model: the map the bound is about
        degree_bound: N
        max_n: largest n tried
        bound: smallest n with a certificate, or None
        outcomes: one outcome per tried n, in order
        verification: independent check of the certificate
        replacement: the cofibration replacement (tc only)
    """
    map_model: MapModel
    degree_bound: int
    max_n: int
    bound: Optional[int] = None
    outcomes: List[Outcome] = field(default_factory=list)
    verification: Optional[VerificationReport] = None
    replacement: Optional[Replacement] = None

    @property
    def certificate(self) -> Optional[Certificate]:
        if self.outcomes and isinstance(self.outcomes[-1], Certificate):
            return self.outcomes[-1]
        return None


def secat_upper_bound(M: MapModel, max_n: int, N: int, options: Optional[SearchOptions] = None,
                      min_n: int = 0) -> SecatResult:
    """
    Smallest n in [min_n, max_n] with a certificate

    Every certificate is re-verified before it is returned.

    Raises:
        ClosureViolation: a fat-wedge sub-dgl is not closed
        InvariantViolation: a found certificate fails verification
    """
    options = options or SearchOptions()
    result = SecatResult(map_model=M, degree_bound=N, max_n=max_n)
    # images of alpha never leave the degrees of the source generators
    build_degree = min(N, max(M.dgl.max_degree(), 1))
    if build_degree < N:
        logger.debug(f"Building fat wedges up to degree {build_degree} for N={N}")
    for n in range(min_n, max_n + 1):
        problem = SecatProblem(map_model=M, n=n, N=N, options=options)
        outcome = find_alpha(problem, fat_wedge_model(M, n, build_degree))
        result.outcomes.append(outcome)
        if isinstance(outcome, Certificate):
            report = verify_certificate(outcome, N)
            if not report.passed:
                failed = [check.check for check in report.checks if not check.passed]
                logger.error(f"Certificate for n={n} does not verify: {failed}")
                raise InvariantViolation(f"Certificate for n={n} fails verification: {failed}")
            result.bound = n
            result.verification = report
            break
    if result.bound is None:
        logger.info(f"No certificate up to n={max_n} (N={N})")
    else:
        logger.info(f"secat <= {result.bound} (N={N})")
    return result


def _require_minimal(L: Dgl):
    if not L.is_minimal():
        raise InputError(f"{L.name} is not minimal")


def cat(L: Dgl, max_n: int, N: int, options: Optional[SearchOptions] = None) -> SecatResult:
    """LS category upper bound: secat of 0 ↪ L"""
    _require_minimal(L)
    return secat_upper_bound(MapModel(L.truncate(N), frozenset()), max_n, N, options)


def tc(L: Dgl, max_n: int, N: int, options: Optional[SearchOptions] = None) -> SecatResult:
    """Topological complexity upper bound: secat of the replaced diagonal model"""
    _require_minimal(L)
    delta = diagonal_model(L, 2, N)
    replacement = cofibration_replacement(delta, N)
    logger.info(
        f"Diagonal of {L.name} replaced by {replacement.strategy}: "
        f"W = {list(replacement.map_model.relative_ids)}"
    )
    result = secat_upper_bound(replacement.map_model, max_n, N, options)
    result.replacement = replacement
    return result
