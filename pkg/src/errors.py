"""
Exception Hierarchy

Every error raised by the algebra, dgl, models and secat packages derives from
DglError. The CLI and the API map the two branches to exit codes / HTTP codes:

- InputError: the user handed us something malformed (exit 2, HTTP 400)
- InvariantViolation: a construction hypothesis broke (exit 3, HTTP 422)

Inconsistent linear systems are not errors; solvers return None.
"""

from typing import Optional


class DglError(Exception):
    """Root of all library errors"""


# ============================================================================
# Input Errors
# ============================================================================

class InputError(DglError):
    """Malformed user input"""


class LieSyntaxError(InputError):
    """Lie expression text does not match the grammar"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownGeneratorError(InputError):
    """A generator id that is not part of the model"""

    def __init__(self, generator_id: str):
        super().__init__(f"Unknown generator '{generator_id}'")
        self.generator_id = generator_id


class MixedDegreeError(InputError):
    """A sum of terms of different degrees"""


class DegreeError(InputError):
    """Non-positive degree, degree mismatch or non-homogeneous differential"""


class ModelFileError(InputError):
    """Model file does not parse"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class BetaInputError(InputError):
    """Input to the beta correction is not in the mixed ideal"""


# ============================================================================
# Invariant Violations
# ============================================================================

class InvariantViolation(DglError):
    """A construction hypothesis does not hold for the given input"""


class NoPreimage(InvariantViolation):
    """The kernel is not acyclic in the requested degree"""


class InputNotCycle(InvariantViolation):
    """preimage_in_kernel was handed an element that is not a cycle"""


class InputNotInKernel(InvariantViolation):
    """preimage_in_kernel was handed an element outside ker(phi)"""


class ClosureViolation(InvariantViolation):
    """The differential of a kept fat-wedge generator leaves the kept algebra"""

    def __init__(self, generator_id: str, witness: tuple):
        word = " ".join(witness)
        super().__init__(
            f"D({generator_id}) contains the word ({word}) with a removed generator"
        )
        self.generator_id = generator_id
        self.witness = witness


class LiftFailure(InvariantViolation):
    """The diagonal could not be lifted through the product model"""

    def __init__(self, generator_id: str, degree: int):
        super().__init__(f"Cannot lift the diagonal on '{generator_id}' (degree {degree})")
        self.generator_id = generator_id
        self.degree = degree


class StabilizationFailure(InvariantViolation):
    """Cofibration replacement did not stabilise below the degree bound"""

    def __init__(self, degree: int, detail: str):
        super().__init__(f"Replacement failed in degree {degree}: {detail}")
        self.degree = degree
