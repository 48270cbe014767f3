"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` used by the command-line front end:
1 for domain errors, 3 for resource or solver failures.
"""


class LzEndError(Exception):
    kind = "error"
    exit_code = 1


class InputFormatError(LzEndError):
    kind = "input-format"


class ContractViolation(LzEndError, ValueError):
    kind = "contract"


class ValidationError(LzEndError):
    """A parsing was rejected by the validator where acceptance was required."""

    kind = "invalid-parsing"


class NoParsingWithinBound(LzEndError):
    kind = "no-parsing-within-bound"


class ReductionPreconditionError(LzEndError):
    kind = "reduction-precondition"


class ReductionIntegrityError(LzEndError):
    kind = "reduction-integrity"


class SegmentAlignmentError(LzEndError):
    kind = "segment-alignment"


class FamilyIntegrityError(LzEndError):
    kind = "family-integrity"


class InconsistentModelError(LzEndError):
    kind = "inconsistent-model"


class EncoderBugError(LzEndError):
    kind = "encoder-bug"


class ResourceLimitError(LzEndError):
    kind = "resource-limit"
    exit_code = 3


class SearchBudgetExceeded(ResourceLimitError):
    def __init__(self, budget: int):
        super().__init__(f"node budget of {budget} expansions exceeded")
        self.budget = budget


class SolverError(LzEndError):
    kind = "solver"
    exit_code = 3

    def __init__(self, message: str, output: str = ""):
        super().__init__(message)
        self.output = output
