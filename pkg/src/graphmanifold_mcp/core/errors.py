"""
Exception types raised by the decision engine.

The api layer converts these into unsuccessful responses; nothing below the
api layer catches them.
"""


class GraphManifoldError(Exception):
    """Base class for all engine errors."""


class GraphFormatError(GraphManifoldError):
    """A graph document could not be parsed or violates the graph invariants."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(f"{message}{location}")


class CertificateFormatError(GraphManifoldError):
    """A certificate document could not be parsed or does not match its graph."""


class ContractError(GraphManifoldError):
    """A precondition of an engine operation was violated by the caller."""


class BudgetExceededError(GraphManifoldError):
    """An exhaustive enumeration would exceed its budget; the answer is undecided."""

    def __init__(self, needed: int, limit: int):
        self.needed = needed
        self.limit = limit
        super().__init__(f"undecided: budget ({needed} cases needed, limit {limit})")


class SearchExhaustedError(GraphManifoldError):
    """A certificate search ran out of budget before covering its grid."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search exhausted after {budget} LP solves")
