"""Exception hierarchy shared by every layer of arcspace."""


class ArcspaceError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(ArcspaceError):
    pass


class NonUnit(ArcspaceError):
    pass


class NotOnScheme(ArcspaceError):
    """An arc fails one of the defining equations below working precision."""

    def __init__(self, equation_index, witness):
        self.equation_index = equation_index
        self.witness = witness
        super().__init__(
            f"equation {equation_index} has valuation {witness} along the arc"
        )


class EmptyIdeal(ArcspaceError):
    pass


class InsufficientPrecision(ArcspaceError):
    pass


class RankMismatch(ArcspaceError):
    pass


class SolveFailure(ArcspaceError):
    pass


class PreconditionViolated(ArcspaceError):
    pass


class SmoothnessFailure(ArcspaceError):
    pass


class SingularTargetArc(ArcspaceError):
    pass


class BudgetExceeded(ArcspaceError):
    pass


class FixtureError(ArcspaceError):
    pass
