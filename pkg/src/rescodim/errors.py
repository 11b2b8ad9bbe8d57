"""Exception types raised across the package."""


class RootDataError(Exception):
    """Base class for every error raised by rescodim."""


class RankError(RootDataError, ValueError):
    """Invalid family/rank combination."""


class AmbiguityError(RootDataError):
    """A root that should be unique is not."""


class SearchExhaustedError(RootDataError):
    """A Weyl orbit search hit its cap without satisfying the predicate."""


class CapabilityError(RootDataError):
    """The requested method does not scale to this input."""


class DegenerateInputError(RootDataError, ValueError):
    """Zero functional (or similar) where a nonzero one is required."""


class CallerOrderError(RootDataError):
    """An operation was called before its precondition was established."""


class InfeasibleSelectionError(RootDataError):
    """No Cartan element satisfies the requested sign pattern."""


class HypothesisError(RootDataError, ValueError):
    """Malformed input to a theorem-level predicate."""


class FalsificationError(RootDataError):
    """A combinatorial statement expected to hold was violated."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OutOfTableError(RootDataError, KeyError):
    """Requested a tabulated value outside the tabulated range."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class UndefinedQuantityError(RootDataError):
    """The requested invariant is not defined for this input."""


class SideConditionError(RootDataError):
    """An averaging rule was applied without its side condition holding."""

    def __init__(self, message, step=None, rule=None, citation=None):
        super().__init__(message)
        self.step = step
        self.rule = rule
        self.citation = citation
