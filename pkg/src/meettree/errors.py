"""Exception types shared across the package."""

from __future__ import annotations


class MeetTreeError(Exception):
    """Base class for all library errors."""


class UnknownNodeError(MeetTreeError):
    def __init__(self, node):
        super().__init__(f"unknown node id: {node!r}")
        self.node = node


class DuplicateNodeError(MeetTreeError):
    def __init__(self, node):
        super().__init__(f"node id already present: {node!r}")
        self.node = node


class InvalidTreeError(MeetTreeError):
    """Raised when an operation requires a valid tree but validation fails."""

    def __init__(self, violation):
        super().__init__(f"invalid meet-tree: {violation}")
        self.violation = violation


class NotAnEdgeError(MeetTreeError):
    def __init__(self, a, b):
        super().__init__(f"AddBetween requires an immediate edge, got {a!r} -> {b!r}")
        self.a = a
        self.b = b


class EmbeddingError(MeetTreeError):
    """An amalgamation input map is not an order- and meet-preserving injection."""


class NonMeetClosedError(MeetTreeError):
    def __init__(self, witness_pair, witness_meet):
        a, b = witness_pair
        super().__init__(
            f"base is not meet-closed: meet({a!r}, {b!r}) = {witness_meet!r} is outside it"
        )
        self.witness_pair = witness_pair
        self.witness_meet = witness_meet


class CutUncovered(MeetTreeError):
    """The finite base is too poor to anchor a coordinate's cut (not a bug)."""

    def __init__(self, coordinate, cut):
        cut = tuple(sorted(cut))
        super().__init__(
            f"no admissible base point strictly above the cut {list(cut)} of {coordinate!r}"
        )
        self.coordinate = coordinate
        self.cut = cut


class MissingAnchor(MeetTreeError):
    """Reconstruction inputs were not built from a valid witness tuple."""


class InconsistentInputs(MeetTreeError):
    """The three reconstruction inputs admit no common extension."""


class BudgetExceeded(MeetTreeError):
    def __init__(self, needed, budget):
        super().__init__(
            f"the search may need {needed} new points but the budget allows {budget}"
        )
        self.needed = needed
        self.budget = budget


class FormulaParseError(MeetTreeError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SproutMonoidMismatch(MeetTreeError):
    """Two monoid elements carry incompatible sprout-monoid instances."""


class RealisedTypeError(MeetTreeError):
    """graft_of / sprout_of applied to a realised type."""
