"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class EaqeccError(Exception):
    """Base class for all toolkit errors."""


class DivideByZero(EaqeccError, ZeroDivisionError):
    pass


class FieldMismatch(EaqeccError, ValueError):
    pass


class FieldTooLarge(EaqeccError, ValueError):
    pass


class NoSuchRoot(EaqeccError, ValueError):
    pass


class SearchExhausted(EaqeccError):
    pass


class CharacteristicDividesN(EaqeccError, ValueError):
    pass


class NotPrimitiveRoot(EaqeccError, ValueError):
    pass


class DuplicatePoints(EaqeccError, ValueError):
    pass


class ShapeMismatch(EaqeccError, ValueError):
    pass


class BadDimension(EaqeccError, ValueError):
    pass


class BadStep(EaqeccError, ValueError):
    pass


class ZeroEvaluationPoint(EaqeccError, ValueError):
    pass


class TooManyErasures(EaqeccError, ValueError):
    pass


class SingularSystem(EaqeccError, ArithmeticError):
    pass


class TooLarge(EaqeccError):
    """An exhaustive computation would exceed its configured budget."""


class PairMismatch(EaqeccError, ValueError):
    pass


class DegenerateCode(EaqeccError, ValueError):
    """Construction would give a quantum code with no logical qudits."""


class RankCollapse(EaqeccError, ValueError):
    pass


class BadEntanglement(EaqeccError, ValueError):
    pass


class InternalInconsistency(EaqeccError, AssertionError):
    pass


class NoRedundancy(EaqeccError, ValueError):
    pass
