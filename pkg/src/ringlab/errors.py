"""Exception hierarchy shared by every ringlab module."""

from __future__ import annotations


class RinglabError(Exception):
    """Base class for all errors raised by ringlab."""


class CapExceeded(RinglabError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"ring has {size} elements, enumeration cap is {cap}")
        self.size = size
        self.cap = cap


class InfiniteRing(RinglabError):
    pass


class CharZero(RinglabError):
    pass


class NotAnIdeal(RinglabError):
    pass


class InvalidDescriptor(RinglabError):
    pass


class RingMismatch(RinglabError):
    pass


class NotPeriodic(RinglabError):
    def __init__(self, message: str, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class NotNilIdeal(RinglabError):
    pass


class WitnessInvalid(RinglabError):
    pass


class CharacteristicError(RinglabError):
    """An operation needs a characteristic the ring does not have."""


class NotTorsionUnits(RinglabError):
    pass


class NoFrobeniusFixpoint(RinglabError):
    """No ``m <= m_cap`` with ``c**(p**m) == c`` for ``c = a^-1 b``.

    ``diagnostics`` carries the quotient ``c``, ``1 + c`` and whether ``1 + c``
    is a unit, so callers can still report why ``a + b`` is or is not torsion.
    """

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class NonUnitSum(RinglabError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class SpecSyntaxError(RinglabError):
    """Parse failure with a 0-based position into the input string."""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"at position {position}: expected {expected}")


class SemanticError(RinglabError):
    pass


class WrongShape(RinglabError):
    pass


class CorpusError(RinglabError):
    """A corpus file line that does not parse; the message names file and line."""
