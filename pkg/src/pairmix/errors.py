"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PairmixError(Exception):
    """Base class for all errors raised by pairmix."""


class ConfigError(PairmixError):
    """A pair configuration is malformed or inconsistent."""


class UnknownGenerator(PairmixError):
    pass


class NotInGroup(PairmixError):
    """A raw matrix or pair violates the family's entry constraints."""


class FamilyMismatch(PairmixError):
    pass


class BallTooLarge(PairmixError):
    """Enumeration exceeded the member cap; lower the radius."""


class NotInComplement(PairmixError):
    """An element that must lie outside Gamma_0 lies inside it."""


class BadC(NotInComplement):
    pass


class NotInGamma0(PairmixError):
    pass


class SupportViolation(PairmixError):
    pass


class IdentityInput(PairmixError):
    pass


class FixedPointExists(PairmixError):
    def __init__(self, k: int, point: tuple[int, ...]):
        super().__init__(f"alpha_{k} fixes {point}")
        self.k = k
        self.point = point


class IdentityViolation(PairmixError):
    """An exact identity that must always hold failed; indicates a bug."""
