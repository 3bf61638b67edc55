"""Exception types and enumeration guards shared across the package."""

from __future__ import annotations

import os

GUARD_ENV = "LRC_GUARD_OVERRIDE"


class LRCError(ValueError):
    """Base class for all errors raised by lrcavail."""


class GuardExceeded(LRCError):
    def __init__(self, what: str, value: int, limit: int):
        super().__init__(f"{what} = {value} exceeds guard {limit} (set {GUARD_ENV} to raise it)")
        self.what = what
        self.value = value
        self.limit = limit


class InconsistentInput(LRCError):
    pass


class LengthMismatch(LRCError):
    pass


class InvalidGraph(LRCError):
    pass


class InvalidPolyhedron(LRCError):
    pass


class UnknownName(LRCError):
    pass


class NotExactCovering(LRCError):
    pass


class PreconditionViolated(LRCError):
    pass


class MissingParameter(LRCError):
    pass


class InvalidParameter(LRCError):
    pass


def guard_limit(default: int) -> int:
    """Return the effective guard: the default, raised to LRC_GUARD_OVERRIDE if that is larger."""
    raw = os.environ.get(GUARD_ENV)
    if not raw:
        return default
    try:
        override = int(raw)
    except ValueError:
        raise LRCError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None
    return max(default, override)


def check_guard(what: str, value: int, default: int, limit: int | None = None) -> None:
    lim = guard_limit(default) if limit is None else limit
    if value > lim:
        raise GuardExceeded(what, value, lim)
