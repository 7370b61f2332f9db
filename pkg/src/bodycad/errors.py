"""Exception types shared across the package."""

from __future__ import annotations


class BodyCadError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateDirection(BodyCadError):
    """A direction or normal vector is zero where a nonzero one is required."""


class DegenerateConstraint(BodyCadError):
    """A constraint's geometry is degenerate for its kind (e.g. parallel lines
    given to a kind that requires non-parallel ones)."""


class ZeroDistance(BodyCadError):
    """A distance kind was given distance 0; use the coincidence kind instead."""


class InvalidRadius(BodyCadError):
    """A tangency reduction was given a non-positive or otherwise unusable radius."""


class UnsupportedCounts(BodyCadError):
    """Sparsity counts outside the matroidal range 0 <= l < 2k."""


class OracleTooLarge(BodyCadError):
    """Brute-force oracle refused an input too large to enumerate."""


class InputError(BodyCadError):
    """A framework or graph file (or payload) is malformed."""
