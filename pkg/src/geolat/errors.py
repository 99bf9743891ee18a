"""Exception types shared across the package."""

from __future__ import annotations


class GeolatError(Exception):
    """Base class for all errors raised by geolat."""


class InputError(GeolatError, ValueError):
    """Malformed or out-of-contract input (bad spec file, non-simple matroid, ...)."""


class CapExceededError(GeolatError):
    """A configured resource cap (atoms, flats, chains) was exceeded."""


class DisconnectedGraphError(GeolatError):
    """A facet-ridge graph turned out to be disconnected."""

    def __init__(self, message: str, components: list[list[int]]):
        super().__init__(message)
        self.components = components


class ClaimViolation(GeolatError):
    """A computation contradicted a proven property; ``witness`` pins the instance."""

    def __init__(self, claim: str, message: str, witness: object = None):
        super().__init__(f"{claim}: {message}")
        self.claim = claim
        self.witness = witness
