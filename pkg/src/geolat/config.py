from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    """Resource limits. Exceeding one raises CapExceededError (or InputError for atoms)."""

    atoms: int = 14
    flats: int = 200_000
    chains: int = 2_000_000
    interval_chains: int = 1_000_000
    # join/meet tables are only materialized below this flat count
    memo_flats: int = 4_096


DEFAULT_CAPS = Caps()
