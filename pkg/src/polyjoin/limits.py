"""Resource caps shared by the constructions that can blow up."""
from __future__ import annotations

import os

from .errors import InvalidInputError, ResourceLimitError

DEFAULT_MAX_FACES = 100_000
MAX_TUPLES = 1_000_000
MAX_TABLE_N = 12
MAX_RANDOM_N = 16

_override: int | None = None


def max_faces() -> int:
    """Face cap: an explicit :func:`set_max_faces` wins, then ``POLYJOIN_MAX_FACES``."""
    if _override is not None:
        return _override
    env = os.environ.get("POLYJOIN_MAX_FACES")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise InvalidInputError(f"POLYJOIN_MAX_FACES must be an integer, got {env!r}") from None
        if cap <= 0:
            raise InvalidInputError("POLYJOIN_MAX_FACES must be positive")
        return cap
    return DEFAULT_MAX_FACES


def set_max_faces(cap: int | None) -> None:
    global _override
    if cap is not None and cap <= 0:
        raise InvalidInputError("the face cap must be positive")
    _override = cap


def check_faces(count: int, what: str) -> None:
    cap = max_faces()
    if count > cap:
        raise ResourceLimitError(f"{what} exceeds the face cap ({count} > {cap})")
