"""Exception types shared across the package."""
import os

from .algebra import PoleError

__all__ = ["CapExceededError", "PoleError", "cap"]


class CapExceededError(ValueError):
    """A size limit guarding exact enumeration was exceeded."""


def cap(name: str, default: int) -> int:
    """Size limit ``name``, overridable through ``WEINGARTEN_<NAME>``."""
    return int(os.environ.get(f"WEINGARTEN_{name.upper()}", default))


def check_cap(value: int, name: str, default: int, what: str) -> None:
    limit = cap(name, default)
    if value > limit:
        raise CapExceededError(f"{what}: n={value} exceeds the cap {limit} (set WEINGARTEN_{name.upper()})")
