"""Enumeration caps.

All searches in this package are exhaustive, so every entry point that
loops over a combinatorial space is guarded by a cap.  Caps are
engineering limits, not semantic choices; exceeding one raises
:class:`ttw.errors.CapExceededError` naming the cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import CapExceededError


@dataclass(frozen=True)
class Caps:
    max_objects: int = 64
    max_morphisms: int = 4096
    # guards 2^n loops over subsets of ISub(C)
    max_subunit_family_base: int = 12
    # guards the object-subset search for tensor ideals
    max_ideal_base: int = 16
    # guards downset enumeration over a poset
    max_downset_base: int = 16
    # per-object presheaf value sets, keeps Day quotients tractable
    max_presheaf_values: int = 6
    # total cocones collected in one (co)limit search
    max_cocones: int = 200_000

    def check(self, name: str, actual: int) -> None:
        limit = getattr(self, name)
        if actual > limit:
            raise CapExceededError(name, limit, actual)

    def with_overrides(self, **kwargs: int) -> "Caps":
        for key in kwargs:
            if not hasattr(self, key):
                raise KeyError(f"unknown cap {key!r}")
        return replace(self, **kwargs)


def caps_from_env(base: Caps | None = None) -> Caps:
    """Apply TTW_MAX_OBJECTS / TTW_MAX_MORPHISMS overrides if set."""
    caps = base or Caps()
    overrides = {}
    if "TTW_MAX_OBJECTS" in os.environ:
        overrides["max_objects"] = int(os.environ["TTW_MAX_OBJECTS"])
    if "TTW_MAX_MORPHISMS" in os.environ:
        overrides["max_morphisms"] = int(os.environ["TTW_MAX_MORPHISMS"])
    return caps.with_overrides(**overrides) if overrides else caps


DEFAULT_CAPS = Caps()
