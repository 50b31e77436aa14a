"""ttw: a desk-scale workbench for tensor topology.

Finite braided strict monoidal categories with exhaustive law checking;
subunit enumeration and the firm/stiff/universal-join/locale-based
hierarchy; restriction, graded monads, comonads and tensor ideals;
right-fraction localisation; support data; Day convolution on finite
presheaves; and the broad-presheaf completions.
"""

from .caps import Caps, DEFAULT_CAPS, caps_from_env
from .errors import (BuildError, CapExceededError, ConsistencyError,
                     MalformedTableError, NonCommutingSquareError, TtwError,
                     UnknownNameError)

__all__ = [
    "Caps", "DEFAULT_CAPS", "caps_from_env",
    "TtwError", "BuildError", "CapExceededError", "ConsistencyError",
    "MalformedTableError", "NonCommutingSquareError", "UnknownNameError",
]
