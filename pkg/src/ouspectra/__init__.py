"""Machine checks for spectral compression structure in finite-dimensional
ordered vector spaces.

Three concrete models are provided: finite function spaces, real symmetric
matrices under the Jordan product, and centrally symmetric state spaces built
from a normed plane/space.  Generic machinery (compression axioms, projection
covers, orthogonal decompositions, spectral resolutions) runs uniformly over
all of them and is exercised by a seeded, reproducible test harness.
"""

__version__ = "0.1.0"

from .tolerances import Tol, DEFAULT_TOL
from .spaces import (
    ModelSpace,
    AElem,
    VElem,
    fn_space,
    jb_space,
    censym_space,
    unit,
    zero,
)

__all__ = [
    "Tol",
    "DEFAULT_TOL",
    "ModelSpace",
    "AElem",
    "VElem",
    "fn_space",
    "jb_space",
    "censym_space",
    "unit",
    "zero",
    "__version__",
]
