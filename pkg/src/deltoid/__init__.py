"""deltoid: exact combinatorics of delta-matroids and type-B permutohedra."""

from .core import AdmissibleSet, SignedPermutation, ads
from .deltamatroid import DeltaMatroid, Matroid
from .polyhedra import BnPolytope, DeltaDecomposition
from .polyring import MPoly

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSet",
    "BnPolytope",
    "DeltaDecomposition",
    "DeltaMatroid",
    "MPoly",
    "Matroid",
    "SignedPermutation",
    "ads",
    "__version__",
]
