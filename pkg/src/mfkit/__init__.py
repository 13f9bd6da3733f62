"""mfkit: exact computations for SU(2) and SO(3) modular functors."""

from mfkit.cyclo import CycloScalar, root_of_unity
from mfkit.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "CycloScalar", "root_of_unity", "__version__"]
