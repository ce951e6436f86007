# hopfkit: exact composition series and isomorphism theorems for finite-dimensional Hopf algebras
from hopfkit.config import VERSION as __version__

__all__ = ["__version__"]
