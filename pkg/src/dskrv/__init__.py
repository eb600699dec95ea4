"""dskrv: exact computer algebra for the double shuffle and
Kashiwara-Vergne Lie algebras on two generators.

All arithmetic is over the rationals (Python ints and Fractions); no
floating point is used anywhere.
"""

__version__ = "0.1.0"

from .poly import Poly
from .words import Word

__all__ = ["Poly", "Word", "__version__"]
