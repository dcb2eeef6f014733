"""Split Cayley hexagon model on the Hermitian surface H(3,q^2).

The package builds, over small fields (q <= 5), the point-line geometry
whose points are the generators and affine points of H(3,q^2) and whose
lines are the Hermitian-curve points together with one norm class of
Baer subgenerators; certifies that the result is a generalised hexagon
of order (q,q) by exact incidence-graph analytics; and transports the
whole picture onto the parabolic quadric Q(6,q) through the
Barlotti-Cofman-Segre representation, with spread extraction, reguli
closure and line-orbit censuses.
"""

from .galois import FieldSpec, QuadraticField

__version__ = "0.1.0"

__all__ = ["FieldSpec", "QuadraticField", "__version__"]
