"""Certificates for canonical-curve quadrics, syzygies and 2theta subseries.

The package reconstructs, on explicit plane-curve models and explicit period
matrices, the finite linear-algebra content of the theory of second-order
theta subseries: Petri quadric bases with rank certificates, canonical-ideal
syzygies, quadric <-> rank-2-bundle correspondences, trigonal corank
certificates, and numerical Gunning/Fay identity checks.
"""

from .fields import PrimeField, QQ, DEFAULT_PRIMES
from .quadforms import QuadraticForm, hyperbolic_split

__all__ = ["PrimeField", "QQ", "DEFAULT_PRIMES", "QuadraticForm", "hyperbolic_split"]
__version__ = "0.1.0"
