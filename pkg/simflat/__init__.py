"""
simflat
=======

Exact computations with finite rational symplectic matrix groups: invariant
forms, lattice automorphisms and isometries, invariant lattices and Z-orders,
explicit group families, supergroup enumeration and a database of
symplectic irreducible maximal finite groups.
"""

from simflat.errors import SimflatError

__version__ = "0.1.0"

__all__ = ["SimflatError", "__version__"]
