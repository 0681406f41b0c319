"""Exact toolkit for degenerations of degree-2 K3 pairs.

Submodules: ``lattice`` (root systems, isotropic quotients), ``anticanonical``
(polarized anticanonical pairs), ``git`` (stability of sextic-line pairs),
``elliptic`` (j-invariants), ``degeneration`` (Kulikov combinatorics),
``strata`` (boundary database) and ``cli``.
"""

__version__ = "0.1.0"
