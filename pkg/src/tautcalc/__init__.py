"""Exact calculator for tautological classes on moduli of plane sheaves.

Subpackages cover: exact parametric arithmetic (exactalg), a graded
commutative algebra kernel (gradedring), the relation engine and its
coefficient tables (tautrel), Betti numbers of Hilbert schemes of points
and their transport to the moduli spaces (hilbbetti), monomial counting
for the tautological generators (freecount), the fully worked degree-3
moduli space (degthree), and a batch CLI (cli).
"""

__version__ = "0.1.0"
