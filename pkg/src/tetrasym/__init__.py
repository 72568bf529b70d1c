"""Rigidity, Frobenius-Schur indicators and tetrahedral symmetry of 6j-symbols."""

__version__ = "0.1.0"
