"""Exact-arithmetic workbench for the homotopy groups of Tmf.

Everything here is computed over Z (or Z localized at 2, 3, or away from 6)
with no floating point: Smith normal forms, localized cohomology
presentations, Mayer-Vietoris kernels and cokernels, a descent spectral
sequence with differential propagation, and chart rendering.
"""

__version__ = "0.1.0"
