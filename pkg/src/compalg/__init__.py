"""Verification toolkit for a composability two-product algebra.

Exact symbolic realizations on phase-space polynomials, a finite
dimensional operator realization, indefinite split-complex geometry,
coherent-state quantization, quantionic relativity checks and
entanglement-assisted invariance, all behind one reproducible CLI.
"""

__version__ = "0.1.0"
