"""Finite group actions on compact Riemann surfaces.

Exact tools for classifying actions of a given order on surfaces of a given
genus, decomposing Jacobians by representation theory, and certifying
explicit superelliptic curve models and their automorphisms.
"""

__version__ = "0.1.0"
