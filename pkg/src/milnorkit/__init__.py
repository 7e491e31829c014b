"""Exact combinatorics behind almost-concordance of knots in 3-manifolds.

Witt/Hall data for free nilpotent groups, Magnus expansions, Milnor link
invariants, the Milnor modules D_n(k) and torus-bundle condition checks.
"""

__version__ = "0.1.0"
