"""Exact computation of the theta pairing, the Herbrand difference and the
Milnor-algebra residue pairing for graded hypersurface singularities."""

__version__ = "0.1.0"
