"""Potentials of bodies, their maximisers, and the geometric bounds on them."""

__version__ = "0.1.0"
