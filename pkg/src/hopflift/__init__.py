"""Exact verification of pointed Hopf algebra liftings over small prime fields."""

__version__ = "0.1.0"
