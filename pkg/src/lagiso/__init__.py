"""Numerical certification of Lagrangian, Lorentzian surfaces in C^2_1 and CP^2_1(4)."""

__version__ = "0.1.0"
